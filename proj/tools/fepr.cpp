#include <iostream>

#include "CLI11.hpp"
#include "fepr/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Planar straight-line realization of weighted 2-trees"};
    app.require_subcommand(1);

    fepr::CheckArgs check;
    auto* c = app.add_subcommand("check", "Check a drawing against an instance");
    c->add_option("instance", check.instance, "Instance file")->required();
    c->add_option("realization", check.realization, "Realization file")->required();
    auto* emb_opt = c->add_option("--embedding", check.embedding, "Embedding file (rotations and outer face)");
    c->add_option("--rotation", check.rotation, "Rotation file (outer line ignored)")->excludes(emb_opt);
    c->add_option("--epsilon", check.epsilon, "Geometric tolerance");

    fepr::RealizeArgs realize;
    auto* r = app.add_subcommand("realize", "Decide realizability and write a drawing");
    r->add_option("instance", realize.instance, "Instance file")->required();
    r->add_option("--mode", realize.mode, "auto, uniform, two, outerpath, outerpillar, spq or brute")
        ->check(CLI::IsMember({"auto", "uniform", "two", "outerpath", "outerpillar", "spq", "brute"}));
    r->add_option("--embedding", realize.embedding, "Solve for this fixed embedding");
    r->add_option("--out", realize.out, "Coordinates file (stdout when omitted)");
    r->add_option("--svg", realize.svg, "SVG drawing");
    r->add_option("--budget", realize.budget, "Candidate budget of the SPQ solver");

    fepr::GenHardArgs gen;
    auto* g = app.add_subcommand("gen-hard", "Build a hardness instance from a monotone formula");
    g->add_option("formula", gen.formula, "DIMACS formula, every clause monotone")->required();
    auto* lay = g->add_option("layout", gen.layout, "Rectilinear layout file");
    g->add_flag("--auto-layout", gen.auto_layout, "Compute the layout instead of reading one")->excludes(lay);
    g->add_option("--out", gen.out, "Instance file; the gadget map goes to <out>.prov");
    g->add_option("--witness", gen.witness, "Also write a drawing for a satisfying assignment");

    fepr::BenchArgs bench;
    auto* b = app.add_subcommand("bench", "Median solver time on a generated family");
    b->add_option("family", bench.family, "outerpath, two-lengths, outerpillar, uniform or spq")->required();
    b->add_option("--sizes", bench.sizes, "Instance sizes")->required()->delimiter(',');
    b->add_option("--repeats", bench.repeats, "Runs per size");
    b->add_option("--seed", bench.seed, "Generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : fepr::kExitParse;
    }
    if (!fepr::apply_epsilon_env()) {
        std::cerr << "error: FEPR_EPSILON must be a positive number\n";
        return fepr::kExitParse;
    }
    if (*c) return fepr::cmd_check(check, std::cout, std::cerr);
    if (*r) return fepr::cmd_realize(realize, std::cout, std::cerr);
    if (*g) return fepr::cmd_gen_hard(gen, std::cout, std::cerr);
    return fepr::cmd_bench(bench, std::cout, std::cerr);
}
