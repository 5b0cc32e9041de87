#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fepr/checker.hpp"
#include "fepr/cli.hpp"
#include "fepr/fixed_embedding.hpp"
#include "fepr/oracle.hpp"
#include "fepr/outerplanar.hpp"
#include "fepr/reduction.hpp"
#include "fepr/spq_solver.hpp"
#include "fepr/two_lengths.hpp"

namespace py = pybind11;
using namespace fepr;

namespace {

using Coords = py::array_t<double, py::array::c_style | py::array::forcecast>;

py::array_t<double> to_array(const Realization& r) {
    py::array_t<double> a({static_cast<py::ssize_t>(r.size()), py::ssize_t{2}});
    auto v = a.mutable_unchecked<2>();
    for (std::size_t i = 0; i < r.size(); ++i) {
        v(i, 0) = r[i].x;
        v(i, 1) = r[i].y;
    }
    return a;
}

py::object to_optional(const std::optional<Realization>& r) {
    if (!r) return py::none();
    return to_array(*r);
}

Realization from_array(const Coords& a) {
    if (a.ndim() != 2 || a.shape(1) != 2) throw py::value_error("drawing must have shape (n, 2)");
    auto v = a.unchecked<2>();
    Realization r(static_cast<std::size_t>(a.shape(0)));
    for (py::ssize_t i = 0; i < a.shape(0); ++i) r[i] = {v(i, 0), v(i, 1)};
    return r;
}

// Solvers run without the interpreter lock; only the coordinate conversion needs it.
template <class F>
py::object released(F&& f) {
    std::optional<Realization> r;
    {
        py::gil_scoped_release nogil;
        r = f();
    }
    return to_optional(r);
}

}  // namespace

PYBIND11_MODULE(_fepr, m) {
    m.doc() = "Planar straight-line realization of weighted 2-trees";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<NotATwoTree>(m, "NotATwoTree", PyExc_ValueError);
    py::register_exception<TriangleInequalityViolated>(m, "TriangleInequalityViolated", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded");
    py::register_exception<FormulaError>(m, "FormulaError", PyExc_ValueError);
    py::register_exception<MalformedRepresentation>(m, "MalformedRepresentation", PyExc_ValueError);

    py::class_<WeightedTwoTree>(m, "Instance")
        .def(py::init(&validate_2tree), py::arg("n"), py::arg("edges"),
             "Validate a 2-tree given as (u, v, length) triples.")
        .def_readonly("n", &WeightedTwoTree::n)
        .def_readonly("edges", &WeightedTwoTree::edges)
        .def_readonly("lengths", &WeightedTwoTree::length)
        .def_readonly("triangles", &WeightedTwoTree::triangles)
        .def("length", &WeightedTwoTree::len, py::arg("u"), py::arg("v"))
        .def("raw_edges", &WeightedTwoTree::raw_edges)
        .def("is_outerplanar", [](const WeightedTwoTree& g) { return is_outerplanar(g); })
        .def("to_text", &write_instance)
        .def_static("from_text", &parse_instance, py::arg("text"))
        .def("__repr__", [](const WeightedTwoTree& g) {
            return "<Instance n=" + std::to_string(g.n) + " edges=" + std::to_string(g.edges.size()) + ">";
        });

    py::class_<PlaneEmbedding>(m, "Embedding")
        .def(py::init<>())
        .def(py::init([](std::vector<std::vector<int>> rot, std::vector<int> outer) {
                 return PlaneEmbedding{std::move(rot), std::move(outer)};
             }),
             py::arg("rotation"), py::arg("outer"))
        .def_readwrite("rotation", &PlaneEmbedding::rotation)
        .def_readwrite("outer", &PlaneEmbedding::outer)
        .def("to_text", &write_embedding)
        .def_static("from_text", &parse_embedding, py::arg("text"), py::arg("n"));

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("ok", &CheckResult::ok)
        .def_readonly("reason", &CheckResult::reason)
        .def("__bool__", [](const CheckResult& c) { return c.ok; })
        .def("__repr__", [](const CheckResult& c) {
            return c.ok ? std::string("<CheckResult ok>") : "<CheckResult failed: " + c.reason + ">";
        });

    m.def(
        "check_planar", [](const WeightedTwoTree& g, const Coords& r) { return check_planar(g, from_array(r)); },
        py::arg("instance"), py::arg("drawing"));
    m.def(
        "check_embedding",
        [](const WeightedTwoTree& g, const PlaneEmbedding& emb, const Coords& r) {
            return check_realization_embedding(g, emb, from_array(r));
        },
        py::arg("instance"), py::arg("embedding"), py::arg("drawing"));
    m.def(
        "embedding_from_drawing",
        [](const WeightedTwoTree& g, const Coords& r) { return embedding_from_drawing(g, from_array(r)); },
        py::arg("instance"), py::arg("drawing"));

    m.def(
        "realize",
        [](const WeightedTwoTree& g, const std::string& mode, std::optional<PlaneEmbedding> emb, std::uint64_t budget) {
            RealizeMode md = parse_mode(mode);
            RealizeOutcome o;
            {
                py::gil_scoped_release nogil;
                o = realize_dispatch(g, md, emb, budget);
            }
            const char* status = o.status == RealizeOutcome::Status::realizable   ? "realizable"
                                 : o.status == RealizeOutcome::Status::infeasible ? "infeasible"
                                                                                 : "budget_exceeded";
            py::dict d;
            d["status"] = status;
            d["drawing"] = to_optional(o.drawing);
            d["solver"] = o.solver;
            d["note"] = o.note;
            return d;
        },
        py::arg("instance"), py::arg("mode") = "auto", py::arg("embedding") = py::none(),
        py::arg("budget") = std::uint64_t{1000000},
        "Dispatch to a solver; returns a dict with status, drawing, solver and note.");

    m.def(
        "realize_uniform", [](const WeightedTwoTree& g) { return released([&] { return realize_uniform(g); }); },
        py::arg("instance"));
    m.def(
        "realize_two_lengths",
        [](const WeightedTwoTree& g) { return released([&] { return realize_two_lengths(g); }); },
        py::arg("instance"));
    m.def(
        "realize_outerpath", [](const WeightedTwoTree& g) { return released([&] { return realize_outerpath(g); }); },
        py::arg("instance"));
    m.def(
        "realize_outerpillar",
        [](const WeightedTwoTree& g) { return released([&] { return realize_outerpillar(g); }); },
        py::arg("instance"));
    m.def(
        "realize_spq",
        [](const WeightedTwoTree& g, std::uint64_t budget) {
            SpqOptions opt;
            opt.budget = budget;
            return released([&] { return realize_spq(g, nullptr, opt); });
        },
        py::arg("instance"), py::arg("budget") = std::uint64_t{1000000});
    m.def(
        "realize_fixed_embedding",
        [](const WeightedTwoTree& g, const PlaneEmbedding& emb) {
            return released([&] { return realize_fixed_embedding(g, emb); });
        },
        py::arg("instance"), py::arg("embedding"));
    m.def(
        "brute_force",
        [](const WeightedTwoTree& g) { return released([&] { return is_realizable_bruteforce(g).witness; }); },
        py::arg("instance"), "Exhaustive search over sign vectors (n <= 16); a planar drawing or None.");

    m.def("render_svg", [](const WeightedTwoTree& g, const Coords& r) { return render_svg(g, from_array(r)); },
          py::arg("instance"), py::arg("drawing"));

    // Hardness construction.
    py::class_<Formula>(m, "Formula")
        .def(py::init([](int n, std::vector<std::vector<int>> clauses) { return Formula{n, std::move(clauses)}; }),
             py::arg("num_vars"), py::arg("clauses"))
        .def_readonly("num_vars", &Formula::num_vars)
        .def_readonly("clauses", &Formula::clauses)
        .def_static("from_dimacs", &parse_dimacs, py::arg("text"))
        .def("satisfying_assignment", [](const Formula& f) { return brute_force_sat(f); });

    py::class_<HardInstance>(m, "HardInstance")
        .def_property_readonly("instance", [](const HardInstance& h) { return h.gadget.g; })
        .def_property_readonly("formula", [](const HardInstance& h) { return h.formula; })
        .def_property_readonly("frame", [](const HardInstance& h) { return to_array(h.gadget.frame); })
        .def("provenance", &provenance_text)
        .def(
            "witness",
            [](const HardInstance& h, const std::vector<bool>& assignment) {
                return to_array(witness_realization(h, assignment));
            },
            py::arg("assignment"), "Drawing for a satisfying assignment indexed from 1 (entry 0 unused).");

    m.def(
        "reduce",
        [](const Formula& f, std::optional<std::string> layout) {
            if (!layout) return reduce(f);
            return reduce(f, transform_representation(parse_layout(*layout), pad_monotone(f)));
        },
        py::arg("formula"), py::arg("layout") = py::none());

    m.def("reduction_angles", [] {
        auto a = reduction_angles();
        py::dict d;
        d["bcd"] = a.bcd;
        d["bca"] = a.bca;
        d["fcd"] = a.fcd;
        d["hcg"] = a.hcg;
        d["chm"] = a.chm;
        d["lambda"] = a.lambda;
        d["split_small"] = a.split_small;
        d["split_base"] = a.split_base;
        d["transmission_base"] = a.transmission_base;
        return d;
    });

    m.def("set_epsilon", &set_epsilon, py::arg("eps"));
    m.def("epsilon", &epsilon);
}
