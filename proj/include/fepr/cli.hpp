#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fepr/model.hpp"

namespace fepr {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitBudget = 3;

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& what);
    int line;
};

// ---------------------------------------------------------------------------------------------
// Text formats; '#' starts a comment everywhere.
//
//   instance      fepr 1 / n <count> / e <u> <v> <length>
//   realization   v <id> <x> <y>
//   embedding     r <v> <clockwise neighbours...> per vertex, then outer <cycle...>

WeightedTwoTree parse_instance(const std::string& text);
std::string write_instance(const WeightedTwoTree& g);  // edges in canonical order, %.17g lengths
Realization parse_realization(const std::string& text, int n);
std::string write_realization(const Realization& r);
// Rotation lines are required for every vertex; the outer line is optional (empty outer when absent).
PlaneEmbedding parse_embedding(const std::string& text, int n);
std::string write_embedding(const PlaneEmbedding& emb);

// 40 px per unit, y up, 2 px vertex disks, one <line> per edge in edge-id order.
std::string render_svg(const WeightedTwoTree& g, const Realization& r);

std::string read_file(const std::string& path);  // throws std::runtime_error
void write_file(const std::string& path, const std::string& text);

// Applies FEPR_EPSILON when set; returns false on a malformed value.
bool apply_epsilon_env();

// ---------------------------------------------------------------------------------------------
// Solver dispatch

enum class RealizeMode { automatic, uniform, two, outerpath, outerpillar, spq, brute };
RealizeMode parse_mode(const std::string& name);  // throws std::invalid_argument
const char* to_string(RealizeMode m);

struct RealizeOutcome {
    enum class Status { realizable, infeasible, budget_exceeded } status = Status::infeasible;
    std::optional<Realization> drawing;
    std::string solver;  // which solver produced the verdict
    std::string note;
};

// With an embedding the fixed-embedding solver is used whatever the mode.
RealizeOutcome realize_dispatch(const WeightedTwoTree& g, RealizeMode mode,
                                const std::optional<PlaneEmbedding>& embedding = std::nullopt,
                                std::uint64_t budget = 1000000);

// ---------------------------------------------------------------------------------------------
// Subcommands; each returns the process exit code.

struct CheckArgs {
    std::string instance, realization;
    std::string embedding, rotation;  // at most one
    std::optional<double> epsilon;
};
int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err);

struct RealizeArgs {
    std::string instance;
    std::string mode = "auto";
    std::string embedding;
    std::string out, svg;
    std::uint64_t budget = 1000000;
};
int cmd_realize(const RealizeArgs& a, std::ostream& out, std::ostream& err);

struct GenHardArgs {
    std::string formula, layout;
    bool auto_layout = false;
    std::string out;
    std::string witness;  // optional drawing for a brute-force satisfying assignment
};
int cmd_gen_hard(const GenHardArgs& a, std::ostream& out, std::ostream& err);

// Families: outerpath, two-lengths, outerpillar, uniform, spq.
WeightedTwoTree bench_instance(const std::string& family, int size, std::uint64_t seed);
struct BenchRow {
    int size = 0;
    int n = 0;
    double median_ms = 0;
    bool realizable = false;
};
std::vector<BenchRow> run_bench(const std::string& family, const std::vector<int>& sizes, int repeats,
                                std::uint64_t seed);
struct BenchArgs {
    std::string family;
    std::vector<int> sizes;
    int repeats = 5;
    std::uint64_t seed = 1;
};
int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err);

}  // namespace fepr
