#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fepr/checker.hpp"
#include "fepr/model.hpp"

namespace fepr {

struct InstanceTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OracleCandidate {
    std::vector<int> signs;  // per decomposition-tree node, +1 left / -1 right; entry 0 unused
    Realization coords;
    bool planar = false;
};

inline constexpr int kOracleMaxN = 16;
inline constexpr int kOracleUvMaxN = 14;

// The decomposition tree the oracle uses: rooted at the lexicographically first 3-cycle.
DecompositionTree oracle_tree(const WeightedTwoTree& g);

// Streams all 2^(n-3) sign vectors; the visitor returns false to stop early.
void enumerate_realizations(const WeightedTwoTree& g, const std::function<bool(const OracleCandidate&)>& visit);

struct BruteResult {
    bool realizable = false;
    std::optional<Realization> witness;
};
BruteResult is_realizable_bruteforce(const WeightedTwoTree& g);

// Depth-first variant that abandons a sign prefix at its first crossing. `admissible` (optional) may
// reject a prefix after node k has been placed. Shared by the public oracle and gadget-scale tests.
struct PlanarSearch {
    int max_n = kOracleMaxN;
    std::function<bool(int node, const Realization& partial)> admissible;
};
void for_each_planar_realization(const WeightedTwoTree& g, const DecompositionTree& t, const PlanarSearch& opts,
                                 const std::function<bool(const OracleCandidate&)>& visit);
std::optional<Realization> find_planar_realization(const WeightedTwoTree& g, const PlanarSearch& opts = {});

// Planar candidates (whole-drawing reflections included) with u and v on the outer face, one per
// uv-equivalence class, each expressed in the frame u=(0,0), v on the positive x-axis.
std::vector<Realization> enumerate_uv_external(const WeightedTwoTree& g, int u, int v);

// Rigid motion (rotation + translation, reflection optional) mapping `from` onto `to` at the given anchors.
Realization align_to(const Realization& from, int a, int b, Point pa, Point pb, bool reflect = false);
bool congruent_on(const Realization& x, const Realization& y, const std::vector<int>& anchor, double tol,
                  bool allow_reflection);

}  // namespace fepr
