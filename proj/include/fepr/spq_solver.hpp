#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fepr/checker.hpp"
#include "fepr/model.hpp"

namespace fepr {

struct PoleEdgeMissing : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A drawing of a pole-bounded subgraph with both poles on its outer face.
struct UvRealization {
    int u = -1;
    int v = -1;
    Realization coords;          // indexed by vertex of the whole graph; absent vertices are NaN
    std::vector<int> vertices;
    std::vector<int> edges;      // edge ids of the whole graph
    std::vector<int> outer;      // outer boundary, clockwise; {u, v} for a single edge
};

struct UvExternalSet {
    int node = -1;
    int u = -1;
    int v = -1;
    std::vector<UvRealization> members;
};

// Equal up to rotation and translation (no reflection) once (u,v) is superimposed, judged on the outer
// boundary only. Throws PoleEdgeMissing when either drawing lacks the edge between its poles.
bool uv_equivalent(const WeightedTwoTree& g, const UvRealization& a, const UvRealization& b, double tol = 1e-7);

// Outer boundary of a drawing restricted to the given edges, clockwise from the leftmost vertex.
std::vector<int> outer_boundary(const WeightedTwoTree& g, const Realization& r, const std::vector<int>& edges);

// View of a full planar drawing of g as a uv-external realization; nullopt if u or v is not on the
// outer face.
std::optional<UvRealization> uv_view(const WeightedTwoTree& g, const Realization& r, int u, int v);

// The two gluings of prev (poles u,v), sigma (poles u,w) and tau (poles w,v). The first places w so that
// the triangle reads u,w,v clockwise. Outer boundaries are the spliced ones; planarity is not checked.
std::array<UvRealization, 2> combine(const WeightedTwoTree& g, const UvRealization& prev, int w,
                                     const UvRealization& sigma, const UvRealization& tau);

// Planar, with both poles on the outer face of the drawing.
bool is_uv_external(const WeightedTwoTree& g, const UvRealization& r);

struct SpqOptions {
    std::uint64_t budget = 1000000;  // candidate triples over the whole run
    bool check_invariants = false;  // assert minimality, size bound and external placement
};

struct SpqReport {
    int e_star = -1;
    int height = 0;
    std::uint64_t combinations = 0;
    std::size_t max_set_size = 0;
    int failed_node = -1;  // P-node whose set became empty
};

// Exact decision over the SPQ-tree rooted at a longest edge. Throws BudgetExceeded once more than
// opt.budget candidate triples would be examined.
std::optional<Realization> realize_spq(const WeightedTwoTree& g, SpqReport* report = nullptr,
                                       const SpqOptions& opt = {});

// Minimal set of uv-external realizations computed for every Q- and P-node (index = SPQ node id), for
// inspection; empty entries for S-nodes. Stops at the first empty set.
std::vector<UvExternalSet> spq_sets(const WeightedTwoTree& g, const SpqTree& t, const SpqOptions& opt = {},
                                    SpqReport* report = nullptr);

}  // namespace fepr
