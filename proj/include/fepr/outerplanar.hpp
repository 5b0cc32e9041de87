#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fepr/checker.hpp"
#include "fepr/model.hpp"

namespace fepr {

struct NotAnOuterpath : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotAnOuterpillar : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A sequence of triangles c_1..c_m where consecutive ones share shared[i] (between tri[i] and tri[i+1]);
// shared.back() is the distinguished edge e through which the chain meets the rest of the graph.
struct TriangleChain {
    std::vector<int> tri;
    std::vector<std::pair<int, int>> shared;  // same size as tri
};

struct HullState {
    std::vector<int> hull;  // vertex ids, counter-clockwise
    bool beta = true;       // the current distinguished edge lies on the hull
    int xi = -1;            // way-out vertex, set only when beta is false
    int step_case = 0;      // 0 base, 11 / 12 for Case 1.1 / 1.2, 2 for Case 2
};

struct EOuterRealization {
    Realization coords;          // indexed by input vertex; unplaced vertices are NaN
    std::vector<int> vertices;   // placed vertices in insertion order
    std::pair<int, int> e{-1, -1};
    std::vector<HullState> states;  // one per chain triangle
};

// The candidate e-optimal realization of a chain, built with the hull bookkeeping only; planarity is
// left to the caller.
EOuterRealization e_optimal_incremental(const WeightedTwoTree& g, const TriangleChain& chain);

// Dual-tree path of an outerpath, as triangle ids in order.
std::vector<int> outerpath_order(const WeightedTwoTree& g);

struct OuterpathReport {
    int x = -1;             // index of the max-perimeter triangle along the path
    int combination = -1;   // 0..3 when realized
};
std::optional<Realization> realize_outerpath(const WeightedTwoTree& g, OuterpathReport* report = nullptr,
                                             const CheckOptions& opt = {});

struct CaterpillarLayout {
    std::vector<int> path;  // triangles p_0..p_{k+1}
    std::vector<int> leaf;  // per path position, the extra leaf triangle d_i or -1
};
CaterpillarLayout outerpillar_layout(const WeightedTwoTree& g);

struct OuterpillarReport {
    int x = -1;
    std::vector<std::size_t> set_sizes_left, set_sizes_right;  // |R_i| per step
    int combinations_tried = 0;
};
std::optional<Realization> realize_outerpillar(const WeightedTwoTree& g, OuterpillarReport* report = nullptr,
                                               const CheckOptions& opt = {});

}  // namespace fepr
