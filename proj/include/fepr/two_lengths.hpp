#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fepr/checker.hpp"
#include "fepr/model.hpp"
#include "fepr/two_sat.hpp"

namespace fepr {

struct DegreeBoundExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kMaxTreeDegree = 24;

// A leaf triangle removed from the framework. Vertex ids refer to the input graph.
struct LeafTriangle {
    int triangle = -1;     // id in the input graph
    int a = -1, b = -1;    // shared edge with the framework, a < b
    int apex = -1;
    int parent = -1;       // parent triangle in the decomposition tree
    std::vector<int> containers;  // framework triangles on (a,b) whose interior can host it
};

struct Framework {
    const WeightedTwoTree* g = nullptr;
    double w1 = 0.0, w2 = 0.0;
    int root = -1;  // max-perimeter triangle of g
    WeightedTwoTree g_f;
    std::vector<int> to_original;  // framework vertex -> input vertex
    std::vector<int> to_local;     // input vertex -> framework vertex, -1 for removed apexes
    std::vector<LeafTriangle> leaves;
    double ratio() const { return w2 / w1; }
};

// Exactly the distinct lengths of g (merged within relative 1e-9), ascending.
std::vector<double> distinct_lengths(const WeightedTwoTree& g);

Framework compute_framework(const WeightedTwoTree& g, double w1, double w2);
// No framework edge carries three leaves.
bool check_consistency(const Framework& fr);

struct FrameworkDrawing {
    PlaneEmbedding embedding;  // of g_f, framework ids
    Realization coords;        // indexed by input vertex; removed apexes left at the origin
};
std::optional<FrameworkDrawing> realize_framework(const Framework& fr, const CheckOptions& opt = {});

// The two drawings of each leaf. Value false puts the apex on the parent's side of the shared edge,
// true on the opposite side.
struct LeafDrawings {
    std::vector<Point> apex[2];
    std::vector<char> outer;  // the value-true drawing is an outer embedding
    std::vector<int> other_side_triangle;  // framework triangle across the shared edge, -1 if none
};
LeafDrawings leaf_drawings(const Framework& fr, const FrameworkDrawing& d);

// Large-ratio completion (w2 >= 2 w1); returns the full drawing, planar or not.
Realization solve_large_ratio(const Framework& fr, const FrameworkDrawing& d);

struct LeafPair {
    int i = -1;
    bool vi = false;
    int j = -1;
    bool vj = false;
    int container = -1;  // internal conflicts only
};

struct InternalConflicts {
    std::vector<LeafPair> pairs;          // geometric verdict
    std::vector<LeafPair> rule_pairs;    // pairs asserted by the threshold rule
    std::vector<std::string> disagreements;
};
// Leaves sharing a framework triangle as container; pairs whose inside drawings cross.
InternalConflicts detect_internal_conflicts(const Framework& fr, const FrameworkDrawing& d, const LeafDrawings& ld);
// Threshold rule on its own: shared edge, or sqrt3 < r <= 2cos15 in a tall container, or r <= sqrt3.
bool threshold_internal_conflict(double r, bool share_edge, TriangleClass container);

struct Forbidden {
    int leaf = -1;
    bool value = false;
};
std::vector<Forbidden> detect_overlapping_conflicts(const Framework& fr, const FrameworkDrawing& d,
                                                    const LeafDrawings& ld);

struct ProximityGraph {
    double cell = 0.0;
    Point origin;
    std::vector<std::pair<long long, long long>> label;  // per node (i, j)
    std::vector<std::vector<int>> members;               // vertices associated with each node
    std::vector<std::vector<int>> leaf_members, framework_members;
    std::vector<std::pair<int, int>> edges;              // node pairs
    std::vector<int> node_of;                            // per input vertex, -1 when absent
};
// `pts` indexed by vertex id; `kind` per vertex: 0 absent, 1 framework, 2 leaf.
ProximityGraph build_proximity_graph(const std::vector<Point>& pts, const std::vector<char>& kind, double w2);

struct OuterConflicts {
    std::vector<std::pair<int, int>> external;  // leaf index pairs, i < j
    std::vector<int> framework;                 // leaf indices, ascending
};
// Leaves on outer framework edges get their outer embedding; pairs and framework edges are only
// examined within neighbouring grid cells.
OuterConflicts conflict_finder(const Framework& fr, const FrameworkDrawing& d, const LeafDrawings& ld,
                               ProximityGraph* graph_out = nullptr);

struct ConflictSet {
    std::vector<Forbidden> overlapping;
    std::vector<int> framework;
    std::vector<LeafPair> internal;
    std::vector<LeafPair> external;
};
TwoSatFormula build_2sat(const Framework& fr, const ConflictSet& c);

struct TwoLengthReport {
    std::string stage;  // where an infeasible run stopped, or "realized"
    int leaves = 0;
    int clauses = 0;
    // Crossings found by the exhaustive local scan that the four conflict classes did not imply.
    int residual_conflicts = 0;
    std::vector<std::string> rule_disagreements;
};

std::optional<Realization> realize_uniform(const WeightedTwoTree& g, const CheckOptions& opt = {});
std::optional<Realization> realize_two_lengths(const WeightedTwoTree& g, TwoLengthReport* report = nullptr,
                                               const CheckOptions& opt = {});

}  // namespace fepr
