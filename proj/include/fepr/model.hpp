#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fepr/geom.hpp"

namespace fepr {

struct NotATwoTree : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ImpossibleTriangle : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadParameter : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LongestPathTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Triple = std::array<int, 3>;
using Realization = std::vector<Point>;
using RawEdge = std::tuple<int, int, double>;

struct WeightedTwoTree {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // canonical (min, max)
    std::vector<double> length;
    std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbor, edge id), sorted by neighbor
    std::vector<Triple> triangles;                       // sorted vertex triples
    std::vector<std::vector<int>> edge_triangles;       // triangles containing each edge

    int edge_id(int u, int v) const;  // -1 when absent
    double len(int u, int v) const;
    int degree(int v) const { return static_cast<int>(adj[v].size()); }
    int triangle_id(int a, int b, int c) const;  // -1 when absent
    std::vector<RawEdge> raw_edges() const;

    std::unordered_map<long long, int> edge_index;
    std::unordered_map<long long, int> triangle_index;
};

// Validates simplicity, the edge count, reducibility by degree-2 peeling and strict triangle inequality.
WeightedTwoTree validate_2tree(int n, const std::vector<RawEdge>& edges);

struct DecompositionTree {
    std::vector<int> tri;          // triangle id (into g.triangles) per node; node 0 is the root
    std::vector<int> parent;       // -1 for the root
    std::vector<int> shared_edge;  // edge id shared with the parent, -1 for the root
    std::vector<int> apex;         // vertex not on the shared edge, -1 for the root
    std::vector<std::vector<int>> children;
    std::vector<int> node_of_triangle;
    std::size_t size() const { return tri.size(); }
};

enum class PeelOrder { smallest_first, largest_first };

DecompositionTree build_decomposition_tree(const WeightedTwoTree& g, int root_triangle,
                                           PeelOrder order = PeelOrder::smallest_first);

int max_perimeter_cycle(const WeightedTwoTree& g);
double perimeter(const WeightedTwoTree& g, int triangle);

// Root triangle (a<b<c) at a=(0,0), b on the positive x-axis, c above. side[node] = +1 puts the apex
// left of the directed shared edge (min -> max), -1 right. Entry 0 (the root) is ignored.
Realization realize_signs(const WeightedTwoTree& g, const DecompositionTree& t, const std::vector<int>& side);
// Sign vector reproducing a realization in the tree's convention (0 when degenerate).
std::vector<int> signs_of(const WeightedTwoTree& g, const DecompositionTree& t, const Realization& r);

struct PlaneEmbedding {
    std::vector<std::vector<int>> rotation;  // clockwise neighbor order per vertex
    std::vector<int> outer;                  // outer face boundary, clockwise (interior on the right)
};

bool is_outerplanar(const WeightedTwoTree& g);
std::optional<PlaneEmbedding> outerplane_embedding(const WeightedTwoTree& g);

// Adjacency between triangles sharing an edge (a tree when g is outerplanar).
std::vector<std::vector<int>> dual_tree(const WeightedTwoTree& g);

enum class TriangleClass { small_equilateral, big_equilateral, tall_isosceles, flat_isosceles };
const char* to_string(TriangleClass c);
TriangleClass classify_triangle(double l1, double l2, double l3, double w1, double w2, double eps = 1e-9);

struct SpqNode {
    enum class Kind { S, P, Q } kind = Kind::Q;
    int u = -1;
    int v = -1;
    int w = -1;          // S-nodes: the third vertex of the triangle
    int edge = -1;       // Q- and P-nodes: the pole edge
    int triangle = -1;   // S-nodes
    int parent = -1;
    std::vector<int> children;
};

struct SpqTree {
    std::vector<SpqNode> nodes;
    int root = 0;
};

SpqTree build_spq_tree(const WeightedTwoTree& g, int e_star);
int spq_height(const SpqTree& t);
// Throws std::logic_error describing the first violated structural condition.
void assert_spq_conditions(const WeightedTwoTree& g, const SpqTree& t);
int longest_path_length(const WeightedTwoTree& g);

}  // namespace fepr
