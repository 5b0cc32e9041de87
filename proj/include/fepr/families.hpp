#pragma once

#include <random>
#include <utility>
#include <vector>

#include "fepr/model.hpp"

namespace fepr {

// Unweighted 2-tree skeleton.
struct Shape {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
};

WeightedTwoTree with_lengths(const Shape& s, const std::vector<double>& lengths);
WeightedTwoTree with_uniform_length(const Shape& s, double w);

Shape triangle_shape();
Shape fan_shape(int triangles);          // hub 0, rim 1..triangles+1
Shape book_shape(int pages);             // spine 0-1, apexes 2..pages+1
Shape strip_shape(int triangles);        // triangles (i, i+1, i+2)
Shape random_shape(int n, std::mt19937_64& rng);
Shape attach(const Shape& s, int u, int v);  // new vertex adjacent to u and v

// Maximal outerpath: triangle (0,1,2), then each new vertex attaches to the current edge (a, b) and the
// next current edge is (b, new) when turns[i] is true, (a, new) otherwise. Face count turns.size() + 1.
Shape outerpath_shape(const std::vector<bool>& turns);
// Outerpath plus one extra leaf triangle on a free edge of face i whenever leaves[i] is set.
Shape outerpillar_shape(const std::vector<bool>& turns, const std::vector<bool>& leaves);

// Every 2-tree on n vertices up to isomorphism, in a deterministic order.
std::vector<Shape> nonisomorphic_2trees(int n);
bool isomorphic(const Shape& a, const Shape& b);

// Benchmark family: a strip of big equilateral triangles (side w2) whose outer edges each carry a
// flat isosceles leaf (legs w1); roughly n vertices.
WeightedTwoTree leafy_big_strip(int n, double w1, double w2);
WeightedTwoTree equilateral_strip(int n, double w);

}  // namespace fepr
