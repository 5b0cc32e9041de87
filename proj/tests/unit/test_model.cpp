#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "fepr/families.hpp"
#include "fepr/model.hpp"

using namespace fepr;

namespace {
std::set<std::pair<Triple, Triple>> tree_pairs(const WeightedTwoTree& g, const DecompositionTree& t) {
    std::set<std::pair<Triple, Triple>> out;
    for (std::size_t k = 0; k < t.size(); ++k) {
        Triple self = g.triangles[t.tri[k]];
        Triple par = t.parent[k] < 0 ? Triple{-1, -1, -1} : g.triangles[t.tri[t.parent[k]]];
        out.emplace(self, par);
    }
    return out;
}
}  // namespace

TEST_CASE("validate_2tree accepts and rejects") {
    CHECK_NOTHROW(validate_2tree(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}));
    CHECK_THROWS_AS(validate_2tree(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}}), NotATwoTree);
    CHECK_THROWS_AS(validate_2tree(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 3}}), TriangleInequalityViolated);
    CHECK_THROWS_AS(validate_2tree(3, {{0, 1, 1}, {0, 1, 1}, {0, 2, 1}}), NotATwoTree);
    CHECK_THROWS_AS(validate_2tree(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, -1}}), BadParameter);
    // K4 has the right edge count only for n=4 plus one; it is never a 2-tree.
    CHECK_THROWS_AS(validate_2tree(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}}),
                    NotATwoTree);
}

TEST_CASE("decomposition tree shapes") {
    auto tri = with_uniform_length(triangle_shape(), 1);
    CHECK(build_decomposition_tree(tri, 0).size() == 1);

    auto fan = with_uniform_length(fan_shape(3), 1);
    REQUIRE(fan.n == 5);
    auto t = build_decomposition_tree(fan, fan.triangle_id(0, 1, 2));
    REQUIRE(t.size() == 3);
    int leaves = 0;
    for (std::size_t k = 0; k < t.size(); ++k) leaves += t.children[k].empty();
    CHECK(leaves == 1);  // rooted at an end: a path

    auto book = with_uniform_length(book_shape(4), 1);
    auto tb = build_decomposition_tree(book, 0);
    CHECK(tb.size() == 4);
    CHECK(tb.children[0].size() == 3);
}

TEST_CASE("decomposition tree is peel-order independent") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 3 + trial % 10;
        auto g = with_uniform_length(random_shape(n, rng), 1);
        for (int root = 0; root < static_cast<int>(g.triangles.size()); ++root) {
            auto a = build_decomposition_tree(g, root, PeelOrder::smallest_first);
            auto b = build_decomposition_tree(g, root, PeelOrder::largest_first);
            CHECK(static_cast<int>(a.size()) == n - 2);
            CHECK(tree_pairs(g, a) == tree_pairs(g, b));
        }
    }
}

TEST_CASE("max perimeter cycle") {
    auto fan = with_uniform_length(fan_shape(3), 1);
    CHECK(max_perimeter_cycle(fan) == 0);
    CHECK(fan.triangles[0] == Triple{0, 1, 2});
    // Scale the last triangle (0,3,4) up: edges 0-4 and 3-4 become 1.5, 0-3 stays 1.
    Shape s = fan_shape(3);
    std::vector<double> len(s.edges.size(), 1.0);
    for (std::size_t i = 0; i < s.edges.size(); ++i)
        if (s.edges[i].second == 4) len[i] = 1.5;
    auto g = with_lengths(s, len);
    CHECK(g.triangles[max_perimeter_cycle(g)] == Triple{0, 3, 4});
}

TEST_CASE("outerplanarity") {
    auto fan = with_uniform_length(fan_shape(4), 1);
    auto emb = outerplane_embedding(fan);
    REQUIRE(emb);
    CHECK(emb->outer.size() == 6);
    CHECK(outerplane_embedding(with_uniform_length(triangle_shape(), 1)));
    CHECK_FALSE(outerplane_embedding(with_uniform_length(book_shape(3), 1)));
    CHECK_FALSE(is_outerplanar(with_uniform_length(book_shape(3), 1)));
}

TEST_CASE("triangle classification") {
    CHECK(classify_triangle(1, 1, 1, 1, 1.8) == TriangleClass::small_equilateral);
    CHECK(classify_triangle(1.8, 1.8, 1.8, 1, 1.8) == TriangleClass::big_equilateral);
    CHECK(classify_triangle(1, 1.8, 1.8, 1, 1.8) == TriangleClass::tall_isosceles);
    CHECK(classify_triangle(1, 1, 1.8, 1, 1.8) == TriangleClass::flat_isosceles);
    CHECK_THROWS_AS(classify_triangle(1, 1, 2, 1, 2), ImpossibleTriangle);
    CHECK_THROWS_AS(classify_triangle(1, 1, 2.5, 1, 2.5), ImpossibleTriangle);
}

TEST_CASE("SPQ trees") {
    auto tri = with_uniform_length(triangle_shape(), 1);
    auto t = build_spq_tree(tri, 0);
    CHECK_NOTHROW(assert_spq_conditions(tri, t));
    CHECK(spq_height(t) == 2);
    CHECK(longest_path_length(tri) == 2);

    auto fan = with_uniform_length(fan_shape(3), 1);
    CHECK(longest_path_length(fan) == 4);
    auto tf = build_spq_tree(fan, fan.edge_id(0, 2));
    CHECK_NOTHROW(assert_spq_conditions(fan, tf));
    CHECK(spq_height(tf) == 4);
    CHECK(spq_height(build_spq_tree(fan, fan.edge_id(0, 1))) <= 2 * 4 - 2);

    for (int k : {2, 3, 5}) {
        auto book = with_uniform_length(book_shape(k), 1);
        auto tb = build_spq_tree(book, book.edge_id(0, 1));
        CHECK_NOTHROW(assert_spq_conditions(book, tb));
        CHECK(spq_height(tb) == 2);
        const SpqNode& root = tb.nodes[tb.root];
        CHECK(static_cast<int>(root.children.size()) == k + 1);
    }
    CHECK(longest_path_length(with_uniform_length(book_shape(2), 1)) == 3);
    CHECK(longest_path_length(with_uniform_length(book_shape(3), 1)) == 4);
    CHECK_THROWS_AS(longest_path_length(with_uniform_length(strip_shape(15), 1)), LongestPathTooLarge);
}

TEST_CASE("SPQ height bound on small 2-trees") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 150; ++trial) {
        int n = 3 + trial % 9;
        auto g = with_uniform_length(random_shape(n, rng), 1);
        int l = longest_path_length(g);
        for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
            auto t = build_spq_tree(g, e);
            CHECK_NOTHROW(assert_spq_conditions(g, t));
            int h = spq_height(t);
            CHECK(h % 2 == 0);
            CHECK(h <= 2 * l - 2);
        }
    }
}

TEST_CASE("non-isomorphic 2-tree counts") {
    // Frozen after enumeration; agrees with the known sequence of unlabeled 2-trees.
    const int want[] = {1, 1, 2, 5, 12, 39, 136};
    int total = 0;
    for (int n = 3; n <= 9; ++n) {
        auto all = nonisomorphic_2trees(n);
        CHECK(static_cast<int>(all.size()) == want[n - 3]);
        total += static_cast<int>(all.size());
    }
    CHECK(total == 196);
}
