#include <cmath>
#include <random>

#include "doctest.h"
#include "fepr/checker.hpp"
#include "fepr/families.hpp"
#include "fepr/oracle.hpp"

using namespace fepr;

namespace {
const double kH = std::sqrt(3.0) / 2;

bool naive_planar(const WeightedTwoTree& g, const Realization& r) {
    for (int a = 0; a < g.n; ++a)
        for (int b = a + 1; b < g.n; ++b)
            if (same_point(r[a], r[b])) return false;
    int m = static_cast<int>(g.edges.size());
    for (int e = 0; e < m; ++e)
        for (int f = e + 1; f < m; ++f) {
            auto [a, b] = g.edges[e];
            auto [c, d] = g.edges[f];
            auto rel = classify_segments({r[a], r[b]}, {r[c], r[d]});
            bool adj = a == c || a == d || b == c || b == d;
            if (adj ? (rel == SegmentRelation::overlap || rel == SegmentRelation::proper_cross)
                    : rel != SegmentRelation::disjoint)
                return false;
        }
    return true;
}
}  // namespace

TEST_CASE("equilateral triangle embedding") {
    auto g = with_uniform_length(triangle_shape(), 1);
    Realization r{{0, 0}, {1, 0}, {0.5, kH}};
    // Clockwise around 0: 2 (up) then 1 (right).
    PlaneEmbedding emb{{{2, 1}, {0, 2}, {1, 0}}, {0, 2, 1}};
    auto ok = check_realization_embedding(g, emb, r);
    CHECK_MESSAGE(ok.ok, ok.reason);
    CHECK(check_realization_rotation(g, emb.rotation, r));

    // Every vertex of a triangle has degree two, so the mirror image keeps the rotation system and only
    // the prescribed outer face tells the two apart.
    Realization swapped{{1, 0}, {0, 0}, {0.5, kH}};
    auto bad = check_realization_embedding(g, emb, swapped);
    CHECK_FALSE(bad.ok);
    CHECK(bad.reason.find("outer face") != std::string::npos);
    CHECK(check_realization_rotation(g, emb.rotation, swapped));

    PlaneEmbedding inner{emb.rotation, {0, 1, 2}};
    CHECK_FALSE(check_realization_embedding(g, inner, r));
}

TEST_CASE("reflected rotation is rejected") {
    auto g = with_uniform_length(book_shape(2), 1);
    Realization r{{0, 0}, {1, 0}, {0.5, kH}, {0.5, -kH}};
    auto rot = rotation_from_drawing(g, r);
    CHECK(check_realization_rotation(g, rot, r));
    Realization mirrored = r;
    for (Point& p : mirrored) p = reflect_x(p);
    auto res = check_realization_rotation(g, rot, mirrored);
    CHECK_FALSE(res.ok);
    CHECK(res.reason.find("rotation mismatch") != std::string::npos);
}

TEST_CASE("degenerate placement") {
    auto g = with_uniform_length(book_shape(2), 1);
    Realization r{{0, 0}, {1, 0}, {0.5, kH}, {0.5, kH}};
    auto res = check_planar(g, r);
    CHECK_FALSE(res.ok);
    CHECK(res.reason.find("degenerate placement") != std::string::npos);
}

TEST_CASE("crossing realization of a 6-vertex 2-tree") {
    // Strip of four unit triangles folded back so the last triangle overlaps the first.
    auto g = with_uniform_length(strip_shape(4), 1);
    REQUIRE(g.n == 6);
    auto t = oracle_tree(g);
    bool saw_bad = false, saw_good = false;
    enumerate_realizations(g, [&](const OracleCandidate& c) {
        bool planar = static_cast<bool>(check_planar(g, c.coords));
        CHECK(planar == naive_planar(g, c.coords));
        if (planar) {
            saw_good = true;
            auto emb = embedding_from_drawing(g, c.coords);
            REQUIRE(emb);
            CHECK(check_realization_embedding(g, *emb, c.coords));
        } else {
            saw_bad = true;
            auto rot = rotation_from_drawing(g, c.coords);
            CHECK_FALSE(check_realization_rotation(g, rot, c.coords));
        }
        return true;
    });
    CHECK(saw_bad);
    CHECK(saw_good);
}

TEST_CASE("checker agrees with the pairwise oracle on random instances") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.6, 1.4);
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        int n = 4 + trial % 18;  // up to 37 edges
        Shape s = random_shape(n, rng);
        std::vector<double> len(s.edges.size());
        for (double& l : len) l = u(rng);
        WeightedTwoTree g;
        try {
            g = with_lengths(s, len);
        } catch (const std::exception&) {
            continue;
        }
        auto t = oracle_tree(g);
        std::vector<int> signs(t.size());
        for (int& x : signs) x = (rng() & 1) ? 1 : -1;
        Realization r = realize_signs(g, t, signs);
        bool want = naive_planar(g, r);
        CHECK(static_cast<bool>(check_planar(g, r)) == want);
        CHECK(static_cast<bool>(check_planar(g, r, {true, 1e-7, CrossingMode::grid})) == want);
        auto rot = rotation_from_drawing(g, r);
        auto by_rot = check_realization_rotation(g, rot, r);
        CHECK(static_cast<bool>(by_rot) == want);
        if (by_rot) {
            auto walk = outer_cycle_walk(g, rot, r);
            REQUIRE(walk);
            CHECK(check_realization_embedding(g, {rot, *walk}, r));
        }
        ++checked;
    }
    CHECK(checked > 300);
}

TEST_CASE("grid crossing mode matches pairwise on large strips") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = with_uniform_length(strip_shape(60 + trial), 1);
        auto t = oracle_tree(g);
        std::vector<int> signs(t.size(), 1);
        for (std::size_t k = 1; k < signs.size(); ++k) signs[k] = (k % 2 == 0) ? 1 : -1;
        if (trial % 3) signs[1 + rng() % (signs.size() - 1)] *= -1;
        Realization r = realize_signs(g, t, signs);
        CHECK(find_crossing(g, r, CrossingMode::grid).has_value() ==
              find_crossing(g, r, CrossingMode::pairwise).has_value());
    }
}
