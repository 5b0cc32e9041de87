#include <random>

#include "doctest.h"
#include "fepr/families.hpp"
#include "fepr/fixed_embedding.hpp"
#include "fepr/oracle.hpp"

using namespace fepr;

namespace {
CyclicOrder scan_order(const std::vector<int>& rot, int a, int b, int c) {
    std::size_t ia = 0;
    while (rot[ia] != a) ++ia;
    for (std::size_t k = 1; k < rot.size(); ++k) {
        int x = rot[(ia + k) % rot.size()];
        if (x == b) return CyclicOrder::ijk;
        if (x == c) return CyclicOrder::ikj;
    }
    return CyclicOrder::ijk;
}
}  // namespace

TEST_CASE("order queries on a star") {
    auto g = with_uniform_length(fan_shape(2), 1);  // vertex 0 has neighbours 1, 2, 3
    Rotation rot{{1, 2, 3}, {2, 0}, {3, 0, 1}, {0, 2}};
    auto idx = build_order_index(g, rot);
    int e1 = g.edge_id(0, 1), e2 = g.edge_id(0, 2), e3 = g.edge_id(0, 3);
    CHECK(cyclic_order(idx, 0, e1, e2, e3) == CyclicOrder::ijk);
    CHECK(cyclic_order(idx, 0, e1, e3, e2) == CyclicOrder::ikj);
    CHECK(cyclic_order(idx, 0, e2, e3, e1) == CyclicOrder::ijk);
    CHECK_THROWS_AS(cyclic_order(idx, 1, e1, e2, e3), EdgesNotIncident);
}

TEST_CASE("order queries match a linear scan") {
    std::mt19937_64 rng(41);
    auto g = with_uniform_length(fan_shape(9), 1);  // hub of degree 10
    Rotation rot(g.n);
    for (int v = 0; v < g.n; ++v) {
        for (auto [w, e] : g.adj[v]) rot[v].push_back(w);
        std::shuffle(rot[v].begin(), rot[v].end(), rng);
    }
    auto idx = build_order_index(g, rot);
    const auto& hub = rot[0];
    for (int a : hub)
        for (int b : hub)
            for (int c : hub) {
                if (a == b || b == c || a == c) continue;
                CHECK(cyclic_order(idx, 0, g.edge_id(0, a), g.edge_id(0, b), g.edge_id(0, c)) ==
                      scan_order(hub, a, b, c));
            }
}

TEST_CASE("fixed rotation: small examples") {
    auto tri = with_uniform_length(triangle_shape(), 1);
    Rotation cw{{2, 1}, {0, 2}, {1, 0}};
    Rotation ccw{{1, 2}, {2, 0}, {0, 1}};
    CHECK(realize_fixed_rotation(tri, cw));
    CHECK(realize_fixed_rotation(tri, ccw));

    // Book of three unit triangles with all apexes on one side of the spine.
    auto book = with_uniform_length(book_shape(3), 1);
    Rotation one_side{{2, 3, 4, 1}, {0, 4, 3, 2}, {1, 0}, {1, 0}, {1, 0}};
    CHECK_FALSE(realize_fixed_rotation(book, one_side));

    auto fan = with_uniform_length(fan_shape(3), 1);
    auto emb = outerplane_embedding(fan);
    REQUIRE(emb);
    auto r = realize_fixed_embedding(fan, *emb);
    REQUIRE(r);
    CHECK(check_realization_embedding(fan, *emb, *r));
    auto r2 = realize_fixed_rotation(fan, emb->rotation);
    REQUIRE(r2);
    CHECK(check_realization_rotation(fan, emb->rotation, *r2));
}

TEST_CASE("fixed rotation agrees with the oracle on all small 2-trees") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.7, 1.3);
    for (int n = 3; n <= 8; ++n) {
        for (const Shape& s : nonisomorphic_2trees(n)) {
            for (int rep = 0; rep < 2; ++rep) {
                std::vector<double> len(s.edges.size());
                for (double& l : len) l = rep == 0 ? 1.0 : u(rng);
                WeightedTwoTree g;
                try {
                    g = with_lengths(s, len);
                } catch (const std::exception&) {
                    continue;
                }
                enumerate_realizations(g, [&](const OracleCandidate& c) {
                    if (!c.planar) return true;
                    auto rot = rotation_from_drawing(g, c.coords);
                    auto got = realize_fixed_rotation(g, rot);
                    REQUIRE(got);
                    CHECK(check_realization_rotation(g, rot, *got));
                    std::vector<int> anchor{0, 1};
                    bool matched = false;
                    for (const auto& cand : fixed_rotation_candidates(g, rot))
                        matched = matched || (cand.built && congruent_on(cand.coords, c.coords, anchor, 1e-7, false));
                    CHECK(matched);
                    auto emb = embedding_from_drawing(g, c.coords);
                    REQUIRE(emb);
                    auto ge = realize_fixed_embedding(g, *emb);
                    REQUIRE(ge);
                    CHECK(check_realization_embedding(g, *emb, *ge));
                    CHECK(congruent_on(*ge, c.coords, anchor, 1e-7, false));
                    return true;
                });
            }
        }
    }
}
