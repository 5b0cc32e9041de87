#include <cmath>
#include <random>

#include "doctest.h"
#include "fepr/families.hpp"
#include "fepr/oracle.hpp"
#include "fepr/spq_solver.hpp"

using namespace fepr;

namespace {

UvRealization shifted(const UvRealization& r, Point d) {
    UvRealization out = r;
    for (int x : out.vertices) out.coords[x] = out.coords[x] + d;
    return out;
}

WeightedTwoTree random_two_lengths(const Shape& s, std::mt19937_64& rng, double a, double b) {
    std::vector<double> len(s.edges.size());
    for (double& l : len) l = rng() % 2 ? a : b;
    return with_lengths(s, len);
}

}  // namespace

TEST_CASE("uv equivalence") {
    auto g = with_uniform_length(triangle_shape(), 1);
    Realization r{{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}};
    auto a = uv_view(g, r, 0, 1);
    REQUIRE(a);
    CHECK(uv_equivalent(g, *a, shifted(*a, {5, -3})));

    Realization m = r;
    for (Point& p : m) p = reflect_x(p);
    auto b = uv_view(g, m, 0, 1);
    REQUIRE(b);
    CHECK_FALSE(uv_equivalent(g, *a, *b));

    UvRealization other = *a;
    other.u = 1;
    other.v = 2;
    CHECK_THROWS_AS(uv_equivalent(g, *a, other), PoleEdgeMissing);
    UvRealization no_edge = *a;
    no_edge.edges = {g.edge_id(1, 2), g.edge_id(0, 2)};
    CHECK_THROWS_AS(uv_equivalent(g, no_edge, *a), PoleEdgeMissing);

    SUBCASE("interior flip keeps the class") {
        // Big apex 2 over (0,1); small apex 3 nested under it; leaf 4 on (0,3) fits either way.
        auto h = validate_2tree(5, {{0, 1, 1}, {0, 2, 3}, {1, 2, 3}, {0, 3, 0.7}, {1, 3, 0.7}, {0, 4, 0.3}, {3, 4, 0.45}});
        std::vector<UvRealization> nested;
        for_each_planar_realization(h, oracle_tree(h), {}, [&](const OracleCandidate& c) {
            auto view = uv_view(h, c.coords, 0, 1);
            if (view && view->outer.size() == 3) nested.push_back(*view);
            return true;
        });
        // The oracle fixes the root triangle, so only the two leaf placements remain.
        REQUIRE(nested.size() == 2);
        int equivalent_pairs = 0;
        for (std::size_t i = 0; i < nested.size(); ++i)
            for (std::size_t j = i + 1; j < nested.size(); ++j) equivalent_pairs += uv_equivalent(h, nested[i], nested[j]);
        CHECK(equivalent_pairs == 1);
    }
}

TEST_CASE("combine") {
    auto g = with_uniform_length(triangle_shape(), 1);
    auto build = [&](const WeightedTwoTree& h, int u, int v) {
        UvRealization r;
        r.u = u;
        r.v = v;
        r.coords.assign(h.n, Point{NAN, NAN});
        r.coords[u] = {0, 0};
        r.coords[v] = {h.len(u, v), 0};
        r.vertices = {u, v};
        r.edges = {h.edge_id(u, v)};
        r.outer = {u, v};
        return r;
    };
    SUBCASE("single edges give the two triangle orientations") {
        auto [phi, psi] = combine(g, build(g, 0, 1), 2, build(g, 0, 2), build(g, 2, 1));
        CHECK(phi.coords[2].y > 0);
        CHECK(psi.coords[2].y < 0);
        CHECK(phi.outer == std::vector<int>{0, 2, 1});
        CHECK(psi.outer == std::vector<int>{0, 1, 2});
        CHECK(is_uv_external(g, phi));
        CHECK(is_uv_external(g, psi));
        CHECK(outer_boundary(g, phi.coords, phi.edges) == std::vector<int>{0, 2, 1});
    }
    SUBCASE("a lopsided second page crosses on one side only") {
        double l02 = std::hypot(0.5, 0.9), l12 = std::hypot(0.5, 0.9);
        double l03 = std::hypot(1.5, 0.6), l13 = std::hypot(0.5, 0.6);
        auto h = validate_2tree(4, {{0, 1, 1}, {0, 2, l02}, {1, 2, l12}, {0, 3, l03}, {1, 3, l13}});
        auto [p1, p2] = combine(h, build(h, 0, 1), 2, build(h, 0, 2), build(h, 2, 1));
        auto [phi, psi] = combine(h, p1, 3, build(h, 0, 3), build(h, 3, 1));
        CHECK_FALSE(is_uv_external(h, phi));
        CHECK(is_uv_external(h, psi));
        (void)p2;
    }
}

TEST_CASE("spq solver") {
    SpqOptions strict;
    strict.check_invariants = true;
    CHECK(realize_spq(with_uniform_length(triangle_shape(), 1), nullptr, strict));

    SUBCASE("seven equilateral pages overflow the angle around the spine") {
        auto g = with_uniform_length(book_shape(7), 1);
        SpqReport rep;
        CHECK_FALSE(realize_spq(g, &rep, strict));
        CHECK(rep.failed_node >= 0);
        CHECK_FALSE(is_realizable_bruteforce(g).realizable);
        // Congruent pages can only use the two sides of the spine.
        CHECK(realize_spq(with_uniform_length(book_shape(2), 1), nullptr, strict));
        CHECK_FALSE(realize_spq(with_uniform_length(book_shape(3), 1), nullptr, strict));
    }
    SUBCASE("budget") {
        SpqOptions tight;
        tight.budget = 3;
        CHECK_THROWS_AS(realize_spq(with_uniform_length(book_shape(4), 1), nullptr, tight), BudgetExceeded);
    }
    SUBCASE("oracle agreement") {
        std::mt19937_64 rng(41);
        int total = 0, yes = 0, bad = 0;
        std::size_t biggest = 0;
        for (int n = 3; n <= 8; ++n)
            for (const Shape& s : nonisomorphic_2trees(n))
                for (int rep = 0; rep < 2; ++rep) {
                    auto g = random_two_lengths(s, rng, 1.0, 1.8);
                    SpqReport report;
                    auto ours = realize_spq(g, &report, strict);
                    bool brute = is_realizable_bruteforce(g).realizable;
                    ++total;
                    yes += brute;
                    bad += ours.has_value() != brute;
                    if (ours) CHECK(check_planar(g, *ours));
                    biggest = std::max(biggest, report.max_set_size);
                }
        MESSAGE(total << " instances, " << yes << " realizable, largest set " << biggest);
        CHECK(bad == 0);
        CHECK(yes < total);
    }
    SUBCASE("root set is the oracle's uv classes") {
        std::mt19937_64 rng(43);
        int compared = 0;
        for (int n = 3; n <= 7; ++n)
            for (const Shape& s : nonisomorphic_2trees(n)) {
                auto g = random_two_lengths(s, rng, 1.0, 1.6);
                int e_star = 0;
                for (int e = 1; e < static_cast<int>(g.edges.size()); ++e)
                    if (g.length[e] > g.length[e_star]) e_star = e;
                auto t = build_spq_tree(g, e_star);
                auto sets = spq_sets(g, t, strict);
                auto [u, v] = g.edges[e_star];
                auto classes = enumerate_uv_external(g, u, v);
                const auto& root = sets[t.root].members;
                CHECK(root.size() == classes.size());
                for (const Realization& c : classes) {
                    auto view = uv_view(g, c, u, v);
                    REQUIRE(view);
                    bool found = false;
                    for (const UvRealization& m : root) found = found || uv_equivalent(g, m, *view);
                    CHECK(found);
                }
                ++compared;
            }
        CHECK(compared == 21);
    }
}
