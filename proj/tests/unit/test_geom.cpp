#include <cmath>
#include <random>

#include "doctest.h"
#include "fepr/geom.hpp"

using namespace fepr;

namespace {
bool near(Point a, Point b, double tol = 1e-12) { return dist(a, b) <= tol; }

// Cyclic rotation so that the lowest-leftmost point comes first.
std::vector<Point> normalized(std::vector<Point> h) {
    if (h.empty()) return h;
    std::size_t s = 0;
    for (std::size_t i = 1; i < h.size(); ++i)
        if (h[i].y < h[s].y || (h[i].y == h[s].y && h[i].x < h[s].x)) s = i;
    std::rotate(h.begin(), h.begin() + static_cast<long>(s), h.end());
    return h;
}

// Random simple path: a random walk that only accepts steps not touching earlier segments.
std::vector<Point> random_simple_path(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Point> pts{{0, 0}};
    int guard = 0;
    while (static_cast<int>(pts.size()) < n && guard++ < 10000) {
        Point p{pts.back().x + u(rng), pts.back().y + u(rng)};
        Segment s{pts.back(), p};
        bool ok = true;
        for (std::size_t i = 0; i + 2 < pts.size() && ok; ++i)
            ok = classify_segments(s, {pts[i], pts[i + 1]}) == SegmentRelation::disjoint;
        for (const Point& q : pts) ok = ok && !same_point(p, q);
        if (ok) pts.push_back(p);
    }
    return pts;
}
}  // namespace

TEST_CASE("orientation signs") {
    CHECK(orientation({0, 0}, {1, 0}, {0, 1}) == 1);
    CHECK(orientation({0, 0}, {1, 0}, {2, 0}) == 0);
    CHECK(orientation({0, 0}, {1, 0}, {1, -1}) == -1);
}

TEST_CASE("orientation antisymmetry") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int i = 0; i < 2000; ++i) {
        Point p{u(rng), u(rng)}, q{u(rng), u(rng)}, r{u(rng), u(rng)};
        int a = orientation(p, q, r), b = orientation(p, r, q);
        if (a != 0 && b != 0) CHECK(a == -b);
    }
}

TEST_CASE("segment classification") {
    CHECK(classify_segments({{0, 0}, {2, 0}}, {{1, -1}, {1, 1}}) == SegmentRelation::proper_cross);
    CHECK(classify_segments({{0, 0}, {1, 0}}, {{1, 0}, {2, 1}}) == SegmentRelation::touch);
    CHECK(classify_segments({{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}) == SegmentRelation::disjoint);
    CHECK(classify_segments({{0, 0}, {2, 0}}, {{1, 0}, {3, 0}}) == SegmentRelation::overlap);
    CHECK(classify_segments({{0, 0}, {1, 0}}, {{1, 0}, {2, 0}}) == SegmentRelation::touch);
    CHECK(classify_segments({{0, 0}, {2, 0}}, {{1, 0}, {1, 1}}) == SegmentRelation::proper_cross);
}

TEST_CASE("segment classification is symmetric") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> u(-3, 3);
    for (int i = 0; i < 5000; ++i) {
        Segment s{{double(u(rng)), double(u(rng))}, {double(u(rng)), double(u(rng))}};
        Segment t{{double(u(rng)), double(u(rng))}, {double(u(rng)), double(u(rng))}};
        if (same_point(s.a, s.b) || same_point(t.a, t.b)) continue;
        CHECK(classify_segments(s, t) == classify_segments(t, s));
    }
}

TEST_CASE("apex placement") {
    Point l = place_apex({0, 0}, {1, 0}, 1, 1, Side::left);
    CHECK(near(l, {0.5, std::sqrt(3.0) / 2}));
    Point r = place_apex({0, 0}, {1, 0}, 1, 1, Side::right);
    CHECK(near(r, {0.5, -std::sqrt(3.0) / 2}));
    Point f = place_apex({0, 0}, {1, 0}, 0.9, 0.9, Side::left);
    // Frozen from solving the two circle equations by hand: y = sqrt(0.81 - 0.25).
    CHECK(f.y == doctest::Approx(0.7483314773547883).epsilon(1e-12));
    CHECK(dist(f, {0, 0}) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(dist(f, {1, 0}) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK_THROWS_AS(place_apex({0, 0}, {3, 0}, 1, 1, Side::left), TriangleInequalityViolated);
}

TEST_CASE("apex placement mirrors and reproduces lengths") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.1, 5.0), c(-5, 5);
    int tested = 0;
    while (tested < 2000) {
        Point a{c(rng), c(rng)}, b{c(rng), c(rng)};
        double la = u(rng), lb = u(rng), d = dist(a, b);
        if (!triangle_inequality_ok(d, la, lb)) continue;
        ++tested;
        Point l = place_apex(a, b, la, lb, Side::left);
        Point r = place_apex(a, b, la, lb, Side::right);
        CHECK(std::abs(dist(l, a) - la) <= 1e-9 * la);
        CHECK(std::abs(dist(l, b) - lb) <= 1e-9 * lb);
        CHECK(orientation(a, b, l) >= 0);
        CHECK(orientation(a, b, r) <= 0);
        // Mirror of l across line ab.
        Point dir = (1.0 / d) * (b - a);
        Point rel = l - a;
        Point m = a + (2 * dot(rel, dir)) * dir - rel;
        CHECK(dist(m, r) <= 1e-9 * (1 + norm(a) + la));
    }
}

TEST_CASE("triangle inequality") {
    CHECK(triangle_inequality_ok(3, 4, 5));
    CHECK_FALSE(triangle_inequality_ok(1, 1, 3));
    CHECK_FALSE(triangle_inequality_ok(1, 0.9, 1.9));
}

TEST_CASE("point in triangle") {
    Point a{0, 0}, b{1, 0}, c{0, 1};
    CHECK(point_in_triangle({1.0 / 3, 1.0 / 3}, a, b, c) == PointLocation::strict_interior);
    CHECK(point_in_triangle({0.5, 0}, a, b, c) == PointLocation::boundary);
    CHECK(point_in_triangle({2, 2}, a, b, c) == PointLocation::exterior);
}

TEST_CASE("incremental hull small cases") {
    auto h = incremental_hull({{0, 0}, {1, 0}, {1, 1}});
    REQUIRE(h.size() == 3);
    CHECK(h[0].size() == 1);
    CHECK(h[1].size() == 2);
    CHECK(h[2].size() == 3);
    auto sq = incremental_hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(normalized(sq.back()).size() == 4);
    auto coll = incremental_hull({{0, 0}, {1, 0}, {2, 0}, {2, 1}});
    CHECK(normalized(coll.back()).size() == 3);
}

TEST_CASE("incremental hull equals naive hull on random simple paths") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 3 + trial % 30;
        auto path = random_simple_path(rng, n);
        auto hulls = incremental_hull(path);
        for (std::size_t i = 0; i < path.size(); ++i) {
            std::vector<Point> prefix(path.begin(), path.begin() + static_cast<long>(i) + 1);
            auto want = naive_hull(prefix);
            auto got = normalized(hulls[i]);
            if (want.size() < 3) continue;
            REQUIRE(got.size() == want.size());
            for (std::size_t k = 0; k < got.size(); ++k) CHECK(near(got[k], want[k], 1e-12));
        }
    }
}
