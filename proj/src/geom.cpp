#include "fepr/geom.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>

namespace fepr {

namespace {

double read_env_epsilon() {
    const char* s = std::getenv("FEPR_EPSILON");
    if (s == nullptr) return 1e-9;
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end == s || !(v > 0.0) || !(v < 1e-3)) return 1e-9;
    return v;
}

std::atomic<double>& eps_slot() {
    static std::atomic<double> slot{read_env_epsilon()};
    return slot;
}

}  // namespace

double epsilon() { return eps_slot().load(std::memory_order_relaxed); }

void set_epsilon(double eps) {
    if (!(eps > 0.0) || !(eps < 1e-3)) throw std::invalid_argument("tolerance must lie in (0, 1e-3)");
    eps_slot().store(eps, std::memory_order_relaxed);
}

double norm(Point a) { return std::hypot(a.x, a.y); }
double dist(Point a, Point b) { return norm(a - b); }

int orientation(Point p, Point q, Point r, double eps) {
    Point a = q - p;
    Point b = r - p;
    double c = cross(a, b);
    double scale = std::max(dot(a, a), dot(b, b));
    if (std::abs(c) <= eps * scale) return 0;
    return c > 0 ? 1 : -1;
}

const char* to_string(SegmentRelation r) {
    switch (r) {
        case SegmentRelation::disjoint: return "disjoint";
        case SegmentRelation::touch: return "touch-at-endpoint";
        case SegmentRelation::overlap: return "overlap";
        case SegmentRelation::proper_cross: return "proper-cross";
    }
    return "?";
}

bool same_point(Point a, Point b, double eps) {
    double scale = 1.0 + std::max({std::abs(a.x), std::abs(a.y), std::abs(b.x), std::abs(b.y)});
    return dist(a, b) <= eps * scale;
}

SegmentRelation classify_segments(const Segment& s, const Segment& t, double eps) {
    int d1 = orientation(t.a, t.b, s.a, eps);
    int d2 = orientation(t.a, t.b, s.b, eps);
    int d3 = orientation(s.a, s.b, t.a, eps);
    int d4 = orientation(s.a, s.b, t.b, eps);
    if (d1 * d2 > 0 || d3 * d4 > 0) return SegmentRelation::disjoint;

    bool shared = same_point(s.a, t.a, eps) || same_point(s.a, t.b, eps) || same_point(s.b, t.a, eps) ||
                  same_point(s.b, t.b, eps);

    if (d1 == 0 && d2 == 0 && d3 == 0 && d4 == 0) {
        Point dir = s.b - s.a;
        if (dot(dir, dir) < dot(t.b - t.a, t.b - t.a)) dir = t.b - t.a;
        double len = norm(dir);
        if (len == 0.0) return shared ? SegmentRelation::touch : SegmentRelation::disjoint;
        dir = (1.0 / len) * dir;
        auto proj = [&](Point p) { return dot(p - s.a, dir); };
        double s0 = proj(s.a), s1 = proj(s.b), t0 = proj(t.a), t1 = proj(t.b);
        if (s0 > s1) std::swap(s0, s1);
        if (t0 > t1) std::swap(t0, t1);
        double overlap = std::min(s1, t1) - std::max(s0, t0);
        double tol = eps * (1.0 + len);
        if (overlap > tol) return SegmentRelation::overlap;
        if (overlap < -tol) return SegmentRelation::disjoint;
        return SegmentRelation::touch;
    }
    if (shared) return SegmentRelation::touch;
    return SegmentRelation::proper_cross;
}

Point place_apex(Point a, Point b, double len_ac, double len_bc, Side side, double eps) {
    double d = dist(a, b);
    double scale = std::max({d, len_ac, len_bc});
    if (d <= 0.0 || len_ac <= 0.0 || len_bc <= 0.0 || d > len_ac + len_bc + eps * scale ||
        len_ac > d + len_bc + eps * scale || len_bc > d + len_ac + eps * scale) {
        throw TriangleInequalityViolated("cannot place apex: lengths violate the triangle inequality");
    }
    Point u = (1.0 / d) * (b - a);
    Point n{-u.y, u.x};
    double x = (d * d + len_ac * len_ac - len_bc * len_bc) / (2.0 * d);
    double h = std::sqrt(std::max(0.0, len_ac * len_ac - x * x));
    if (side == Side::right) h = -h;
    return a + x * u + h * n;
}

bool triangle_inequality_ok(double l1, double l2, double l3, double eps) {
    if (!(l1 > 0.0) || !(l2 > 0.0) || !(l3 > 0.0)) return false;
    double scale = std::max({l1, l2, l3});
    double slack = eps * scale;
    return l1 < l2 + l3 - slack && l2 < l1 + l3 - slack && l3 < l1 + l2 - slack;
}

PointLocation point_in_triangle(Point p, Point a, Point b, Point c, double eps) {
    if (orientation(a, b, c, eps) < 0) std::swap(b, c);
    int o1 = orientation(a, b, p, eps);
    int o2 = orientation(b, c, p, eps);
    int o3 = orientation(c, a, p, eps);
    if (o1 < 0 || o2 < 0 || o3 < 0) return PointLocation::exterior;
    if (o1 > 0 && o2 > 0 && o3 > 0) return PointLocation::strict_interior;
    return PointLocation::boundary;
}

double angle_at(Point apex, Point p, Point q) {
    Point a = p - apex;
    Point b = q - apex;
    return std::atan2(std::abs(cross(a, b)), dot(a, b));
}

double direction(Point v) {
    double t = std::atan2(v.y, v.x);
    if (t < 0) t += 2.0 * std::numbers::pi;
    return t;
}

Point reflect_x(Point p) { return {p.x, -p.y}; }

double MelkmanHull::turn(int a, int b, int c) const {
    return static_cast<double>(orientation(pts_[a], pts_[b], pts_[c]));
}

void MelkmanHull::reset() {
    pts_.clear();
    dq_.clear();
    count_ = 0;
    degenerate_ = true;
}

void MelkmanHull::push(Point p) {
    int id = static_cast<int>(pts_.size());
    pts_.push_back(p);
    if (degenerate_) {
        if (dq_.empty()) {
            dq_.push_back(id);
        } else if (dq_.size() == 1) {
            if (!same_point(pts_[dq_.front()], p)) dq_.push_back(id);
        } else {
            int a = dq_.front();
            int b = dq_.back();
            int o = orientation(pts_[a], pts_[b], p);
            if (o == 0) {
                // A simple collinear path is monotone, so the new point replaces the latest extreme.
                if (dot(p - pts_[b], pts_[b] - pts_[a]) > 0) dq_.back() = id;
            } else {
                dq_.clear();
                if (o > 0) {
                    dq_ = {id, a, b, id};
                } else {
                    dq_ = {id, b, a, id};
                }
                degenerate_ = false;
            }
        }
        count_ = degenerate_ ? dq_.size() : dq_.size() - 1;
        return;
    }
    std::size_t t = dq_.size() - 1;
    if (turn(dq_[t - 1], dq_[t], id) > 0 && turn(dq_[0], dq_[1], id) > 0) return;
    while (dq_.size() > 2 && turn(dq_[dq_.size() - 2], dq_.back(), id) <= 0) dq_.pop_back();
    dq_.push_back(id);
    while (dq_.size() > 2 && turn(id, dq_[0], dq_[1]) <= 0) dq_.pop_front();
    dq_.push_front(id);
    count_ = dq_.size() - 1;
}

std::vector<int> MelkmanHull::boundary_ids() const {
    std::vector<int> out;
    if (degenerate_) {
        out.assign(dq_.begin(), dq_.end());
        return out;
    }
    out.assign(dq_.begin(), dq_.end() - 1);
    return out;
}

std::vector<Point> MelkmanHull::boundary() const {
    std::vector<Point> out;
    for (int id : boundary_ids()) out.push_back(pts_[id]);
    return out;
}

std::vector<std::vector<Point>> incremental_hull(const std::vector<Point>& path) {
    std::vector<std::vector<Point>> out;
    out.reserve(path.size());
    MelkmanHull h;
    for (const Point& p : path) {
        h.push(p);
        out.push_back(h.boundary());
    }
    return out;
}

std::vector<Point> naive_hull(const std::vector<Point>& pts, double eps) {
    // Keep directed pairs (i,j) with every other point strictly left or on the closed segment.
    std::vector<Point> uniq;
    for (const Point& p : pts) {
        bool dup = false;
        for (const Point& q : uniq) dup = dup || same_point(p, q, eps);
        if (!dup) uniq.push_back(p);
    }
    std::size_t n = uniq.size();
    if (n <= 1) return uniq;
    std::vector<int> next(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            bool ok = true;
            for (std::size_t k = 0; k < n && ok; ++k) {
                if (k == i || k == j) continue;
                int o = orientation(uniq[i], uniq[j], uniq[k], eps);
                if (o < 0) ok = false;
                if (o == 0) {
                    double t = dot(uniq[k] - uniq[i], uniq[j] - uniq[i]);
                    double l = dot(uniq[j] - uniq[i], uniq[j] - uniq[i]);
                    if (t < 0 || t > l) ok = false;
                }
            }
            if (ok) next[i] = static_cast<int>(j);
        }
    }
    std::size_t start = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (uniq[i].y < uniq[start].y || (uniq[i].y == uniq[start].y && uniq[i].x < uniq[start].x)) start = i;
    }
    std::vector<Point> out;
    int cur = static_cast<int>(start);
    for (std::size_t guard = 0; guard <= n; ++guard) {
        out.push_back(uniq[cur]);
        cur = next[cur];
        if (cur < 0 || cur == static_cast<int>(start)) break;
    }
    return out;
}

}  // namespace fepr
