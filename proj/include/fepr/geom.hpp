#pragma once

#include <deque>
#include <stdexcept>
#include <string>
#include <vector>

namespace fepr {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double norm(Point a);
double dist(Point a, Point b);

struct Segment {
    Point a;
    Point b;
};

// Global relative tolerance. Reads FEPR_EPSILON once; set_epsilon overrides it.
double epsilon();
void set_epsilon(double eps);

struct TriangleInequalityViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sign of (q-p) x (r-p), snapped to zero relative to the squared lengths of the two arms.
int orientation(Point p, Point q, Point r, double eps = epsilon());

enum class SegmentRelation { disjoint, touch, overlap, proper_cross };
const char* to_string(SegmentRelation r);

SegmentRelation classify_segments(const Segment& s, const Segment& t, double eps = epsilon());
bool same_point(Point a, Point b, double eps = epsilon());

enum class Side { left, right };

// Apex c with |ac| = len_ac, |bc| = len_bc on the requested side of the directed line a->b.
Point place_apex(Point a, Point b, double len_ac, double len_bc, Side side, double eps = epsilon());

bool triangle_inequality_ok(double l1, double l2, double l3, double eps = epsilon());

enum class PointLocation { strict_interior, boundary, exterior };
PointLocation point_in_triangle(Point p, Point a, Point b, Point c, double eps = epsilon());

// Interior angle at `apex` of the triangle (apex, p, q), in radians.
double angle_at(Point apex, Point p, Point q);
// Direction angle of v in [0, 2pi).
double direction(Point v);

Point reflect_x(Point p);

// Melkman's deque hull for points arriving along a simple polyline.
// Vertices are kept counter-clockwise; deque front and back hold the most recent hull vertex.
class MelkmanHull {
public:
    void push(Point p);
    void reset();
    std::size_t size() const { return count_; }
    // Counter-clockwise boundary, without the duplicated closing vertex.
    std::vector<Point> boundary() const;
    // Index of the point (in push order) for each boundary vertex.
    std::vector<int> boundary_ids() const;
    const std::deque<int>& deque_ids() const { return dq_; }
    const std::vector<Point>& points() const { return pts_; }

private:
    double turn(int a, int b, int c) const;
    std::vector<Point> pts_;
    std::deque<int> dq_;
    std::size_t count_ = 0;
    bool degenerate_ = true;  // all points so far are collinear
};

std::vector<std::vector<Point>> incremental_hull(const std::vector<Point>& path);
// O(n^3) reference hull: counter-clockwise extreme points, starting at the lowest-leftmost.
std::vector<Point> naive_hull(const std::vector<Point>& pts, double eps = epsilon());

}  // namespace fepr
