#pragma once

#include "finecurve/rational.hpp"

#include <optional>
#include <span>
#include <vector>

namespace finecurve {

struct Segment {
    Vec2 a;
    Vec2 b;

    Vec2 direction() const { return b - a; }
    Vec2 at(const Rational& t) const { return a + t * (b - a); }
    Segment reversed() const { return {b, a}; }

    friend bool operator==(const Segment&, const Segment&) = default;
};

enum class HitKind { None, Point, Overlap };

// Exact intersection of two closed segments. Parameters t (on the first
// segment) and u (on the second) are in [0, 1]. For an overlap, (t0, u0) and
// (t1, u1) are corresponding endpoints with t0 < t1.
struct SegmentHit {
    HitKind kind = HitKind::None;
    Rational t0, t1;
    Rational u0, u1;
    Vec2 p0, p1;
};

SegmentHit segment_intersect(const Segment& s, const Segment& t);

bool point_on_segment(const Vec2& p, const Segment& s);

// Parameter of p along s, assuming p lies on the carrier line.
Rational segment_parameter(const Segment& s, const Vec2& p);

// True iff x lies strictly inside the open sector swept counter-clockwise from
// `from` to `to`. When `from` and `to` point the same way the sector is the
// whole plane minus that ray.
bool strictly_ccw_between(const Vec2& from, const Vec2& x, const Vec2& to);

bool same_direction(const Vec2& a, const Vec2& b);

// Twice the signed area of a closed polygon.
Rational signed_area2(std::span<const Vec2> poly);

// Winding number of a closed polygon around p; p must not lie on it.
int winding_number(std::span<const Vec2> poly, const Vec2& p);

bool point_on_polygon_boundary(std::span<const Vec2> poly, const Vec2& p);

// A point strictly inside a simple polygon.
Vec2 interior_point(std::span<const Vec2> poly);

bool is_simple_polygon(std::span<const Vec2> poly);

// Closed triangle containment.
bool point_in_triangle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c);

// Orientation-preserving similarity z -> a*z + b, with a and b read as
// complex numbers (x + iy).
struct Similarity {
    Vec2 a{1, 0};
    Vec2 b{0, 0};

    static Similarity identity() { return {}; }

    Vec2 apply(const Vec2& z) const { return linear(z) + b; }
    Vec2 linear(const Vec2& v) const;
    Similarity inverse() const;
    bool is_identity() const { return a == Vec2(1, 0) && b == Vec2(0, 0); }
    bool is_translation() const { return a == Vec2(1, 0); }

    friend bool operator==(const Similarity&, const Similarity&) = default;
};

// (f * g)(z) = f(g(z)).
Similarity compose(const Similarity& f, const Similarity& g);

// The similarity sending p0 -> q0 and p1 -> q1.
Similarity similarity_from_pairs(const Vec2& p0, const Vec2& q0, const Vec2& p1, const Vec2& q1);

Vec2 complex_mul(const Vec2& a, const Vec2& b);
Vec2 complex_div(const Vec2& a, const Vec2& b);

// Floating-point helpers used only for feature-size estimates and pruning.
struct Box {
    double xmin, ymin, xmax, ymax;
    bool overlaps(const Box& o, double margin) const {
        return !(o.xmin > xmax + margin || o.xmax < xmin - margin || o.ymin > ymax + margin ||
                 o.ymax < ymin - margin);
    }
};

Box box_of(const Segment& s);
double approx_segment_distance(const Segment& s, const Segment& t);
double approx_point_segment_distance(const Vec2& p, const Segment& s);

// Exact squared distance from p to segment s.
Rational distance_sq(const Vec2& p, const Segment& s);

}  // namespace finecurve
