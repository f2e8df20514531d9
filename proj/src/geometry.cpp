#include "finecurve/geometry.hpp"

#include "finecurve/errors.hpp"

#include <algorithm>
#include <cmath>

namespace finecurve {

SegmentHit segment_intersect(const Segment& s, const Segment& t) {
    SegmentHit hit;
    const Vec2 d1 = s.direction();
    const Vec2 d2 = t.direction();
    const Vec2 w = t.a - s.a;
    const Rational den = cross(d1, d2);
    if (den != 0) {
        Rational tp = cross(w, d2) / den;
        Rational up = cross(w, d1) / den;
        if (tp < 0 || tp > 1 || up < 0 || up > 1) return hit;
        hit.kind = HitKind::Point;
        hit.t0 = hit.t1 = tp;
        hit.u0 = hit.u1 = up;
        hit.p0 = hit.p1 = s.at(tp);
        return hit;
    }
    if (cross(w, d1) != 0) return hit;
    // Collinear: project the second segment onto the first.
    const Rational len1 = dot(d1, d1);
    Rational ta = dot(t.a - s.a, d1) / len1;
    Rational tb = dot(t.b - s.a, d1) / len1;
    Rational lo = std::max(Rational(0), std::min(ta, tb));
    Rational hi = std::min(Rational(1), std::max(ta, tb));
    if (lo > hi) return hit;
    const Rational len2 = dot(d2, d2);
    auto u_of = [&](const Vec2& p) { return Rational(dot(p - t.a, d2) / len2); };
    hit.p0 = s.at(lo);
    hit.p1 = s.at(hi);
    hit.t0 = lo;
    hit.t1 = hi;
    hit.u0 = u_of(hit.p0);
    hit.u1 = u_of(hit.p1);
    hit.kind = lo == hi ? HitKind::Point : HitKind::Overlap;
    return hit;
}

bool point_on_segment(const Vec2& p, const Segment& s) {
    if (cross(s.b - s.a, p - s.a) != 0) return false;
    Rational t = dot(p - s.a, s.b - s.a);
    return t >= 0 && t <= norm_sq(s.b - s.a);
}

Rational segment_parameter(const Segment& s, const Vec2& p) {
    const Vec2 d = s.direction();
    return dot(p - s.a, d) / norm_sq(d);
}

bool same_direction(const Vec2& a, const Vec2& b) { return cross(a, b) == 0 && dot(a, b) > 0; }

namespace {

// 0 for angles in [0, pi) measured from `ref`, 1 for [pi, 2pi).
int half_of(const Vec2& ref, const Vec2& v) {
    Rational c = cross(ref, v);
    if (c > 0) return 0;
    if (c == 0 && dot(ref, v) > 0) return 0;
    return 1;
}

// Angle of v measured counter-clockwise from ref is less than that of w.
bool angle_less(const Vec2& ref, const Vec2& v, const Vec2& w) {
    int hv = half_of(ref, v);
    int hw = half_of(ref, w);
    if (hv != hw) return hv < hw;
    return cross(v, w) > 0;
}

}  // namespace

bool strictly_ccw_between(const Vec2& from, const Vec2& x, const Vec2& to) {
    if (same_direction(from, x)) return false;
    if (same_direction(from, to)) return true;
    if (same_direction(x, to)) return false;
    return angle_less(from, x, to);
}

Rational signed_area2(std::span<const Vec2> poly) {
    Rational area;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        area += cross(poly[i], poly[(i + 1) % poly.size()]);
    }
    return area;
}

int winding_number(std::span<const Vec2> poly, const Vec2& p) {
    int wn = 0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % n];
        if (a.y <= p.y) {
            if (b.y > p.y && orientation(a, b, p) > 0) ++wn;
        } else {
            if (b.y <= p.y && orientation(a, b, p) < 0) --wn;
        }
    }
    return wn;
}

bool point_on_polygon_boundary(std::span<const Vec2> poly, const Vec2& p) {
    for (std::size_t i = 0; i < poly.size(); ++i) {
        if (point_on_segment(p, {poly[i], poly[(i + 1) % poly.size()]})) return true;
    }
    return false;
}

bool point_in_triangle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
    int o = orientation(a, b, c);
    if (o == 0) return point_on_segment(p, {a, b}) || point_on_segment(p, {b, c}) || point_on_segment(p, {a, c});
    int o1 = orientation(a, b, p) * o;
    int o2 = orientation(b, c, p) * o;
    int o3 = orientation(c, a, p) * o;
    return o1 >= 0 && o2 >= 0 && o3 >= 0;
}

Vec2 interior_point(std::span<const Vec2> poly) {
    const std::size_t n = poly.size();
    if (n < 3) throw InternalError("interior_point of a degenerate polygon");
    // The lowest (then leftmost) vertex is convex.
    std::size_t v = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (poly[i].y < poly[v].y || (poly[i].y == poly[v].y && poly[i].x < poly[v].x)) v = i;
    }
    const Vec2& pv = poly[v];
    const Vec2& pa = poly[(v + n - 1) % n];
    const Vec2& pb = poly[(v + 1) % n];
    // If the ear a-v-b contains other vertices, the one farthest from the chord
    // a-b sees v through the interior.
    std::optional<std::size_t> pick;
    Rational pick_height;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == v || i == (v + n - 1) % n || i == (v + 1) % n) continue;
        if (!point_in_triangle(poly[i], pa, pv, pb)) continue;
        Rational height = abs_value(cross(pb - pa, poly[i] - pa));
        if (!pick || height > pick_height) {
            pick = i;
            pick_height = height;
        }
    }
    if (!pick) return (pa + pv + pb) / Rational(3);
    return (pv + poly[*pick]) / Rational(2);
}

bool is_simple_polygon(std::span<const Vec2> poly) {
    const std::size_t n = poly.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        if (poly[i] == poly[(i + 1) % n]) return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        Segment si{poly[i], poly[(i + 1) % n]};
        for (std::size_t j = i + 1; j < n; ++j) {
            Segment sj{poly[j], poly[(j + 1) % n]};
            SegmentHit h = segment_intersect(si, sj);
            if (h.kind == HitKind::None) continue;
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (!adjacent || h.kind == HitKind::Overlap) return false;
            // Adjacent edges may only share their common vertex.
            const Vec2& shared = (j == i + 1) ? poly[j] : poly[i];
            if (h.p0 != shared) return false;
        }
    }
    return signed_area2(poly) != 0;
}

Vec2 complex_mul(const Vec2& a, const Vec2& b) {
    return {Rational(a.x * b.x - a.y * b.y), Rational(a.x * b.y + a.y * b.x)};
}

Vec2 complex_div(const Vec2& a, const Vec2& b) {
    Rational den = norm_sq(b);
    return {Rational((a.x * b.x + a.y * b.y) / den), Rational((a.y * b.x - a.x * b.y) / den)};
}

Vec2 Similarity::linear(const Vec2& v) const { return complex_mul(a, v); }

Similarity Similarity::inverse() const {
    Vec2 ia = complex_div(Vec2(1, 0), a);
    return {ia, -complex_mul(ia, b)};
}

Similarity compose(const Similarity& f, const Similarity& g) {
    return {complex_mul(f.a, g.a), complex_mul(f.a, g.b) + f.b};
}

Similarity similarity_from_pairs(const Vec2& p0, const Vec2& q0, const Vec2& p1, const Vec2& q1) {
    Vec2 a = complex_div(q1 - q0, p1 - p0);
    return {a, q0 - complex_mul(a, p0)};
}

Box box_of(const Segment& s) {
    double ax = to_double(s.a.x), ay = to_double(s.a.y), bx = to_double(s.b.x), by = to_double(s.b.y);
    return {std::min(ax, bx), std::min(ay, by), std::max(ax, bx), std::max(ay, by)};
}

double approx_point_segment_distance(const Vec2& p, const Segment& s) {
    double px = to_double(p.x), py = to_double(p.y);
    double ax = to_double(s.a.x), ay = to_double(s.a.y), bx = to_double(s.b.x), by = to_double(s.b.y);
    double dx = bx - ax, dy = by - ay;
    double len = dx * dx + dy * dy;
    double t = len > 0 ? ((px - ax) * dx + (py - ay) * dy) / len : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    double qx = ax + t * dx - px, qy = ay + t * dy - py;
    return std::sqrt(qx * qx + qy * qy);
}

double approx_segment_distance(const Segment& s, const Segment& t) {
    if (segment_intersect(s, t).kind != HitKind::None) return 0.0;
    return std::min({approx_point_segment_distance(s.a, t), approx_point_segment_distance(s.b, t),
                     approx_point_segment_distance(t.a, s), approx_point_segment_distance(t.b, s)});
}

Rational distance_sq(const Vec2& p, const Segment& s) {
    const Vec2 d = s.direction();
    Rational len = norm_sq(d);
    Rational t = dot(p - s.a, d) / len;
    if (t < 0) t = 0;
    if (t > 1) t = 1;
    return norm_sq(s.at(t) - p);
}

}  // namespace finecurve
