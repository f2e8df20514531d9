#include "support.hpp"

#include "finecurve/errors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fixtures {

using namespace finecurve;

Rational q(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Vec2 pt(long x, long y) { return Vec2(x, y); }
Vec2 pt(const Rational& x, const Rational& y) { return Vec2(x, y); }

namespace {

std::vector<Vec2> unit_square() { return {pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)}; }

std::vector<Vec2> square_hole(const Rational& cx, const Rational& cy, const Rational& side) {
    Rational h = side / 2;
    return {pt(cx - h, cy - h), pt(cx + h, cy - h), pt(cx + h, cy + h), pt(cx - h, cy + h)};
}

std::vector<std::vector<Vec2>> quarter_holes(int count) {
    const std::vector<std::pair<Rational, Rational>> centers = {
        {q(1, 4), q(1, 4)}, {q(3, 4), q(1, 4)}, {q(1, 4), q(3, 4)}, {q(3, 4), q(3, 4)}};
    std::vector<std::vector<Vec2>> holes;
    for (int k = 0; k < count; ++k) holes.push_back(square_hole(centers[k].first, centers[k].second, q(1, 8)));
    return holes;
}

Rational frac(const Rational& r) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return r - Rational(f);
}

// Integers (x, y) with p*y - q*x = 1.
std::pair<long, long> unit_cross(int p, int q) {
    // Extended gcd on (p, -q).
    long old_r = p, r = -q, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        long quo = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - quo * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - quo * s);
        std::tie(old_t, t) = std::make_pair(t, old_t - quo * t);
    }
    // old_s * p + old_t * (-q) = old_r = +-1
    long y = old_s, x = old_t;
    if (old_r < 0) {
        y = -y;
        x = -x;
    }
    return {x, y};
}

PolyCurve fold_closed(const Surface& s, std::vector<Vec2> pts) {
    // Move the start into the unit square.
    Vec2 shift = pts[0] - pt(frac(pts[0].x), frac(pts[0].y));
    for (Vec2& p : pts) p = p - shift;
    auto c = fold(s, CurveKind::Closed, pts);
    if (!c) throw std::runtime_error("generator polyline does not fold");
    Diagnostics d = validate_curve(s, *c);
    if (!d.ok) throw std::runtime_error("generator produced an invalid curve: " + d.message);
    return *c;
}

}  // namespace

Surface torus() {
    SurfaceSpec spec;
    spec.genus = 1;
    spec.boundary = 0;
    spec.polygon = unit_square();
    spec.identifications = {{0, 2, -1}, {1, 3, -1}};
    return build_surface(spec);
}

Surface s05() {
    SurfaceSpec spec;
    spec.genus = 0;
    spec.boundary = 5;
    spec.polygon = unit_square();
    spec.holes = quarter_holes(4);
    return build_surface(spec);
}

Surface s04() {
    SurfaceSpec spec;
    spec.genus = 0;
    spec.boundary = 4;
    spec.polygon = unit_square();
    spec.holes = quarter_holes(3);
    return build_surface(spec);
}

Surface s12() {
    SurfaceSpec spec;
    spec.genus = 1;
    spec.boundary = 2;
    spec.polygon = unit_square();
    spec.identifications = {{0, 2, -1}, {1, 3, -1}};
    spec.holes = {square_hole(q(1, 4), q(1, 4), q(1, 8)), square_hole(q(3, 4), q(5, 8), q(1, 8))};
    return build_surface(spec);
}

Surface s11() {
    SurfaceSpec spec;
    spec.genus = 1;
    spec.boundary = 1;
    spec.polygon = unit_square();
    spec.identifications = {{0, 2, -1}, {1, 3, -1}};
    spec.holes = {square_hole(q(1, 2), q(1, 2), q(1, 8))};
    return build_surface(spec);
}

Surface octagon() {
    SurfaceSpec spec;
    spec.genus = 2;
    spec.boundary = 0;
    spec.polygon = {pt(1, 0), pt(2, 0), pt(3, 1), pt(3, 2), pt(2, 3), pt(1, 3), pt(0, 2), pt(0, 1)};
    spec.identifications = {{0, 2, -1}, {1, 3, -1}, {4, 6, -1}, {5, 7, -1}};
    return build_surface(spec);
}

PolyCurve curve(const Surface& s, CurveKind kind, const std::vector<Vec2>& waypoints) {
    return curve_from_waypoints(s, kind, waypoints);
}

PolyCurve torus_polyline(const Surface& s, const std::vector<Vec2>& pts) { return fold_closed(s, pts); }

PolyCurve torus_line(const Surface& s, int p, int qq, const Rational& offset) {
    // Points on the line satisfy p*y - q*x = offset.
    Vec2 base;
    if (p != 0) {
        Rational x0 = q(1, 7);
        base = pt(x0, frac((offset + qq * x0) / p));
    } else {
        Rational y0 = q(1, 7);
        base = pt(frac(-offset / qq), y0);
    }
    return fold_closed(s, {base, base + pt(p, qq)});
}

int torus_intersection_number(int p, int qq, int r, int s) { return std::abs(p * s - qq * r); }

WigglePair wiggled_pair(const Surface& s, const WiggleSpec& spec) {
    const Vec2 d = pt(spec.p, spec.q);
    const Vec2 dt = pt(spec.r, spec.s);
    const long delta = static_cast<long>(spec.r) * spec.q - static_cast<long>(spec.s) * spec.p;
    WigglePair out;
    out.target = torus_line(s, spec.r, spec.s, q(1, 2));
    std::vector<Vec2> pts;
    if (delta != 0) {
        // cross(d, b) = 1/2 and cross(dt, b) = 0.
        long det = static_cast<long>(spec.p) * spec.s - static_cast<long>(spec.q) * spec.r;
        Vec2 b = pt(q(spec.r, 2 * det), q(spec.s, 2 * det));
        const long ad = std::abs(delta);
        std::vector<Rational> ts;
        for (long k = -ad - 1; k <= ad + 1; ++k) {
            Rational t = q(2 * k + 1, 2 * delta);
            if (t >= 0 && t < 1) ts.push_back(t);
        }
        std::sort(ts.begin(), ts.end());
        pts.push_back(b);
        for (std::size_t j = 0; j < ts.size(); ++j) {
            int z = j < spec.zigs.size() ? spec.zigs[j] : 0;
            if (z <= 0) continue;
            const long jj = 2 * z + 1;
            Rational h = q(1, 8 * ad);
            Rational w = q(1, 4 * (jj + 1) * ad);
            if (spec.flip) w = -w;
            Vec2 x = b + ts[j] * d;
            auto at = [&](const Rational& a, const Rational& c) { return x + a * d + c * dt; };
            pts.push_back(at(-2 * h, 0));
            for (long i = 1; i <= jj; ++i) pts.push_back(at(i % 2 == 1 ? h : Rational(-h), i * w));
            pts.push_back(at(3 * h, 0));
        }
        pts.push_back(b + d);
    } else {
        auto [mx, my] = unit_cross(spec.p, spec.q);
        Vec2 m = pt(mx, my);
        int fingers = std::accumulate(spec.zigs.begin(), spec.zigs.end(), 0);
        Rational start = spec.flip ? q(1, 4) : q(3, 4);
        Rational depth = spec.flip ? q(1, 2) : q(-1, 2);
        Vec2 b = start * m;
        pts.push_back(b);
        for (int j = 0; j < fingers; ++j) {
            Rational t = q(2 * j + 1, 2 * fingers);
            Rational width = q(1, 4 * fingers);
            Vec2 x = b + t * d;
            pts.push_back(x);
            pts.push_back(x + depth * m);
            pts.push_back(x + depth * m + width * d);
            pts.push_back(x + width * d);
        }
        pts.push_back(b + d);
    }
    // A small generic shift keeps zig-zag corners off the polygon edges.
    const Vec2 shift = pt(q(7, 1 << 20), q(3, 1 << 19));
    for (Vec2& p : pts) p = p + shift;
    out.wiggled = fold_closed(s, pts);
    return out;
}

std::pair<int, int> random_primitive(std::mt19937_64& rng, int bound) {
    std::uniform_int_distribution<int> dist(-bound, bound);
    for (;;) {
        int p = dist(rng), qq = dist(rng);
        if (std::gcd(std::abs(p), std::abs(qq)) == 1) return {p, qq};
    }
}

PolyCurve random_torus_curve(const Surface& s, std::mt19937_64& rng, int p, int qq, const Rational& offset,
                             int fingers) {
    const Vec2 d = pt(p, qq);
    auto [mx, my] = unit_cross(p, qq);
    Vec2 m = pt(mx, my);
    // g(x) = cross(d, x) is offset on the base line; corners sit at integers.
    Vec2 b = offset * m;
    std::vector<Vec2> pts{b};
    std::uniform_int_distribution<int> depth_dist(1, 15);
    for (int j = 0; j < fingers; ++j) {
        Rational t = q(4 * j + 1, 4 * fingers);
        Rational width = q(1, 4 * fingers) * q(1 + depth_dist(rng) % 3, 4);
        Rational target = q(depth_dist(rng), 16) + q(1, 64);
        Rational depth = target - offset;
        if (depth == 0) continue;
        Vec2 x = b + t * d;
        pts.push_back(x);
        pts.push_back(x + depth * m);
        pts.push_back(x + depth * m + width * d);
        pts.push_back(x + width * d);
    }
    pts.push_back(b + d);
    return fold_closed(s, pts);
}

namespace {

struct BoundaryPiece {
    Vec2 a, b;
    int component;
};

std::vector<BoundaryPiece> boundary_pieces(const Surface& s) {
    std::vector<BoundaryPiece> out;
    for (int k = 0; k < s.edge_count(); ++k) {
        if (!s.identified(k)) out.push_back({s.edge(k).a, s.edge(k).b, s.edge_component[k]});
    }
    for (std::size_t h = 0; h < s.holes.size(); ++h) {
        const auto& hole = s.holes[h];
        for (std::size_t e = 0; e < hole.size(); ++e) {
            out.push_back({hole[e], hole[(e + 1) % hole.size()], s.outer_components + static_cast<int>(h)});
        }
    }
    return out;
}

}  // namespace

std::vector<PolyCurve> random_arcs(const Surface& s, std::mt19937_64& rng, int count) {
    auto pieces = boundary_pieces(s);
    std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
    std::uniform_int_distribution<int> param(1, 62);
    std::uniform_int_distribution<int> shift(-1, 1);
    std::uniform_int_distribution<int> bend(3, 60);
    std::vector<PolyCurve> out;
    for (int guard = 0; static_cast<int>(out.size()) < count && guard < 20000; ++guard) {
        const BoundaryPiece& pa = pieces[pick(rng)];
        const BoundaryPiece& pb = pieces[pick(rng)];
        Vec2 a = pa.a + q(param(rng), 64) * (pa.b - pa.a);
        Vec2 b = pb.a + q(param(rng), 64) * (pb.b - pb.a);
        std::optional<PolyCurve> c;
        if (s.has_identifications()) {
            Vec2 far = b + pt(shift(rng), shift(rng));
            if (far == a) continue;
            if (pa.component == pb.component && far == b) continue;
            c = fold(s, CurveKind::Arc, {a, far});
        } else {
            if (pa.component == pb.component) continue;
            if (guard % 3 == 0) {
                Vec2 mid = pt(q(bend(rng), 64), q(bend(rng), 64));
                c = fold(s, CurveKind::Arc, {a, mid, b});
            } else {
                c = fold(s, CurveKind::Arc, {a, b});
            }
        }
        if (!c || !validate_curve(s, *c).ok) continue;
        bool fresh = std::none_of(out.begin(), out.end(), [&](const PolyCurve& o) { return o == *c; });
        if (fresh) out.push_back(*c);
    }
    return out;
}

}  // namespace fixtures
