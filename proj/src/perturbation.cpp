#include "finecurve/perturbation.hpp"

#include "finecurve/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace finecurve {

namespace {

constexpr int kMaxHalvings = 48;

Vec2 l1_normalized(const Vec2& v) { return v / norm_l1(v); }

// Offset direction at a vertex with incoming a and outgoing b, pointing to the
// left of both adjacent segments.
Vec2 left_normal(const Vec2& a, const Vec2& b) {
    Vec2 ah = l1_normalized(a);
    Vec2 bh = l1_normalized(b);
    Rational turn = cross(a, b);
    if (turn == 0) return rot90(ah);
    Vec2 n = turn > 0 ? bh - ah : ah - bh;
    return l1_normalized(n);
}

struct Obstacle {
    Vec2 p;
    double x, y;
};

std::vector<Obstacle> local_obstacles(const Surface& s) {
    std::vector<Vec2> base(s.polygon.begin(), s.polygon.end());
    for (const auto& hole : s.holes) base.insert(base.end(), hole.begin(), hole.end());
    std::vector<Obstacle> out;
    for (const Similarity& m : neighbourhood_maps(s)) {
        for (const Vec2& p : base) {
            Vec2 q = m.apply(p);
            out.push_back({q, to_double(q.x), to_double(q.y)});
        }
    }
    return out;
}

bool quad_hits_obstacle(const std::vector<Obstacle>& obstacles, const Similarity& to_local, const Vec2& p0,
                        const Vec2& p1, const Vec2& q1, const Vec2& q0) {
    Vec2 a = to_local.apply(p0);
    Vec2 b = to_local.apply(p1);
    Vec2 c = to_local.apply(q1);
    Vec2 d = to_local.apply(q0);
    double xmin = std::numeric_limits<double>::infinity(), ymin = xmin, xmax = -xmin, ymax = -xmin;
    for (const Vec2* v : {&a, &b, &c, &d}) {
        double x = to_double(v->x), y = to_double(v->y);
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    const double m = 1e-9;
    for (const Obstacle& o : obstacles) {
        if (o.x < xmin - m || o.x > xmax + m || o.y < ymin - m || o.y > ymax + m) continue;
        if (point_in_triangle(o.p, a, b, c) || point_in_triangle(o.p, a, c, d) || point_in_triangle(o.p, a, b, d) ||
            point_in_triangle(o.p, b, c, d)) {
            return true;
        }
    }
    return false;
}

Vec2 boundary_direction(const Surface& s, const Vec2& p) {
    Locus loc = s.locate(p);
    if (loc.kind == LocusKind::PolygonEdge) return s.edge(loc.index).direction();
    if (loc.kind == LocusKind::HoleEdge) {
        const auto& hole = s.holes[loc.index];
        return hole[(loc.edge + 1) % hole.size()] - hole[loc.edge];
    }
    throw ContractError("arc endpoint is not on the boundary");
}

// Slide a boundary point along its edge to the requested side of `dir`.
std::optional<Vec2> slide_endpoint(const Surface& s, const Vec2& p, const Vec2& dir, Side side, const Rational& d) {
    Locus before = s.locate(p);
    Vec2 e = boundary_direction(s, p);
    Rational c = cross(dir, e);
    bool want_left = side == Side::Left;
    if ((c > 0) != want_left) e = -e;
    Vec2 q = p + d * l1_normalized(e);
    Locus after = s.locate(q);
    if (after.kind != before.kind || after.index != before.index || after.edge != before.edge) return std::nullopt;
    return q;
}

bool locally_left(const Vec2& a, const Vec2& b, const Vec2& v, const Vec2& q, Side side) {
    Vec2 r = q - v;
    int want = side == Side::Left ? 1 : -1;
    return sign(cross(a, r)) == want && sign(cross(b, r)) == want;
}

double approx_curve_distance(const PolyCurve& a, const PolyCurve& b) {
    double best = std::numeric_limits<double>::infinity();
    for (const Segment& x : a.segs) {
        Box bx = box_of(x);
        for (const Segment& y : b.segs) {
            Box by = box_of(y);
            double gap = std::max({by.xmin - bx.xmax, bx.xmin - by.xmax, by.ymin - bx.ymax, bx.ymin - by.ymax, 0.0});
            if (gap >= best) continue;
            best = std::min(best, approx_segment_distance(x, y));
        }
    }
    return best;
}

int total_crossings(const Surface& s, const PolyCurve& c, const std::vector<PolyCurve>& family) {
    int total = 0;
    for (const PolyCurve& g : family) total += static_cast<int>(intersect_curves(s, c, g).components.size());
    return total;
}

}  // namespace

std::vector<Similarity> neighbourhood_maps(const Surface& s) {
    std::vector<Similarity> out{Similarity::identity()};
    std::vector<Similarity> hops;
    for (int e = 0; e < s.edge_count(); ++e) {
        if (s.identified(e)) hops.push_back(s.glue[e].inverse());
    }
    std::size_t first_ring = 0;
    for (int depth = 0; depth < 2; ++depth) {
        std::size_t end = out.size();
        for (std::size_t i = first_ring; i < end; ++i) {
            for (const Similarity& h : hops) {
                Similarity m = compose(out[i], h);
                if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
            }
        }
        first_ring = end;
    }
    return out;
}

Rational surface_distance_sq(const Surface& s, const Vec2& p, const Vec2& q) {
    Rational best = -1;
    for (const Similarity& m : neighbourhood_maps(s)) {
        Vec2 d = m.apply(q) - p;
        Rational r = dot(d, d);
        if (best < 0 || r < best) best = r;
    }
    return best;
}

std::optional<PolyCurve> offset_curve(const Surface& s, const PolyCurve& c, Side side, const Rational& d) {
    Development dev = develop(s, c);
    const std::size_t n = c.segs.size();
    std::vector<Vec2> xs;
    // Segment index and placing map for the piece between xs[k] and xs[k+1].
    std::vector<Similarity> piece_maps;
    Vec2 mid;
    if (c.closed()) {
        mid = (c.segs[0].a + c.segs[0].b) / Rational(2);
        xs.push_back(mid);
        for (std::size_t k = 1; k <= n; ++k) xs.push_back(dev.points[k]);
        xs.push_back(dev.holonomy.apply(mid));
        for (std::size_t k = 0; k < n; ++k) piece_maps.push_back(dev.maps[k]);
        piece_maps.push_back(dev.holonomy);
    } else {
        xs = dev.points;
        piece_maps = dev.maps;
    }
    const std::size_t m = xs.size();
    Rational grid = d / Rational(1 << 16);
    std::vector<Vec2> qs(m);
    for (std::size_t k = 0; k < m; ++k) {
        bool first = k == 0;
        bool last = k + 1 == m;
        if (c.closed() && last) {
            qs[k] = dev.holonomy.apply(qs[0]);
            continue;
        }
        if (!c.closed() && first) {
            auto q = slide_endpoint(s, xs[0], xs[1] - xs[0], side, d);
            if (!q) return std::nullopt;
            qs[k] = *q;
            continue;
        }
        if (!c.closed() && last) {
            const Segment& seg = c.segs.back();
            const Similarity& place = dev.maps.back();
            auto q = slide_endpoint(s, seg.b, seg.direction(), side, d);
            if (!q) return std::nullopt;
            qs[k] = place.apply(*q);
            continue;
        }
        Vec2 a = first ? xs[1] - xs[0] : xs[k] - xs[k - 1];
        Vec2 b = xs[k + 1] - xs[k];
        Vec2 nrm = left_normal(a, b);
        if (side == Side::Right) nrm = -nrm;
        Vec2 q = xs[k] + d * nrm;
        Vec2 snapped = snap_to_grid(q, grid);
        qs[k] = locally_left(a, b, xs[k], snapped, side) ? snapped : q;
    }

    auto folded = fold(s, c.kind, qs);
    if (!folded) return std::nullopt;
    if (!validate_curve(s, *folded).ok) return std::nullopt;
    if (!curves_disjoint(s, c, *folded)) return std::nullopt;

    std::vector<Obstacle> obstacles = local_obstacles(s);
    for (std::size_t k = 0; k + 1 < m; ++k) {
        Similarity to_local = piece_maps[std::min(k, piece_maps.size() - 1)].inverse();
        if (quad_hits_obstacle(obstacles, to_local, xs[k], xs[k + 1], qs[k + 1], qs[k])) return std::nullopt;
    }
    return folded;
}

Rational initial_offset(const Surface& s, const PolyCurve& c, const std::vector<PolyCurve>& avoid) {
    double feature = 0.25;
    const std::size_t n = c.segs.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Segment& si = c.segs[i];
        Box bi = box_of(si);
        for (std::size_t j = i + 1; j < n; ++j) {
            bool adjacent = (j == i + 1 && si.b == c.segs[j].a) || (c.closed() && i == 0 && j == n - 1);
            if (adjacent) continue;
            Box bj = box_of(c.segs[j]);
            if (!bi.overlaps(bj, feature)) continue;
            feature = std::min(feature, approx_segment_distance(si, c.segs[j]));
        }
        for (const Vec2& corner : s.polygon) feature = std::min(feature, approx_point_segment_distance(corner, si));
        for (const auto& hole : s.holes) {
            for (std::size_t e = 0; e < hole.size(); ++e) {
                Segment he{hole[e], hole[(e + 1) % hole.size()]};
                if (segment_intersect(si, he).kind != HitKind::None) {
                    feature = std::min(feature, approx_point_segment_distance(hole[e], si));
                    continue;
                }
                feature = std::min(feature, approx_segment_distance(si, he));
            }
        }
        // Strands that are close only across an identified edge.
        for (const Vec2* p : {&si.a, &si.b}) {
            auto e = s.polygon_edge_of(*p);
            if (!e || !s.identified(*e)) continue;
            Vec2 image = s.glue[*e].apply(*p);
            for (std::size_t j = 0; j < n; ++j) {
                const Segment& sj = c.segs[j];
                if (sj.a == image || sj.b == image) continue;
                feature = std::min(feature, approx_point_segment_distance(image, sj));
            }
        }
    }
    for (const PolyCurve& other : avoid) feature = std::min(feature, approx_curve_distance(c, other));
    double target = feature / 4;
    if (!(target > 0)) target = 1e-12;
    Rational guess(target);
    return dyadic_floor(guess);
}

std::optional<Pushoff> try_pushoff(const Surface& s, const PolyCurve& c, Side side, const Rational& d,
                                   const std::vector<PolyCurve>& avoid, const CurveTest& accept) {
    Rational dist = d;
    for (int attempt = 0; attempt < kMaxHalvings; ++attempt, dist /= 2) {
        auto out = offset_curve(s, c, side, dist);
        if (!out) continue;
        bool clear = std::all_of(avoid.begin(), avoid.end(),
                                 [&](const PolyCurve& other) { return curves_disjoint(s, *out, other); });
        if (!clear) continue;
        if (accept && !accept(*out)) continue;
        return Pushoff{std::move(*out), dist};
    }
    return std::nullopt;
}

Pushoff pushoff(const Surface& s, const PolyCurve& c, Side side, const Rational& d, const std::vector<PolyCurve>& avoid,
                const CurveTest& accept) {
    auto out = try_pushoff(s, c, side, d, avoid, accept);
    if (!out) throw InternalError("no pushoff found even at tiny distances");
    return std::move(*out);
}

TubularRegion tubular_region(const Surface& s, const PolyCurve& c, const Rational& r) {
    require_valid(s, c, "core");
    if (r <= 0) throw ContractError("radius must be positive");
    TubularRegion region;
    region.core = c;
    region.shape = c.closed() ? RegionShape::Annulus : RegionShape::Strip;
    Rational rad = r;
    for (int attempt = 0; attempt < kMaxHalvings; ++attempt, rad /= 2) {
        auto left = offset_curve(s, c, Side::Left, rad);
        if (!left) continue;
        auto right = offset_curve(s, c, Side::Right, rad);
        if (!right) continue;
        if (!curves_disjoint(s, *left, *right)) continue;
        region.radius = rad;
        region.left = std::move(*left);
        region.right = std::move(*right);
        return region;
    }
    throw InternalError("tubular region does not embed at any tested radius");
}

bool within_distance(const Surface& s, const PolyCurve& core, const PolyCurve& curve, const Rational& eps) {
    const Rational eps2 = eps * eps;
    std::vector<Segment> placed;
    for (const Similarity& m : neighbourhood_maps(s)) {
        for (const Segment& seg : core.segs) placed.push_back({m.apply(seg.a), m.apply(seg.b)});
    }
    std::vector<Box> boxes;
    for (const Segment& seg : placed) boxes.push_back(box_of(seg));
    const double reach = to_double(eps) + 1e-9;
    for (const Segment& seg : curve.segs) {
        for (const Vec2* p : {&seg.a, &seg.b}) {
            double px = to_double(p->x), py = to_double(p->y);
            bool near = false;
            for (std::size_t i = 0; i < placed.size() && !near; ++i) {
                const Box& b = boxes[i];
                if (px < b.xmin - reach || px > b.xmax + reach || py < b.ymin - reach || py > b.ymax + reach) continue;
                if (distance_sq(*p, placed[i]) <= eps2) near = true;
            }
            if (!near) return false;
        }
    }
    return true;
}

bool transverse_or_disjoint(const Surface& s, const PolyCurve& a, const PolyCurve& b) {
    IntersectionReport r = intersect_curves(s, a, b);
    return r.transverse();
}

PolyCurve perturb(const Surface& s, const PolyCurve& y, const std::vector<PolyCurve>& family, const Rational& eps) {
    require_valid(s, y, "target");
    for (const PolyCurve& g : family) require_valid(s, g, "family member");
    if (eps <= 0) throw ContractError("epsilon must be positive");
    Rational d = std::min(Rational(eps / 2), initial_offset(s, y));
    for (int attempt = 0; attempt < kMaxHalvings; ++attempt, d /= 2) {
        std::optional<PolyCurve> best;
        int best_count = 0;
        for (Side side : {Side::Left, Side::Right}) {
            auto out = offset_curve(s, y, side, d);
            if (!out) continue;
            bool ok = std::all_of(family.begin(), family.end(),
                                  [&](const PolyCurve& g) { return transverse_or_disjoint(s, *out, g); });
            if (!ok || !within_distance(s, y, *out, eps)) continue;
            int count = total_crossings(s, *out, family);
            if (!best || count < best_count) {
                best = std::move(out);
                best_count = count;
            }
        }
        if (best) return std::move(*best);
    }
    throw InternalError("perturbation failed at every tested distance");
}

PolyCurve region_representative(const Surface& s, const TubularRegion& region, const std::vector<PolyCurve>& family) {
    bool ok = std::all_of(family.begin(), family.end(),
                          [&](const PolyCurve& g) { return transverse_or_disjoint(s, region.core, g); });
    if (ok) return region.core;
    return perturb(s, region.core, family, region.radius);
}

std::vector<PolyCurve> pushoff_family(const Surface& s, const std::vector<PolyCurve>& family) {
    for (const PolyCurve& g : family) require_valid(s, g, "family member");
    const std::size_t n = family.size();
    std::vector<std::vector<bool>> apart(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            apart[i][j] = apart[j][i] = curves_disjoint(s, family[i], family[j]);
        }
    }
    std::vector<PolyCurve> out;
    if (n == 0) return out;
    out.push_back(family[0]);
    for (std::size_t i = 1; i < n; ++i) {
        std::vector<PolyCurve> avoid;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || !apart[i][j]) continue;
            avoid.push_back(family[j]);
            if (j < i) avoid.push_back(out[j]);
        }
        auto accept = [&](const PolyCurve& cand) {
            for (std::size_t j = 0; j < i; ++j) {
                if (!apart[i][j] && !transverse_or_disjoint(s, cand, out[j])) return false;
            }
            return true;
        };
        Rational d = initial_offset(s, family[i], avoid);
        std::optional<Pushoff> found;
        for (int attempt = 0; attempt < kMaxHalvings && !found; ++attempt, d /= 2) {
            for (Side side : {Side::Left, Side::Right}) {
                auto cand = offset_curve(s, family[i], side, d);
                if (!cand) continue;
                bool clear = std::all_of(avoid.begin(), avoid.end(),
                                         [&](const PolyCurve& o) { return curves_disjoint(s, *cand, o); });
                if (!clear || !accept(*cand)) continue;
                found = Pushoff{std::move(*cand), d};
                break;
            }
        }
        if (!found) throw InternalError("pushoff family construction failed");
        out.push_back(std::move(found->curve));
    }
    return out;
}

}  // namespace finecurve
