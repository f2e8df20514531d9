#include "finecurve/intersection.hpp"

#include "finecurve/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace finecurve {

namespace {

struct Piece {
    Rational ua, ub;
    Rational va, vb;
};

Rational floor_of(const Rational& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return Rational(q);
}

Rational curve_length(const PolyCurve& c) { return Rational(static_cast<long>(c.segs.size())); }

// Endpoints on identified edges, keyed by canonical point.
std::multimap<Vec2, Rational, Vec2Less> glued_ends(const Surface& s, const PolyCurve& c) {
    std::multimap<Vec2, Rational, Vec2Less> out;
    for (std::size_t k = 0; k < c.segs.size(); ++k) {
        for (int end = 0; end < 2; ++end) {
            const Vec2& p = end == 0 ? c.segs[k].a : c.segs[k].b;
            auto e = s.polygon_edge_of(p);
            if (!e || !s.identified(*e)) continue;
            out.emplace(s.canonical(p), Rational(static_cast<long>(k + end)));
        }
    }
    return out;
}

std::vector<Piece> collect_pieces(const Surface& s, const PolyCurve& u, const PolyCurve& v, bool stop_at_first) {
    std::vector<Piece> pieces;
    std::vector<Box> vboxes;
    vboxes.reserve(v.segs.size());
    for (const Segment& seg : v.segs) vboxes.push_back(box_of(seg));
    for (std::size_t i = 0; i < u.segs.size(); ++i) {
        Box ub = box_of(u.segs[i]);
        for (std::size_t j = 0; j < v.segs.size(); ++j) {
            if (!ub.overlaps(vboxes[j], 1e-9)) continue;
            SegmentHit hit = segment_intersect(u.segs[i], v.segs[j]);
            if (hit.kind == HitKind::None) continue;
            Rational ri(static_cast<long>(i));
            Rational rj(static_cast<long>(j));
            pieces.push_back({ri + hit.t0, ri + hit.t1, rj + hit.u0, rj + hit.u1});
            if (stop_at_first) return pieces;
        }
    }
    auto ue = glued_ends(s, u);
    if (ue.empty()) return pieces;
    auto ve = glued_ends(s, v);
    for (const auto& [point, up] : ue) {
        auto [lo, hi] = ve.equal_range(point);
        for (auto it = lo; it != hi; ++it) {
            pieces.push_back({up, up, it->second, it->second});
            if (stop_at_first) return pieces;
        }
    }
    return pieces;
}

bool contains_end(const PolyCurve& c, const Rational& a, const Rational& b) {
    if (c.closed()) return false;
    Rational lo = std::min(a, b);
    Rational hi = std::max(a, b);
    return lo == 0 || hi == curve_length(c);
}

Vec2 leaving_ray(const LocalRays& r, const Vec2& along) {
    if (r.back && !same_direction(*r.back, along)) {
        if (!r.ahead || same_direction(*r.ahead, along)) return *r.back;
    }
    if (r.ahead && !same_direction(*r.ahead, along)) return *r.ahead;
    throw InternalError("interval component has no leaving strand");
}

Contact classify_point(const Surface& s, const PolyCurve& u, const PolyCurve& v, const IntersectionComponent& c) {
    LocalRays ru = rays_at(s, u, c.u_start);
    LocalRays rv = rays_at(s, v, c.v_start);
    if (!ru.back || !ru.ahead || !rv.back || !rv.ahead) return Contact::Touching;
    bool first = strictly_ccw_between(*rv.back, *ru.back, *rv.ahead);
    bool second = strictly_ccw_between(*rv.back, *ru.ahead, *rv.ahead);
    return first != second ? Contact::Crossing : Contact::Touching;
}

Contact classify_interval(const Surface& s, const PolyCurve& u, const PolyCurve& v, const IntersectionComponent& c) {
    LocalRays ua = rays_at(s, u, c.u_start);
    LocalRays ub = rays_at(s, u, c.u_end);
    if (!ua.back || !ua.ahead || !ub.back || !ub.ahead) return Contact::Touching;
    const Vec2& wa = *ua.ahead;
    const Vec2& wb = *ub.back;
    Vec2 va = leaving_ray(rays_at(s, v, c.v_start), wa);
    Vec2 vb = leaving_ray(rays_at(s, v, c.v_end), wb);
    bool side_a = strictly_ccw_between(wa, *ua.back, va);
    bool side_b = strictly_ccw_between(vb, *ub.ahead, wb);
    return side_a != side_b ? Contact::Crossing : Contact::Touching;
}

}  // namespace

bool IntersectionReport::transverse() const {
    if (identical) return false;
    return std::all_of(components.begin(), components.end(),
                       [](const IntersectionComponent& c) { return !c.interval && c.contact == Contact::Crossing; });
}

Rational wrap_param(const PolyCurve& c, const Rational& p) {
    if (c.closed() && p == curve_length(c)) return Rational(0);
    return p;
}

LocalRays rays_at(const Surface& s, const PolyCurve& c, const Rational& param) {
    const long n = static_cast<long>(c.segs.size());
    Rational p = wrap_param(c, param);
    Rational k = floor_of(p);
    long ki = k.get_num().get_si();
    LocalRays out;
    if (p != k) {
        const Segment& seg = c.segs[ki];
        out.point = s.canonical(seg.at(p - k));
        out.ahead = seg.direction();
        out.back = -seg.direction();
        return out;
    }
    auto to_canonical = [&](const Vec2& chart, const Vec2& ray) {
        Vec2 canon = s.canonical(chart);
        out.point = canon;
        if (canon == chart) return ray;
        auto e = s.polygon_edge_of(chart);
        return s.glue[*e].linear(ray);
    };
    if (ki > 0 || c.closed()) {
        const Segment& prev = c.segs[(ki + n - 1) % n];
        out.back = to_canonical(prev.b, -prev.direction());
    }
    if (ki < n) {
        const Segment& next = c.segs[ki];
        out.ahead = to_canonical(next.a, next.direction());
    }
    return out;
}

IntersectionReport intersect_curves(const Surface& s, const PolyCurve& u, const PolyCurve& v) {
    IntersectionReport report;
    std::vector<Piece> pieces = collect_pieces(s, u, v, false);
    if (pieces.empty()) return report;
    const Rational nu = curve_length(u);
    for (Piece& p : pieces) {
        if (u.closed() && p.ua == nu) p.ua = p.ub = 0;
        p.va = wrap_param(v, p.va);
        p.vb = wrap_param(v, p.vb);
    }
    std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
        if (a.ua != b.ua) return a.ua < b.ua;
        return a.ub < b.ub;
    });
    std::vector<Piece> merged;
    for (const Piece& p : pieces) {
        if (!merged.empty() && p.ua <= merged.back().ub) {
            if (p.ub > merged.back().ub) {
                merged.back().ub = p.ub;
                merged.back().vb = p.vb;
            }
        } else {
            merged.push_back(p);
        }
    }
    if (merged.size() == 1 && merged[0].ua == 0 && merged[0].ub == nu) {
        report.identical = true;
        return report;
    }
    bool wraps = false;
    if (u.closed() && merged.size() >= 2 && merged.front().ua == 0 && merged.back().ub == nu) {
        merged.front().ua = merged.back().ua;
        merged.front().va = merged.back().va;
        merged.pop_back();
        wraps = true;
    }
    std::set<Vec2, Vec2Less> problems;
    for (std::size_t idx = 0; idx < merged.size(); ++idx) {
        const Piece& p = merged[idx];
        IntersectionComponent c;
        c.u_start = wrap_param(u, p.ua);
        c.u_end = wrap_param(u, p.ub);
        c.v_start = p.va;
        c.v_end = p.vb;
        c.interval = p.ua != p.ub || (wraps && idx == 0);
        c.start = rays_at(s, u, c.u_start).point;
        c.end = c.interval ? rays_at(s, u, c.u_end).point : c.start;
        if (contains_end(u, p.ua, p.ub) || contains_end(v, p.va, p.vb)) {
            c.contact = Contact::Touching;
        } else {
            c.contact = c.interval ? classify_interval(s, u, v, c) : classify_point(s, u, v, c);
        }
        if (c.contact == Contact::Crossing) ++report.crossing_count;
        problems.insert(c.start);
        problems.insert(c.end);
        report.components.push_back(std::move(c));
    }
    report.problem_set.assign(problems.begin(), problems.end());
    return report;
}

bool curves_disjoint(const Surface& s, const PolyCurve& u, const PolyCurve& v) {
    return collect_pieces(s, u, v, true).empty();
}

std::vector<Vec2> problem_set(const Surface& s, const std::vector<PolyCurve>& curves) {
    std::set<Vec2, Vec2Less> out;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        for (std::size_t j = i + 1; j < curves.size(); ++j) {
            IntersectionReport r = intersect_curves(s, curves[i], curves[j]);
            out.insert(r.problem_set.begin(), r.problem_set.end());
        }
    }
    return {out.begin(), out.end()};
}

}  // namespace finecurve
