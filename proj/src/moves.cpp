#include "finecurve/moves.hpp"

#include "finecurve/errors.hpp"
#include "finecurve/topology.hpp"

#include <algorithm>

namespace finecurve {

namespace {

constexpr int kMaxHalvings = 48;

struct Cross {
    Rational u, v;
    Vec2 at;
};

std::vector<Cross> crossings_of(const Surface& s, const PolyCurve& u, const PolyCurve& v, const char* what) {
    IntersectionReport r = intersect_curves(s, u, v);
    if (r.identical || !r.transverse()) throw ContractError(std::string(what) + " meets the target in a touching or overlapping component");
    std::vector<Cross> out;
    for (const auto& c : r.components) out.push_back({c.u_start, c.v_start, c.start});
    return out;
}

// Strictly inside the forward parameter interval from a to b of a closed curve.
bool strictly_between(const PolyCurve& c, const Rational& a, const Rational& b, const Rational& x) {
    const Rational n(static_cast<long>(c.size()));
    Rational len = b - a;
    if (len <= 0) len += n;
    Rational off = x - a;
    if (off < 0) off += n;
    return off > 0 && off < len;
}

const Cross& nearest(const Surface& s, const std::vector<Cross>& xs, const Vec2& p) {
    std::size_t best = 0;
    Rational best_d = -1;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Rational d = surface_distance_sq(s, p, xs[i].at);
        if (best_d < 0 || d < best_d) {
            best = i;
            best_d = d;
        }
    }
    return xs[best];
}

bool same_class(const Surface& s, const PolyCurve& a, const PolyCurve& b) {
    try {
        return collapse_map_f(s, a) == collapse_map_f(s, b);
    } catch (const UnsupportedSurface&) {
        return true;
    }
}

PolyCurve joined(CurveKind kind, std::vector<Segment> first, const std::vector<Segment>& second) {
    first.insert(first.end(), second.begin(), second.end());
    return simplify(PolyCurve{kind, std::move(first)});
}

bool lex_waypoints_less(const Surface& s, const PolyCurve& a, const PolyCurve& b) {
    auto wa = curve_waypoints(s, a);
    auto wb = curve_waypoints(s, b);
    return std::lexicographical_compare(wa.begin(), wa.end(), wb.begin(), wb.end(), Vec2Less{});
}

}  // namespace

std::vector<Segment> sub_path(const PolyCurve& c, const Rational& from, const Rational& to) {
    const Rational n(static_cast<long>(c.size()));
    Rational end = to;
    if (c.closed() && end <= from) end += n;
    if (end < from) throw InternalError("sub-path parameters out of order");
    std::vector<Segment> out;
    Rational cur = from;
    while (cur < end) {
        mpz_class whole;
        mpz_fdiv_q(whole.get_mpz_t(), cur.get_num_mpz_t(), cur.get_den_mpz_t());
        Rational base(whole);
        Rational stop = std::min(end, Rational(base + 1));
        long k = whole.get_si() % static_cast<long>(c.size());
        const Segment& seg = c.segs[k];
        out.push_back({seg.at(cur - base), seg.at(stop - base)});
        cur = stop;
    }
    return out;
}

std::vector<Segment> reversed_path(const std::vector<Segment>& segs) {
    std::vector<Segment> out;
    for (auto it = segs.rbegin(); it != segs.rend(); ++it) out.push_back(it->reversed());
    return out;
}

std::vector<Bigon> bigons_between(const Surface& s, const PolyCurve& u, const PolyCurve& v, std::size_t member) {
    if (!u.closed() || !v.closed()) throw ContractError("bigons are defined for closed curves");
    if (!lifts_to_plane(s)) throw UnsupportedSurface("bigon detection is only available on planar surfaces and tori");
    std::vector<Cross> xs = crossings_of(s, u, v, "family member");
    std::vector<Bigon> out;
    if (xs.size() < 2) return out;
    std::sort(xs.begin(), xs.end(), [](const Cross& a, const Cross& b) { return a.v < b.v; });
    const std::size_t n = xs.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Cross& p = xs[i];
        const Cross& q = xs[(i + 1) % n];
        for (bool starts_at_p : {true, false}) {
            const Cross& from = starts_at_p ? p : q;
            const Cross& to = starts_at_p ? q : p;
            bool clean = std::none_of(xs.begin(), xs.end(),
                                      [&](const Cross& x) { return strictly_between(u, from.u, to.u, x.u); });
            if (!clean) continue;
            Bigon b;
            b.member = member;
            b.target = v;
            b.u_from = from.u;
            b.u_to = to.u;
            b.v_from = p.v;
            b.v_to = q.v;
            b.u_starts_at_v_from = starts_at_p;
            b.side_u = sub_path(u, from.u, to.u);
            b.side_v = sub_path(v, p.v, q.v);
            std::vector<Segment> loop = b.side_u;
            auto back = starts_at_p ? reversed_path(b.side_v) : b.side_v;
            loop.insert(loop.end(), back.begin(), back.end());
            Development dev = develop(s, PolyCurve{CurveKind::Closed, loop});
            if (!dev.holonomy.is_identity()) continue;
            b.disk.assign(dev.points.begin(), dev.points.end() - 1);
            auto area = plane_loop_disk(s, b.disk);
            if (!area || *area == 0) continue;
            b.area = *area;
            out.push_back(std::move(b));
        }
    }
    return out;
}

std::optional<Bigon> find_innermost_bigon(const Surface& s, const std::vector<PolyCurve>& family,
                                          const PolyCurve& target) {
    std::optional<Bigon> best;
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (Bigon& b : bigons_between(s, family[i], target, i)) {
            bool better = !best || b.innermost_rank() < best->innermost_rank() ||
                          (b.innermost_rank() == best->innermost_rank() && b.v_from < best->v_from);
            if (better) best = std::move(b);
        }
    }
    return best;
}

std::vector<PolyCurve> bigon_surgery(const Surface& s, const std::vector<PolyCurve>& family, const Bigon& b) {
    if (b.member >= family.size()) throw ContractError("bigon refers to a missing family member");
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (const Bigon& other : bigons_between(s, family[i], b.target, i)) {
            if (other.innermost_rank() < b.innermost_rank()) throw ContractError("bigon is not innermost");
        }
    }
    const PolyCurve& u = family[b.member];
    const PolyCurve& v = b.target;
    const int before = intersect_curves(s, u, v).crossing_count;
    const Vec2 start = s.canonical(point_at(u, b.u_from));
    const Vec2 end = s.canonical(point_at(u, b.u_to));
    const Side toward = b.area > 0 ? Side::Left : Side::Right;
    const Side away = b.u_starts_at_v_from ? toward : opposite(toward);
    std::vector<bool> apart(family.size());
    for (std::size_t j = 0; j < family.size(); ++j) apart[j] = j != b.member && curves_disjoint(s, family[j], u);

    Rational d = std::min(initial_offset(s, u), initial_offset(s, v));
    for (int attempt = 0; attempt < kMaxHalvings; ++attempt, d /= 2) {
        auto ud = offset_curve(s, u, toward, d);
        auto ve = offset_curve(s, v, away, d / 2);
        if (!ud || !ve) continue;
        IntersectionReport r = intersect_curves(s, *ud, *ve);
        if (!r.transverse() || r.components.size() < 2) continue;
        std::vector<Cross> xs;
        for (const auto& c : r.components) xs.push_back({c.u_start, c.v_start, c.start});
        const Cross& x = nearest(s, xs, start);
        const Cross& y = nearest(s, xs, end);
        if (x.u == y.u) continue;
        auto along = b.u_starts_at_v_from ? sub_path(*ve, x.v, y.v) : reversed_path(sub_path(*ve, y.v, x.v));
        PolyCurve cand = joined(CurveKind::Closed, sub_path(*ud, y.u, x.u), along);
        if (!validate_curve(s, cand).ok) continue;
        IntersectionReport after = intersect_curves(s, cand, v);
        if (!after.transverse() || after.crossing_count != before - 2) continue;
        if (!curves_disjoint(s, cand, u)) continue;
        bool ok = true;
        for (std::size_t j = 0; j < family.size() && ok; ++j) {
            if (j == b.member) continue;
            ok = apart[j] ? curves_disjoint(s, cand, family[j]) : transverse_or_disjoint(s, cand, family[j]);
        }
        if (!ok || !same_class(s, cand, u)) continue;
        std::vector<PolyCurve> out = family;
        out[b.member] = std::move(cand);
        return out;
    }
    throw InternalError("bigon surgery failed at every tested distance");
}

PolyCurve tighten_pair(const Surface& s, const PolyCurve& u, const PolyCurve& v) {
    require_valid(s, u, "curve");
    require_valid(s, v, "target");
    PolyCurve cur = u;
    for (;;) {
        auto b = find_innermost_bigon(s, {cur}, v);
        if (!b) return cur;
        cur = bigon_surgery(s, {cur}, *b).front();
    }
}

std::vector<std::pair<Rational, std::size_t>> beta_intersections(const Surface& s, const std::vector<PolyCurve>& arcs,
                                                                 const PolyCurve& beta) {
    const Rational n(static_cast<long>(beta.size()));
    std::vector<std::pair<Rational, std::size_t>> out;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        IntersectionReport r = intersect_curves(s, arcs[i], beta);
        if (r.identical || !r.transverse()) throw ContractError("arc meets beta in a touching or overlapping component");
        for (const auto& c : r.components) {
            if (c.v_start == 0 || c.v_start == n) throw ContractError("an endpoint of beta lies on an arc");
            out.emplace_back(c.v_start, i);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool near_old_or_beta(const Surface& s, const PolyCurve& old_arc, const PolyCurve& beta, const Rational& t,
                      const PolyCurve& fresh, const Rational& r) {
    std::vector<Segment> cores = old_arc.segs;
    auto head = sub_path(beta, 0, t);
    cores.insert(cores.end(), head.begin(), head.end());
    std::vector<Segment> placed;
    for (const Similarity& m : neighbourhood_maps(s)) {
        for (const Segment& seg : cores) placed.push_back({m.apply(seg.a), m.apply(seg.b)});
    }
    const Rational r2 = r * r;
    for (const Segment& seg : fresh.segs) {
        for (const Vec2* p : {&seg.a, &seg.b}) {
            bool near = std::any_of(placed.begin(), placed.end(),
                                    [&](const Segment& c) { return distance_sq(*p, c) <= r2; });
            if (!near) return false;
        }
    }
    return true;
}

ArcSurgery arc_surgery(const Surface& s, const std::vector<PolyCurve>& arcs, const PolyCurve& beta) {
    if (beta.closed()) throw ContractError("beta must be an arc");
    require_valid(s, beta, "beta");
    for (const PolyCurve& g : arcs) {
        if (g.closed()) throw ContractError("arc surgery needs arcs");
        require_valid(s, g, "arc");
    }
    ArcSurgery out;
    out.arcs = arcs;
    auto order = beta_intersections(s, arcs, beta);
    if (order.empty()) return out;
    const Rational t = order.front().first;
    out.t = t;
    for (const auto& [param, i] : order) {
        if (param != t) break;
        if (std::find(out.replaced.begin(), out.replaced.end(), i) == out.replaced.end()) out.replaced.push_back(i);
    }
    const Vec2 p = s.canonical(point_at(beta, t));
    LocalRays br = rays_at(s, beta, t);
    const Vec2 bdir = *br.ahead;

    for (std::size_t i : out.replaced) {
        const PolyCurve& gamma = out.arcs[i];
        Rational a;
        for (const auto& c : intersect_curves(s, gamma, beta).components) {
            if (c.v_start == t) a = c.u_start;
        }
        const int count = static_cast<int>(intersect_curves(s, gamma, beta).components.size());
        const Vec2 gdir = *rays_at(s, gamma, a).ahead;
        const Side gside = cross(gdir, -bdir) > 0 ? Side::Left : Side::Right;
        const Side side_a = cross(bdir, -gdir) > 0 ? Side::Left : Side::Right;
        std::vector<bool> apart(out.arcs.size());
        for (std::size_t j = 0; j < out.arcs.size(); ++j) apart[j] = j != i && curves_disjoint(s, out.arcs[j], gamma);

        auto acceptable = [&](const PolyCurve& piece, const Rational& radius) -> std::optional<int> {
            if (!validate_curve(s, piece).ok) return std::nullopt;
            if (!curves_disjoint(s, piece, gamma)) return std::nullopt;
            IntersectionReport rb = intersect_curves(s, piece, beta);
            if (!rb.transverse() || rb.crossing_count > count - 1) return std::nullopt;
            const Rational bn(static_cast<long>(beta.size()));
            for (const auto& c : rb.components) {
                if (c.v_start == 0 || c.v_start == bn) return std::nullopt;
            }
            for (std::size_t j = 0; j < out.arcs.size(); ++j) {
                if (j == i) continue;
                bool ok = apart[j] ? curves_disjoint(s, piece, out.arcs[j])
                                   : transverse_or_disjoint(s, piece, out.arcs[j]);
                if (!ok) return std::nullopt;
            }
            if (!near_old_or_beta(s, gamma, beta, t, piece, radius)) return std::nullopt;
            return rb.crossing_count;
        };

        bool saw_inessential_pair = false;
        bool done = false;
        Rational d = std::min(initial_offset(s, gamma), initial_offset(s, beta));
        for (int attempt = 0; attempt < kMaxHalvings && !done; ++attempt, d /= 2) {
            const Rational e = d / 8;
            const Rational radius = 2 * std::max(d, e);
            auto gd = offset_curve(s, gamma, gside, d);
            auto la = offset_curve(s, beta, side_a, e);
            auto lb = offset_curve(s, beta, opposite(side_a), e);
            if (!gd || !la || !lb) continue;
            const Rational gn(static_cast<long>(gd->size()));
            std::vector<PolyCurve> pieces;
            for (bool first_half : {true, false}) {
                const PolyCurve& l = first_half ? *la : *lb;
                IntersectionReport r = intersect_curves(s, *gd, l);
                if (!r.transverse() || r.components.empty()) continue;
                std::vector<Cross> xs;
                for (const auto& c : r.components) xs.push_back({c.u_start, c.v_start, c.start});
                const Cross& x = nearest(s, xs, p);
                if (first_half) {
                    pieces.push_back(joined(CurveKind::Arc, sub_path(*gd, 0, x.u), reversed_path(sub_path(l, 0, x.v))));
                } else {
                    pieces.push_back(joined(CurveKind::Arc, sub_path(l, 0, x.v), sub_path(*gd, x.u, gn)));
                }
            }
            std::optional<PolyCurve> best;
            int best_count = 0;
            int valid = 0;
            for (const PolyCurve& piece : pieces) {
                auto c = acceptable(piece, radius);
                if (!c) continue;
                ++valid;
                if (!essential_arc(s, piece)) continue;
                if (!best || *c < best_count || (*c == best_count && lex_waypoints_less(s, piece, *best))) {
                    best = piece;
                    best_count = *c;
                }
            }
            if (valid == 2 && !best) saw_inessential_pair = true;
            if (!best) continue;
            out.arcs[i] = std::move(*best);
            out.radii.push_back(radius);
            done = true;
        }
        if (!done) {
            if (saw_inessential_pair) throw InternalError("both surgered pieces are inessential");
            throw InternalError("arc surgery failed at every tested distance");
        }
    }
    return out;
}

std::vector<PolyCurve> arc_surgery_step(const Surface& s, const std::vector<PolyCurve>& arcs, const PolyCurve& beta) {
    return arc_surgery(s, arcs, beta).arcs;
}

}  // namespace finecurve
