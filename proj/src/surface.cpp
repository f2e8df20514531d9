#include "finecurve/surface.hpp"

#include "finecurve/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace finecurve {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

void check_holes(const Surface& s) {
    for (std::size_t h = 0; h < s.holes.size(); ++h) {
        const auto& hole = s.holes[h];
        if (!is_simple_polygon(hole)) throw InputError("hole " + std::to_string(h) + " is not a simple polygon");
        for (const Vec2& p : hole) {
            if (!s.in_open_polygon(p)) {
                throw InputError("hole " + std::to_string(h) + " is not strictly inside the polygon");
            }
        }
    }
    for (std::size_t h = 0; h < s.holes.size(); ++h) {
        for (std::size_t g = h + 1; g < s.holes.size(); ++g) {
            const auto& a = s.holes[h];
            const auto& b = s.holes[g];
            bool overlap = winding_number(b, a[0]) != 0 || winding_number(a, b[0]) != 0 ||
                           point_on_polygon_boundary(b, a[0]) || point_on_polygon_boundary(a, b[0]);
            for (std::size_t i = 0; i < a.size() && !overlap; ++i) {
                Segment ea{a[i], a[(i + 1) % a.size()]};
                for (std::size_t j = 0; j < b.size() && !overlap; ++j) {
                    Segment eb{b[j], b[(j + 1) % b.size()]};
                    if (segment_intersect(ea, eb).kind != HitKind::None) overlap = true;
                }
            }
            if (overlap) {
                throw InputError("holes " + std::to_string(h) + " and " + std::to_string(g) + " overlap");
            }
        }
    }
}

}  // namespace

Surface build_surface(const SurfaceSpec& spec) {
    Surface s;
    s.spec = spec;
    s.genus = spec.genus;
    s.boundary_count = spec.boundary;
    s.polygon = spec.polygon;
    const int n = static_cast<int>(s.polygon.size());
    if (n < 3) throw InputError("polygon needs at least three vertices");
    if (spec.genus < 0 || spec.boundary < 0) throw InputError("genus and boundary count must be non-negative");
    for (int k = 0; k < n; ++k) {
        if (orientation(s.polygon[k], s.polygon[(k + 1) % n], s.polygon[(k + 2) % n]) <= 0) {
            throw InputError("polygon must be strictly convex and counter-clockwise");
        }
    }

    s.partner.assign(n, -1);
    s.glue.assign(n, Similarity::identity());
    for (const auto& [i, j, flag] : spec.identifications) {
        if (i < 0 || j < 0 || i >= n || j >= n) throw InputError("identification refers to a missing edge");
        if (i == j) throw InputError("edge " + std::to_string(i) + " identified with itself");
        if (flag == 1) throw UnsupportedSurface("orientation-reversing identification gives a non-orientable surface");
        if (flag != -1) throw InputError("identification flag must be -1 or 1");
        bool repeat = s.partner[i] == j && s.partner[j] == i;
        if (!repeat && (s.partner[i] != -1 || s.partner[j] != -1)) {
            throw InputError("identifications are not an involution at edges " + std::to_string(i) + ", " +
                             std::to_string(j));
        }
        s.partner[i] = j;
        s.partner[j] = i;
    }

    UnionFind vertices(n);
    int edges = 0;
    for (int j = 0; j < n; ++j) {
        int i = s.partner[j];
        if (i < 0) {
            ++edges;
            continue;
        }
        if (j < i) ++edges;
        const Vec2& pj = s.polygon[j];
        const Vec2& pj1 = s.polygon[(j + 1) % n];
        const Vec2& pi = s.polygon[i];
        const Vec2& pi1 = s.polygon[(i + 1) % n];
        s.glue[j] = similarity_from_pairs(pj, pi1, pj1, pi);
        if (!s.glue[j].is_translation()) s.translation = false;
        vertices.unite(j, (i + 1) % n);
        vertices.unite((j + 1) % n, i);
    }
    int vertex_classes = 0;
    for (int k = 0; k < n; ++k) {
        if (vertices.find(k) == k) ++vertex_classes;
    }

    // Declared-boundary edges chain into circles through vertex classes.
    UnionFind chains(n);
    for (int k = 0; k < n; ++k) {
        if (s.partner[k] < 0) chains.unite(vertices.find(k), vertices.find((k + 1) % n));
    }
    std::map<int, int> component_ids;
    s.edge_component.assign(n, -1);
    for (int k = 0; k < n; ++k) {
        if (s.partner[k] >= 0) continue;
        int root = chains.find(vertices.find(k));
        auto [it, inserted] = component_ids.emplace(root, static_cast<int>(component_ids.size()));
        s.edge_component[k] = it->second;
    }
    s.outer_components = static_cast<int>(component_ids.size());

    for (auto hole : spec.holes) {
        if (hole.size() >= 3 && signed_area2(hole) < 0) std::reverse(hole.begin(), hole.end());
        s.holes.push_back(std::move(hole));
    }
    check_holes(s);

    const int h = static_cast<int>(s.holes.size());
    s.euler = vertex_classes - edges + 1 - h;
    const int b = s.outer_components + h;
    if (b != spec.boundary) {
        throw InputError("declared boundary count " + std::to_string(spec.boundary) + " but the cell structure has " +
                         std::to_string(b));
    }
    if (s.euler != 2 - 2 * spec.genus - spec.boundary) {
        throw InputError("Euler characteristic " + std::to_string(s.euler) + " does not match genus " +
                         std::to_string(spec.genus) + " with " + std::to_string(spec.boundary) +
                         " boundary components");
    }
    return s;
}

bool Surface::has_identifications() const {
    return std::any_of(partner.begin(), partner.end(), [](int p) { return p >= 0; });
}

Locus Surface::locate(const Vec2& p) const {
    const int n = edge_count();
    Locus loc;
    std::optional<int> on_edge;
    for (int k = 0; k < n; ++k) {
        if (p == polygon[k]) return {LocusKind::PolygonCorner, k, -1};
        int o = orientation(polygon[k], polygon[(k + 1) % n], p);
        if (o < 0) return {LocusKind::Outside, -1, -1};
        if (o == 0) on_edge = k;
    }
    if (on_edge) return {LocusKind::PolygonEdge, *on_edge, -1};
    for (int h = 0; h < static_cast<int>(holes.size()); ++h) {
        const auto& hole = holes[h];
        const int m = static_cast<int>(hole.size());
        for (int e = 0; e < m; ++e) {
            if (p == hole[e]) return {LocusKind::HoleCorner, h, e};
        }
        for (int e = 0; e < m; ++e) {
            if (point_on_segment(p, {hole[e], hole[(e + 1) % m]})) return {LocusKind::HoleEdge, h, e};
        }
        if (winding_number(hole, p) != 0) return {LocusKind::InsideHole, h, -1};
    }
    return loc;
}

std::optional<int> Surface::polygon_edge_of(const Vec2& p) const {
    const int n = edge_count();
    for (int k = 0; k < n; ++k) {
        if (p == polygon[k]) return std::nullopt;
    }
    std::optional<int> edge;
    for (int k = 0; k < n; ++k) {
        int o = orientation(polygon[k], polygon[(k + 1) % n], p);
        if (o < 0) return std::nullopt;
        if (o == 0) edge = k;
    }
    return edge;
}

bool Surface::on_identified_edge(const Vec2& p) const {
    auto e = polygon_edge_of(p);
    return e && identified(*e);
}

bool Surface::on_boundary(const Vec2& p) const {
    Locus loc = locate(p);
    if (loc.kind == LocusKind::HoleEdge) return true;
    return loc.kind == LocusKind::PolygonEdge && !identified(loc.index);
}

int Surface::boundary_component_of(const Vec2& p) const {
    Locus loc = locate(p);
    if (loc.kind == LocusKind::HoleEdge) return outer_components + loc.index;
    if (loc.kind == LocusKind::PolygonEdge && !identified(loc.index)) return edge_component[loc.index];
    throw ContractError("point " + to_string(p) + " is not on the boundary");
}

Vec2 Surface::canonical(const Vec2& p) const {
    auto e = polygon_edge_of(p);
    if (e && identified(*e) && partner[*e] < *e) return glue[*e].apply(p);
    return p;
}

bool Surface::in_closed_polygon(const Vec2& p) const {
    const int n = edge_count();
    for (int k = 0; k < n; ++k) {
        if (orientation(polygon[k], polygon[(k + 1) % n], p) < 0) return false;
    }
    return true;
}

bool Surface::in_open_polygon(const Vec2& p) const {
    const int n = edge_count();
    for (int k = 0; k < n; ++k) {
        if (orientation(polygon[k], polygon[(k + 1) % n], p) <= 0) return false;
    }
    return true;
}

std::string kind_name(CurveKind k) { return k == CurveKind::Closed ? "closed" : "arc"; }

PolyCurve curve_from_waypoints(const Surface& s, CurveKind kind, const std::vector<Vec2>& pts) {
    if (pts.size() < 2) throw InputError("a curve needs at least two waypoints");
    for (const Vec2& p : pts) {
        if (!s.in_closed_polygon(p)) throw InputError("waypoint " + to_string(p) + " lies outside the polygon");
    }
    PolyCurve c;
    c.kind = kind;
    Vec2 cur = pts[0];
    std::optional<Vec2> pending;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const Vec2& w = pts[i];
        if (pending && w == *pending) {
            pending.reset();
            continue;
        }
        pending.reset();
        c.segs.push_back({cur, w});
        bool last = i + 1 == pts.size();
        auto e = s.polygon_edge_of(w);
        if (e && s.identified(*e) && !(kind == CurveKind::Arc && last)) {
            cur = s.glue[*e].apply(w);
            pending = cur;
        } else {
            cur = w;
        }
    }
    if (kind == CurveKind::Closed && cur != pts[0]) c.segs.push_back({cur, pts[0]});
    return c;
}

std::vector<Vec2> curve_waypoints(const Surface& s, const PolyCurve& c) {
    (void)s;
    std::vector<Vec2> out;
    if (c.segs.empty()) return out;
    out.push_back(c.segs[0].a);
    for (const Segment& seg : c.segs) out.push_back(seg.b);
    if (c.closed() && out.size() > 2 && out.back() == out.front()) out.pop_back();
    return out;
}

std::size_t junction_count(const PolyCurve& c) {
    if (c.segs.empty()) return 0;
    return c.closed() ? c.segs.size() : c.segs.size() - 1;
}

bool glued_junction(const Surface& s, const PolyCurve& c, std::size_t k) {
    (void)s;
    const Segment& cur = c.segs[k];
    const Segment& next = c.segs[(k + 1) % c.segs.size()];
    return cur.b != next.a;
}

namespace {

Diagnostics fail(std::string msg, int a = -1, int b = -1) { return {false, std::move(msg), a, b}; }

}  // namespace

Diagnostics validate_curve(const Surface& s, const PolyCurve& c) {
    const int n = static_cast<int>(c.segs.size());
    if (n == 0) return fail("curve has no segments");

    for (int k = 0; k < n; ++k) {
        const Segment& seg = c.segs[k];
        if (seg.a == seg.b) return fail("segment " + std::to_string(k) + " has zero length", k);
        for (const Vec2* p : {&seg.a, &seg.b}) {
            Locus loc = s.locate(*p);
            switch (loc.kind) {
                case LocusKind::Outside:
                case LocusKind::InsideHole:
                    return fail("waypoint " + to_string(*p) + " is outside the surface", k);
                case LocusKind::PolygonCorner:
                case LocusKind::HoleCorner:
                    return fail("waypoint " + to_string(*p) + " is on a corner", k);
                default:
                    break;
            }
        }
        auto ea = s.polygon_edge_of(seg.a);
        auto eb = s.polygon_edge_of(seg.b);
        if (ea && eb && *ea == *eb) return fail("segment " + std::to_string(k) + " runs along a polygon edge", k);
    }

    const std::size_t junctions = junction_count(c);
    for (std::size_t k = 0; k < junctions; ++k) {
        const Vec2& b = c.segs[k].b;
        const Vec2& a = c.segs[(k + 1) % n].a;
        int ik = static_cast<int>(k);
        int in = static_cast<int>((k + 1) % n);
        if (a == b) {
            Locus loc = s.locate(b);
            if (loc.kind == LocusKind::PolygonEdge && s.identified(loc.index)) {
                return fail("curve touches an identified edge at " + to_string(b) + " without passing through", ik,
                            in);
            }
            if (loc.kind != LocusKind::Interior) return fail("curve touches the boundary at " + to_string(b), ik, in);
        } else {
            auto e = s.polygon_edge_of(b);
            if (!e || !s.identified(*e) || s.glue[*e].apply(b) != a) {
                return fail("segments " + std::to_string(k) + " and " + std::to_string(in) + " do not connect", ik,
                            in);
            }
        }
    }

    if (!c.closed()) {
        if (!s.on_boundary(c.segs.front().a)) return fail("arc starts off the boundary", 0);
        if (!s.on_boundary(c.segs.back().b)) return fail("arc ends off the boundary", n - 1);
    }

    for (int k = 0; k < n; ++k) {
        const Segment& seg = c.segs[k];
        for (std::size_t h = 0; h < s.holes.size(); ++h) {
            const auto& hole = s.holes[h];
            for (std::size_t e = 0; e < hole.size(); ++e) {
                SegmentHit hit = segment_intersect(seg, {hole[e], hole[(e + 1) % hole.size()]});
                if (hit.kind == HitKind::None) continue;
                bool endpoint = hit.kind == HitKind::Point && !c.closed() &&
                                ((k == 0 && hit.p0 == seg.a) || (k == n - 1 && hit.p0 == seg.b));
                if (!endpoint) return fail("segment " + std::to_string(k) + " meets hole " + std::to_string(h), k);
            }
            Vec2 mid = (seg.a + seg.b) / Rational(2);
            if (winding_number(hole, mid) != 0) {
                return fail("segment " + std::to_string(k) + " passes through hole " + std::to_string(h), k);
            }
        }
    }

    std::vector<Box> boxes;
    boxes.reserve(n);
    for (const Segment& seg : c.segs) boxes.push_back(box_of(seg));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (!boxes[i].overlaps(boxes[j], 1e-9)) continue;
            SegmentHit hit = segment_intersect(c.segs[i], c.segs[j]);
            if (hit.kind == HitKind::None) continue;
            bool allowed = false;
            if (hit.kind == HitKind::Point) {
                if (j == i + 1 && c.segs[i].b == c.segs[j].a && hit.p0 == c.segs[i].b) allowed = true;
                if (c.closed() && i == 0 && j == n - 1 && c.segs[j].b == c.segs[i].a && hit.p0 == c.segs[i].a) {
                    allowed = true;
                }
            }
            if (!allowed) {
                return fail("self-intersection between segments " + std::to_string(i) + " and " + std::to_string(j),
                            i, j);
            }
        }
    }

    // Coincidences across identified edges.
    std::map<Vec2, std::vector<std::pair<int, int>>, Vec2Less> glued;
    for (int k = 0; k < n; ++k) {
        for (int end = 0; end < 2; ++end) {
            const Vec2& p = end == 0 ? c.segs[k].a : c.segs[k].b;
            if (s.on_identified_edge(p)) glued[s.canonical(p)].push_back({k, end});
        }
    }
    for (const auto& [point, ends] : glued) {
        if (ends.size() < 2) continue;
        bool junction_pair = false;
        if (ends.size() == 2) {
            auto [k0, e0] = ends[0];
            auto [k1, e1] = ends[1];
            if (e0 == 0) {
                std::swap(k0, k1);
                std::swap(e0, e1);
            }
            junction_pair = e0 == 1 && e1 == 0 && (k1 == k0 + 1 || (c.closed() && k0 == n - 1 && k1 == 0));
        }
        if (!junction_pair) {
            return fail("self-intersection at glued point " + to_string(point), ends[0].first, ends[1].first);
        }
    }
    return {};
}

void require_valid(const Surface& s, const PolyCurve& c, const std::string& what) {
    Diagnostics d = validate_curve(s, c);
    if (!d.ok) throw ContractError(what + " is not a valid curve: " + d.message);
}

Development develop(const Surface& s, const PolyCurve& c) {
    Development dev;
    Similarity m = Similarity::identity();
    const std::size_t n = c.segs.size();
    dev.points.push_back(c.segs[0].a);
    for (std::size_t k = 0; k < n; ++k) {
        dev.maps.push_back(m);
        dev.points.push_back(m.apply(c.segs[k].b));
        if (k + 1 < n || c.closed()) {
            if (glued_junction(s, c, k)) {
                auto e = s.polygon_edge_of(c.segs[k].b);
                if (!e || !s.identified(*e)) throw ContractError("curve chain is broken");
                m = compose(m, s.glue[*e].inverse());
            }
        }
    }
    dev.holonomy = m;
    return dev;
}

std::optional<PolyCurve> fold(const Surface& s, CurveKind kind, const std::vector<Vec2>& pts,
                              const Similarity& start) {
    if (pts.size() < 2) return std::nullopt;
    const int n = s.edge_count();
    PolyCurve out;
    out.kind = kind;
    Similarity m = start;
    Similarity minv = m.inverse();
    if (!s.in_closed_polygon(minv.apply(pts[0]))) return std::nullopt;
    auto leave_edge = [&](const Vec2& q0, const Vec2& q1) -> bool {
        // Re-anchor in the neighbouring copy if q0 sits on an edge and the
        // step heads outward.
        auto e = s.polygon_edge_of(q0);
        if (!e) return true;
        Rational c = cross(s.edge(*e).direction(), q1 - q0);
        if (c > 0) return true;
        if (c == 0 || !s.identified(*e)) return false;
        m = compose(m, s.glue[*e].inverse());
        minv = m.inverse();
        return true;
    };
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        Vec2 p = pts[k];
        const Vec2& target = pts[k + 1];
        if (p == target) return std::nullopt;
        for (int guard = 0;; ++guard) {
            if (guard > 10000) return std::nullopt;
            Vec2 q0 = minv.apply(p);
            Vec2 q1 = minv.apply(target);
            if (!leave_edge(q0, q1)) return std::nullopt;
            q0 = minv.apply(p);
            q1 = minv.apply(target);
            if (s.in_closed_polygon(q1)) {
                for (const Vec2& corner : s.polygon) {
                    if (q1 == corner) return std::nullopt;
                }
                out.segs.push_back({q0, q1});
                break;
            }
            std::optional<Rational> exit;
            int exit_edge = -1;
            for (int e = 0; e < n; ++e) {
                const Segment edge = s.edge(e);
                Rational o1 = cross(edge.direction(), q1 - edge.a);
                if (o1 >= 0) continue;
                Rational o0 = cross(edge.direction(), q0 - edge.a);
                Rational t = o0 / (o0 - o1);
                if (!exit || t < *exit) {
                    exit = t;
                    exit_edge = e;
                } else if (t == *exit) {
                    return std::nullopt;  // leaves through a corner
                }
            }
            if (!exit || *exit <= 0 || !s.identified(exit_edge)) return std::nullopt;
            Vec2 x = q0 + *exit * (q1 - q0);
            for (const Vec2& corner : s.polygon) {
                if (x == corner) return std::nullopt;
            }
            out.segs.push_back({q0, x});
            p = m.apply(x);
            m = compose(m, s.glue[exit_edge].inverse());
            minv = m.inverse();
        }
    }
    if (kind == CurveKind::Closed) {
        const Vec2& first = out.segs.front().a;
        const Vec2& last = out.segs.back().b;
        if (last != first) {
            auto e = s.polygon_edge_of(last);
            if (!e || !s.identified(*e) || s.glue[*e].apply(last) != first) return std::nullopt;
        }
    }
    return simplify(out);
}

PolyCurve simplify(const PolyCurve& c) {
    auto mergeable = [](const Segment& x, const Segment& y) {
        return x.b == y.a && same_direction(x.direction(), y.direction());
    };
    std::vector<Segment> segs;
    for (const Segment& seg : c.segs) {
        if (!segs.empty() && mergeable(segs.back(), seg)) {
            segs.back().b = seg.b;
        } else {
            segs.push_back(seg);
        }
    }
    if (c.closed() && segs.size() > 1 && mergeable(segs.back(), segs.front())) {
        segs.front().a = segs.back().a;
        segs.pop_back();
    }
    return {c.kind, segs};
}

PolyCurve reversed(const PolyCurve& c) {
    PolyCurve r;
    r.kind = c.kind;
    for (auto it = c.segs.rbegin(); it != c.segs.rend(); ++it) r.segs.push_back(it->reversed());
    return r;
}

Vec2 point_at(const PolyCurve& c, const Rational& param) {
    const std::size_t n = c.segs.size();
    mpz_class whole;
    mpz_fdiv_q(whole.get_mpz_t(), param.get_num_mpz_t(), param.get_den_mpz_t());
    long k = whole.get_si();
    if (k < 0) k = 0;
    if (static_cast<std::size_t>(k) >= n) return c.segs[n - 1].b;
    return c.segs[k].at(param - Rational(k));
}

double approx_length(const PolyCurve& c) {
    double total = 0;
    for (const Segment& seg : c.segs) {
        double dx = to_double(seg.b.x - seg.a.x);
        double dy = to_double(seg.b.y - seg.a.y);
        total += std::sqrt(dx * dx + dy * dy);
    }
    return total;
}

}  // namespace finecurve
