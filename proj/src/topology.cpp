#include "finecurve/topology.hpp"

#include "finecurve/errors.hpp"

#include <algorithm>
#include <cmath>

namespace finecurve {

namespace {

bool parallelogram_torus(const Surface& s) {
    if (s.genus != 1 || !s.translation || s.edge_count() != 4) return false;
    for (int k = 0; k < 4; ++k) {
        if (!s.identified(k)) return false;
    }
    return true;
}

bool square_lattice(const Surface& s) {
    for (int k = 0; k < 4; ++k) {
        const Vec2& t = s.glue[k].b;
        if (norm_l1(t) != 1 || (t.x != 0 && t.y != 0)) return false;
    }
    return true;
}

int boundary_edge_index(const std::vector<Vec2>& poly, const Vec2& p) {
    for (std::size_t e = 0; e < poly.size(); ++e) {
        if (point_on_segment(p, {poly[e], poly[(e + 1) % poly.size()]})) return static_cast<int>(e);
    }
    throw InternalError("point " + to_string(p) + " is not on the boundary polygon");
}

int to_int(const Rational& r) {
    if (r.get_den() != 1) throw InternalError("expected an integer lattice coordinate");
    return static_cast<int>(r.get_num().get_si());
}

}  // namespace

bool lifts_to_plane(const Surface& s) { return !s.has_identifications() || parallelogram_torus(s); }

std::vector<Vec2> deck_translations(const Surface& s, const Vec2& lo, const Vec2& hi) {
    if (!s.has_identifications()) return {Vec2(0, 0)};
    if (!parallelogram_torus(s)) throw UnsupportedSurface("surface does not lift to the plane by translations");
    const Vec2& g0 = s.glue[0].b;
    const Vec2& g1 = s.glue[1].b;
    const Rational det = cross(g0, g1);
    // Translations moving some point of the polygon into the window.
    double pxmin = 1e300, pymin = 1e300, pxmax = -1e300, pymax = -1e300;
    for (const Vec2& v : s.polygon) {
        pxmin = std::min(pxmin, to_double(v.x));
        pxmax = std::max(pxmax, to_double(v.x));
        pymin = std::min(pymin, to_double(v.y));
        pymax = std::max(pymax, to_double(v.y));
    }
    double wx[2] = {to_double(lo.x) - pxmax, to_double(hi.x) - pxmin};
    double wy[2] = {to_double(lo.y) - pymax, to_double(hi.y) - pymin};
    double amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
    const double d = to_double(det);
    for (double x : wx) {
        for (double y : wy) {
            double a = (x * to_double(g1.y) - y * to_double(g1.x)) / d;
            double b = (to_double(g0.x) * y - to_double(g0.y) * x) / d;
            amin = std::min(amin, a);
            amax = std::max(amax, a);
            bmin = std::min(bmin, b);
            bmax = std::max(bmax, b);
        }
    }
    std::vector<Vec2> out;
    for (long i = static_cast<long>(std::floor(amin)) - 1; i <= static_cast<long>(std::ceil(amax)) + 1; ++i) {
        for (long j = static_cast<long>(std::floor(bmin)) - 1; j <= static_cast<long>(std::ceil(bmax)) + 1; ++j) {
            out.push_back(Rational(i) * g0 + Rational(j) * g1);
        }
    }
    return out;
}

std::optional<Rational> plane_loop_disk(const Surface& s, const std::vector<Vec2>& loop) {
    if (loop.size() < 3) return std::nullopt;
    Vec2 lo = loop[0], hi = loop[0];
    for (const Vec2& p : loop) {
        lo = Vec2(std::min(lo.x, p.x), std::min(lo.y, p.y));
        hi = Vec2(std::max(hi.x, p.x), std::max(hi.y, p.y));
    }
    auto shifts = deck_translations(s, lo, hi);
    for (const auto& hole : s.holes) {
        Vec2 inside = interior_point(hole);
        for (const Vec2& t : shifts) {
            if (winding_number(loop, inside + t) != 0) return std::nullopt;
        }
    }
    return signed_area2(loop) / 2;
}

bool bounds_disk(const Surface& s, const PolyCurve& c) {
    if (!c.closed()) throw ContractError("disk test needs a closed curve");
    if (!lifts_to_plane(s)) throw UnsupportedSurface("disk test is only available on planar surfaces and tori");
    Development dev = develop(s, c);
    if (!dev.holonomy.is_identity()) return false;
    std::vector<Vec2> loop(dev.points.begin(), dev.points.end() - 1);
    return plane_loop_disk(s, loop).has_value();
}

std::vector<Vec2> boundary_path(const std::vector<Vec2>& poly, const Vec2& from, const Vec2& to, bool forward) {
    if (!forward) {
        auto path = boundary_path(poly, to, from, true);
        std::reverse(path.begin(), path.end());
        return path;
    }
    const int n = static_cast<int>(poly.size());
    int ef = boundary_edge_index(poly, from);
    int et = boundary_edge_index(poly, to);
    std::vector<Vec2> path{from};
    Segment edge{poly[ef], poly[(ef + 1) % n]};
    if (ef == et && segment_parameter(edge, to) > segment_parameter(edge, from)) {
        path.push_back(to);
        return path;
    }
    int k = ef;
    do {
        k = (k + 1) % n;
        path.push_back(poly[k]);
    } while (k != et);
    path.push_back(to);
    return path;
}

bool essential_arc(const Surface& s, const PolyCurve& arc) {
    if (arc.closed()) throw ContractError("essential_arc needs an arc");
    const Vec2& a = arc.segs.front().a;
    const Vec2& b = arc.segs.back().b;
    if (s.boundary_component_of(a) != s.boundary_component_of(b)) return true;
    if (!lifts_to_plane(s)) throw UnsupportedSurface("arc essentiality is only available on planar surfaces and tori");
    Development dev = develop(s, arc);
    if (!dev.maps.back().is_identity()) return true;
    Locus loc = s.locate(a);
    const std::vector<Vec2>& poly = loc.kind == LocusKind::HoleEdge ? s.holes[loc.index] : s.polygon;
    for (bool forward : {true, false}) {
        std::vector<Vec2> path = boundary_path(poly, b, a, forward);
        std::vector<Vec2> loop = dev.points;
        loop.insert(loop.end(), path.begin() + 1, path.end() - 1);
        if (plane_loop_disk(s, loop)) return false;
    }
    return true;
}

std::string to_string(const ClassKey& k) {
    switch (k.kind) {
        case ClassKey::Kind::Rejected:
            return "rejected";
        case ClassKey::Kind::Torus:
            return "(" + std::to_string(k.p) + "," + std::to_string(k.q) + ")";
        case ClassKey::Kind::Planar: {
            std::string out = "{";
            for (std::size_t i = 0; i < k.side.size(); ++i) {
                if (i) out += ",";
                out += std::to_string(k.side[i]);
            }
            return out + "}";
        }
    }
    return "";
}

ClassKey collapse_map_f(const Surface& s, const PolyCurve& c) {
    if (!c.closed()) throw UnsupportedSurface("isotopy keys are implemented for closed curves only");
    ClassKey key;
    if (parallelogram_torus(s) && s.holes.empty()) {
        Development dev = develop(s, c);
        Vec2 v = dev.holonomy.b;
        if (v == Vec2(0, 0)) return key;
        int p, q;
        if (square_lattice(s)) {
            p = to_int(v.x);
            q = to_int(v.y);
        } else {
            const Vec2& g0 = s.glue[0].b;
            const Vec2& g1 = s.glue[1].b;
            Rational det = cross(g0, g1);
            p = to_int(cross(v, g1) / det);
            q = to_int(cross(g0, v) / det);
        }
        if (p < 0 || (p == 0 && q < 0)) {
            p = -p;
            q = -q;
        }
        key.kind = ClassKey::Kind::Torus;
        key.p = p;
        key.q = q;
        return key;
    }
    if (!s.has_identifications()) {
        const int h = static_cast<int>(s.holes.size());
        std::vector<Vec2> loop;
        for (const Segment& seg : c.segs) loop.push_back(seg.a);
        std::vector<int> inside, outside{0};
        for (int k = 0; k < h; ++k) {
            (winding_number(loop, interior_point(s.holes[k])) != 0 ? inside : outside).push_back(k + 1);
        }
        if (inside.size() < 2 || outside.size() < 2) return key;
        key.kind = ClassKey::Kind::Planar;
        if (inside.size() != outside.size()) {
            key.side = inside.size() < outside.size() ? inside : outside;
        } else {
            key.side = std::min(inside, outside);
        }
        return key;
    }
    throw UnsupportedSurface("isotopy keys are implemented for the closed torus and planar surfaces");
}

bool keys_compatible(const Surface& s, const ClassKey& a, const ClassKey& b) {
    if (a.kind == ClassKey::Kind::Rejected || b.kind == ClassKey::Kind::Rejected) return false;
    if (a == b) return true;
    if (a.kind != b.kind || a.kind == ClassKey::Kind::Torus) return false;
    const int total = static_cast<int>(s.holes.size()) + 1;
    auto complement = [&](const std::vector<int>& side) {
        std::vector<int> out;
        for (int k = 0; k < total; ++k) {
            if (!std::binary_search(side.begin(), side.end(), k)) out.push_back(k);
        }
        return out;
    };
    auto disjoint = [](const std::vector<int>& x, const std::vector<int>& y) {
        std::vector<int> common;
        std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
        return common.empty();
    };
    std::vector<int> ac = complement(a.side);
    std::vector<int> bc = complement(b.side);
    return disjoint(a.side, b.side) || disjoint(a.side, bc) || disjoint(ac, b.side) || disjoint(ac, bc);
}

}  // namespace finecurve
