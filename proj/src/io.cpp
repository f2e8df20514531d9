#include "finecurve/io.hpp"

#include "finecurve/errors.hpp"

#include <fstream>
#include <sstream>

namespace finecurve {

namespace {

const Json& field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw InputError(std::string("missing field \"") + name + "\"");
    return j.at(name);
}

int int_from_json(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
    return j.get<int>();
}

std::vector<Vec2> polygon_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("polygon must be an array of points");
    std::vector<Vec2> out;
    for (const Json& p : j) {
        if (p.is_array()) {
            if (p.size() != 2) throw InputError("polygon point must have two coordinates");
            out.emplace_back(rational_from_json(p[0]), rational_from_json(p[1]));
        } else {
            out.push_back(point_from_json(p));
        }
    }
    return out;
}

Json polygon_to_json(const std::vector<Vec2>& poly) {
    Json out = Json::array();
    for (const Vec2& p : poly) out.push_back(Json::array({rational_to_json(p.x), rational_to_json(p.y)}));
    return out;
}

}  // namespace

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << dump(j);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json rational_to_json(const Rational& r) { return format_rational(r); }

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw InputError("rationals must be written as \"p/q\" strings");
}

Json point_to_json(const Vec2& p) {
    Json out;
    out["x"] = rational_to_json(p.x);
    out["y"] = rational_to_json(p.y);
    return out;
}

Vec2 point_from_json(const Json& j) {
    if (j.is_array() && j.size() == 2) return {rational_from_json(j[0]), rational_from_json(j[1])};
    return {rational_from_json(field(j, "x")), rational_from_json(field(j, "y"))};
}

Json surface_to_json(const Surface& s) {
    Json out;
    out["genus"] = s.spec.genus;
    out["boundary"] = s.spec.boundary;
    out["polygon"] = polygon_to_json(s.spec.polygon);
    Json ids = Json::array();
    for (const auto& id : s.spec.identifications) ids.push_back(Json::array({id[0], id[1], id[2]}));
    out["identifications"] = ids;
    Json holes = Json::array();
    for (const auto& h : s.spec.holes) holes.push_back(polygon_to_json(h));
    out["holes"] = holes;
    return out;
}

Surface surface_from_json(const Json& j) {
    SurfaceSpec spec;
    spec.genus = int_from_json(field(j, "genus"), "genus");
    spec.boundary = int_from_json(field(j, "boundary"), "boundary");
    spec.polygon = polygon_from_json(field(j, "polygon"));
    if (j.contains("identifications")) {
        const Json& ids = j.at("identifications");
        if (!ids.is_array()) throw InputError("identifications must be an array");
        for (const Json& id : ids) {
            if (!id.is_array() || id.size() != 3) throw InputError("identification must be [i, j, flag]");
            spec.identifications.push_back({int_from_json(id[0], "edge index"), int_from_json(id[1], "edge index"),
                                            int_from_json(id[2], "identification flag")});
        }
    }
    if (j.contains("holes")) {
        const Json& holes = j.at("holes");
        if (!holes.is_array()) throw InputError("holes must be an array");
        for (const Json& h : holes) spec.holes.push_back(polygon_from_json(h));
    }
    return build_surface(spec);
}

Json curve_to_json(const Surface& s, const PolyCurve& c) {
    Json out;
    out["kind"] = kind_name(c.kind);
    Json pts = Json::array();
    for (const Vec2& p : curve_waypoints(s, c)) pts.push_back(point_to_json(p));
    out["waypoints"] = pts;
    return out;
}

PolyCurve curve_from_json(const Surface& s, const Json& j) {
    const Json& kind = field(j, "kind");
    if (!kind.is_string()) throw InputError("curve kind must be a string");
    CurveKind k;
    if (kind == "closed") {
        k = CurveKind::Closed;
    } else if (kind == "arc") {
        k = CurveKind::Arc;
    } else {
        throw InputError("curve kind must be \"closed\" or \"arc\"");
    }
    const Json& wps = field(j, "waypoints");
    if (!wps.is_array()) throw InputError("waypoints must be an array");
    std::vector<Vec2> pts;
    for (const Json& p : wps) pts.push_back(point_from_json(p));
    if (pts.size() < 2) throw InputError("a curve needs at least two waypoints");
    return curve_from_waypoints(s, k, pts);
}

std::vector<PolyCurve> curves_from_json(const Surface& s, const Json& j) {
    const Json* list = &j;
    if (j.is_object()) {
        if (j.contains("curves")) {
            list = &j.at("curves");
        } else if (j.contains("arcs")) {
            list = &j.at("arcs");
        } else {
            return {curve_from_json(s, j)};
        }
    }
    if (!list->is_array()) throw InputError("expected an array of curves");
    std::vector<PolyCurve> out;
    for (const Json& c : *list) out.push_back(curve_from_json(s, c));
    return out;
}

Json curves_to_json(const Surface& s, const std::vector<PolyCurve>& cs) {
    Json out = Json::array();
    for (const PolyCurve& c : cs) out.push_back(curve_to_json(s, c));
    return out;
}

Json complex_to_json(const SimplicialComplex& x) {
    Json out;
    out["vertices"] = x.vertices();
    out["maximal_simplices"] = named_maximal(x);
    return out;
}

SimplicialComplex complex_from_json(const Json& j) {
    const Json& vs = field(j, "vertices");
    if (!vs.is_array()) throw InputError("vertices must be an array");
    std::vector<std::string> names;
    for (const Json& v : vs) {
        if (v.is_string()) {
            names.push_back(v.get<std::string>());
        } else if (v.is_number_integer()) {
            names.push_back(std::to_string(v.get<long>()));
        } else {
            throw InputError("vertex handles must be strings or integers");
        }
    }
    std::vector<Simplex> maximal;
    const Json& ms = field(j, "maximal_simplices");
    if (!ms.is_array()) throw InputError("maximal_simplices must be an array");
    for (const Json& m : ms) {
        if (!m.is_array()) throw InputError("a simplex must be an array of vertex handles");
        Simplex sigma;
        for (const Json& v : m) {
            std::string name = v.is_string() ? v.get<std::string>()
                               : v.is_number_integer() ? std::to_string(v.get<long>())
                                                       : throw InputError("vertex handles must be strings or integers");
            auto it = std::find(names.begin(), names.end(), name);
            if (it == names.end()) throw InputError("simplex uses unknown vertex " + name);
            sigma.push_back(static_cast<int>(it - names.begin()));
        }
        maximal.push_back(std::move(sigma));
    }
    try {
        return SimplicialComplex(names, maximal);
    } catch (const ContractError& e) {
        throw InputError(e.what());
    }
}

Json report_to_json(const IntersectionReport& r) {
    Json out;
    out["identical"] = r.identical;
    out["crossing_count"] = r.crossing_count;
    out["touching_count"] = r.identical ? 0 : r.touching_count();
    Json comps = Json::array();
    for (const auto& c : r.components) {
        Json e;
        e["class"] = c.contact == Contact::Crossing ? "crossing" : "touching";
        e["type"] = c.interval ? "interval" : "point";
        e["start"] = point_to_json(c.start);
        if (c.interval) e["end"] = point_to_json(c.end);
        e["u"] = Json::array({rational_to_json(c.u_start), rational_to_json(c.u_end)});
        e["v"] = Json::array({rational_to_json(c.v_start), rational_to_json(c.v_end)});
        comps.push_back(e);
    }
    out["components"] = comps;
    Json ps = Json::array();
    for (const Vec2& p : r.problem_set) ps.push_back(point_to_json(p));
    out["problem_set"] = ps;
    return out;
}

Json homology_to_json(const HomologyReport& h) {
    Json out;
    out["coefficients"] = h.coefficients == Coefficients::Integers ? "Z" : "Z2";
    out["reduced_betti"] = h.betti;
    if (h.coefficients == Coefficients::Integers) {
        Json tors = Json::array();
        for (const auto& t : h.torsion) {
            Json row = Json::array();
            for (const mpz_class& d : t) row.push_back(d.get_str());
            tors.push_back(row);
        }
        out["torsion"] = tors;
    }
    return out;
}

Json key_to_json(const ClassKey& k) {
    Json out;
    switch (k.kind) {
        case ClassKey::Kind::Rejected:
            out["kind"] = "rejected";
            break;
        case ClassKey::Kind::Torus:
            out["kind"] = "torus";
            out["class"] = Json::array({k.p, k.q});
            break;
        case ClassKey::Kind::Planar:
            out["kind"] = "planar";
            out["side"] = k.side;
            break;
    }
    out["text"] = to_string(k);
    return out;
}

}  // namespace finecurve
