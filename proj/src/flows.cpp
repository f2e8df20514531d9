#include "finecurve/flows.hpp"

#include "finecurve/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace finecurve {

namespace {

std::string handle_name(const char* prefix, std::size_t i) { return prefix + std::to_string(i); }

Witness disjoint_witness(std::string a, std::string b) { return {"disjoint", std::move(a), std::move(b), 0, 0, 0}; }

Witness count_witness(std::string kind, std::string a, std::string b, int count) {
    return {std::move(kind), std::move(a), std::move(b), count, 0, 0};
}

// Disjointness facts every replacement must carry: the new curve misses the
// old one and every curve the old one missed. Pushoffs compare against the
// family they were computed from instead of the current state.
std::vector<Witness> replacement_witnesses(const Surface& s, const std::vector<NamedCurve>& state, std::size_t idx,
                                           const PolyCurve& fresh, const std::vector<NamedCurve>* reference = nullptr) {
    const std::vector<NamedCurve>& ref = reference ? *reference : state;
    std::vector<Witness> out{disjoint_witness("new", "old")};
    for (std::size_t j = 0; j < state.size(); ++j) {
        if (j == idx) continue;
        if (curves_disjoint(s, ref[idx].curve, ref[j].curve)) {
            if (!curves_disjoint(s, fresh, state[j].curve)) throw InternalError("replacement breaks a disjoint pair");
            out.push_back(disjoint_witness("new", state[j].handle));
        }
    }
    return out;
}

void check_map_simplicial(const Surface& s, const SphereMap& m, const std::map<std::string, PolyCurve>& curves) {
    if (static_cast<int>(m.image.size()) != m.sphere.vertex_count()) {
        throw ContractError("sphere map must assign one curve to every sphere vertex");
    }
    for (const std::string& h : m.image) {
        if (!curves.count(h)) throw ContractError("sphere map uses unknown handle " + h);
    }
    for (const Simplex& sigma : m.sphere.maximal_simplices()) {
        for (std::size_t a = 0; a < sigma.size(); ++a) {
            for (std::size_t b = a + 1; b < sigma.size(); ++b) {
                const std::string& ha = m.image[sigma[a]];
                const std::string& hb = m.image[sigma[b]];
                if (ha != hb && !curves_disjoint(s, curves.at(ha), curves.at(hb))) {
                    throw ContractError("sphere map is not simplicial: " + ha + " meets " + hb);
                }
            }
        }
    }
}

std::map<std::string, PolyCurve> as_map(const std::vector<NamedCurve>& v) {
    std::map<std::string, PolyCurve> out;
    for (const NamedCurve& n : v) out[n.handle] = n.curve;
    return out;
}

Json witness_to_json(const Witness& w) {
    Json out;
    out["kind"] = w.kind;
    if (w.kind == "near") {
        out["radius"] = rational_to_json(w.radius);
        out["t"] = rational_to_json(w.t);
        return out;
    }
    out["a"] = w.a;
    if (w.kind == "disjoint" || w.kind == "crossings") out["b"] = w.b;
    if (w.kind == "crossings" || w.kind == "beta-crossings") out["count"] = w.count;
    return out;
}

std::string string_field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name) || !j.at(name).is_string()) {
        throw InputError(std::string("missing string field \"") + name + "\"");
    }
    return j.at(name).get<std::string>();
}

Witness witness_from_json(const Json& j) {
    Witness w;
    w.kind = string_field(j, "kind");
    if (w.kind == "near") {
        if (!j.contains("radius") || !j.contains("t")) throw InputError("near witness needs radius and t");
        w.radius = rational_from_json(j.at("radius"));
        w.t = rational_from_json(j.at("t"));
        return w;
    }
    w.a = string_field(j, "a");
    if (w.kind == "disjoint" || w.kind == "crossings") w.b = string_field(j, "b");
    if (w.kind == "crossings" || w.kind == "beta-crossings") {
        if (!j.contains("count") || !j.at("count").is_number_integer()) throw InputError("witness count missing");
        w.count = j.at("count").get<int>();
    }
    if (w.kind != "disjoint" && w.kind != "crossings" && w.kind != "beta-crossings" && w.kind != "essential") {
        throw InputError("unknown witness kind " + w.kind);
    }
    return w;
}

Json named_to_json(const Surface& s, const std::vector<NamedCurve>& v) {
    Json out = Json::array();
    for (const NamedCurve& n : v) {
        Json e;
        e["handle"] = n.handle;
        e["curve"] = curve_to_json(s, n.curve);
        out.push_back(e);
    }
    return out;
}

std::vector<NamedCurve> named_from_json(const Surface& s, const Json& j) {
    if (!j.is_array()) throw InputError("curve list must be an array");
    std::vector<NamedCurve> out;
    for (const Json& e : j) {
        if (!e.contains("curve")) throw InputError("curve entry needs a curve");
        out.push_back({string_field(e, "handle"), curve_from_json(s, e.at("curve"))});
    }
    return out;
}

struct BoundarySample {
    Vec2 point;
    int component;
};

std::vector<BoundarySample> boundary_samples(const Surface& s) {
    const Rational t(513, 1024);
    std::vector<BoundarySample> out;
    for (int k = 0; k < s.edge_count(); ++k) {
        if (!s.identified(k)) out.push_back({s.edge(k).at(t), s.edge_component[k]});
    }
    for (std::size_t h = 0; h < s.holes.size(); ++h) {
        const auto& hole = s.holes[h];
        for (std::size_t e = 0; e < hole.size(); ++e) {
            Segment seg{hole[e], hole[(e + 1) % hole.size()]};
            out.push_back({seg.at(t), s.outer_components + static_cast<int>(h)});
        }
    }
    return out;
}

bool endpoints_clear(const Surface& s, const PolyCurve& beta, const std::vector<PolyCurve>& arcs) {
    for (const PolyCurve& g : arcs) {
        for (const Vec2* p : {&g.segs.front().a, &g.segs.back().b}) {
            if (s.same_point(*p, beta.segs.front().a) || s.same_point(*p, beta.segs.back().b)) return false;
        }
    }
    return true;
}

bool all_transverse(const Surface& s, const PolyCurve& beta, const std::vector<PolyCurve>& arcs) {
    return std::all_of(arcs.begin(), arcs.end(), [&](const PolyCurve& g) { return transverse_or_disjoint(s, g, beta); });
}

}  // namespace

SimplicialComplex fiber_subcomplex(const Surface& s, const std::vector<PolyCurve>& curves,
                                   const std::vector<ClassKey>& simplex) {
    for (std::size_t a = 0; a < simplex.size(); ++a) {
        if (simplex[a].kind == ClassKey::Kind::Rejected) throw ContractError("a rejected key cannot span a simplex");
        for (std::size_t b = a + 1; b < simplex.size(); ++b) {
            if (!keys_compatible(s, simplex[a], simplex[b])) {
                throw ContractError("keys " + to_string(simplex[a]) + " and " + to_string(simplex[b]) +
                                    " do not span a simplex");
            }
        }
    }
    std::vector<PolyCurve> kept;
    std::vector<std::string> handles;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        ClassKey k = collapse_map_f(s, curves[i]);
        if (k.kind == ClassKey::Kind::Rejected) throw ContractError("curve c" + std::to_string(i) + " has a rejected key");
        if (std::find(simplex.begin(), simplex.end(), k) == simplex.end()) continue;
        kept.push_back(curves[i]);
        handles.push_back(handle_name("c", i));
    }
    return fine_subcomplex(s, kept, handles);
}

FlowCertificate flow_sphere_to_star(const Surface& s, const SimplicialComplex& sphere, int dimension,
                                    const std::vector<PolyCurve>& curves, const std::vector<int>& image) {
    SphereCheck sc = check_sphere(sphere, dimension);
    if (!sc.valid) throw ContractError("sphere not validated: " + sc.message);
    if (curves.empty()) throw ContractError("sphere map has no image curves");
    FlowCertificate cert;
    cert.kind = "flow-star";
    cert.surface = s;
    std::vector<NamedCurve> state;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        if (!curves[i].closed()) throw ContractError("star flow works on closed curves");
        require_valid(s, curves[i], handle_name("c", i));
        state.push_back({handle_name("c", i), curves[i]});
    }
    std::vector<ClassKey> keys;
    for (const PolyCurve& c : curves) {
        keys.push_back(collapse_map_f(s, c));
        if (keys.back().kind == ClassKey::Kind::Rejected) throw ContractError("image contains an inessential or peripheral curve");
    }
    for (std::size_t i = 0; i < curves.size(); ++i) {
        for (std::size_t j = i + 1; j < curves.size(); ++j) {
            if (!keys_compatible(s, keys[i], keys[j])) throw ContractError("image is not inside one fiber");
            if (intersect_curves(s, curves[i], curves[j]).identical) throw ContractError("image curves must be distinct");
        }
    }
    SphereMap m{sphere, dimension, {}};
    for (int v : image) {
        if (v < 0 || v >= static_cast<int>(curves.size())) throw ContractError("sphere map points outside the curve list");
        m.image.push_back(handle_name("c", v));
    }
    check_map_simplicial(s, m, as_map(state));
    cert.map = m;
    cert.initial = state;

    auto push_step = [&](std::size_t idx, PolyCurve fresh, const char* reason, std::vector<Witness> extra,
                         const std::vector<NamedCurve>* reference) {
        FlowStep step;
        step.index = static_cast<int>(cert.steps.size());
        step.replace = state[idx].handle;
        step.reason = reason;
        step.witnesses = std::move(extra);
        auto w = replacement_witnesses(s, state, idx, fresh, reference);
        step.witnesses.insert(step.witnesses.end(), w.begin(), w.end());
        step.with = fresh;
        state[idx].curve = std::move(fresh);
        cert.steps.push_back(std::move(step));
    };

    // Normalise to pairwise crossing-or-disjoint position first.
    bool normal = true;
    for (std::size_t i = 0; i < state.size() && normal; ++i) {
        for (std::size_t j = i + 1; j < state.size() && normal; ++j) {
            normal = transverse_or_disjoint(s, state[i].curve, state[j].curve);
        }
    }
    if (!normal) {
        std::vector<PolyCurve> cur;
        for (const NamedCurve& n : state) cur.push_back(n.curve);
        std::vector<PolyCurve> pushed = pushoff_family(s, cur);
        for (std::size_t i = 0; i < pushed.size(); ++i) {
            if (pushed[i] != state[i].curve) push_step(i, pushed[i], "pushoff", {}, &cert.initial);
        }
    }

    std::size_t center = 0;
    int best = -1;
    for (std::size_t i = 0; i < state.size(); ++i) {
        int total = 0;
        for (std::size_t j = 0; j < state.size(); ++j) {
            if (j != i) total += intersect_curves(s, state[i].curve, state[j].curve).crossing_count;
        }
        if (total >= best) {
            best = total;
            center = i;
        }
    }
    cert.star_center = state[center].handle;

    for (;;) {
        std::vector<std::size_t> idx;
        std::vector<PolyCurve> family;
        for (std::size_t i = 0; i < state.size(); ++i) {
            if (i == center) continue;
            idx.push_back(i);
            family.push_back(state[i].curve);
        }
        auto b = find_innermost_bigon(s, family, state[center].curve);
        if (!b) break;
        std::vector<PolyCurve> out = bigon_surgery(s, family, *b);
        const std::size_t target = idx[b->member];
        const int before = intersect_curves(s, state[target].curve, state[center].curve).crossing_count;
        std::vector<Witness> extra{count_witness("crossings", "old", cert.star_center, before),
                                   count_witness("crossings", "new", cert.star_center, before - 2)};
        push_step(target, out[b->member], "bigon-surgery", std::move(extra), nullptr);
    }
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (i != center && !curves_disjoint(s, state[i].curve, state[center].curve)) {
            throw InternalError("no bigon left but " + state[i].handle + " still meets the center");
        }
    }
    cert.final_set = state;
    return cert;
}

bool hatcher_admissible(const Surface& s) {
    const int g = s.genus;
    const int b = s.boundary_count;
    if (b < 1) return false;
    if (g == 0 && b <= 4) return false;
    if (g == 1 && b == 1) return false;
    return true;
}

PolyCurve auto_beta(const Surface& s, const std::vector<PolyCurve>& arcs) {
    struct Candidate {
        Rational length;
        PolyCurve arc;
    };
    std::vector<Candidate> candidates;
    auto samples = boundary_samples(s);
    auto maps = neighbourhood_maps(s);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        for (std::size_t j = 0; j < samples.size(); ++j) {
            if (samples[i].component >= samples[j].component) continue;
            for (const Similarity& m : maps) {
                Vec2 far = m.apply(samples[j].point);
                auto c = fold(s, CurveKind::Arc, {samples[i].point, far});
                if (!c || !validate_curve(s, *c).ok) continue;
                candidates.push_back({norm_sq(far - samples[i].point), std::move(*c)});
            }
        }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.length < b.length; });
    for (const Candidate& cand : candidates) {
        if (!endpoints_clear(s, cand.arc, arcs)) continue;
        if (all_transverse(s, cand.arc, arcs)) return cand.arc;
        try {
            PolyCurve beta = perturb(s, cand.arc, arcs, Rational(1, 64));
            if (endpoints_clear(s, beta, arcs) && all_transverse(s, beta, arcs)) return beta;
        } catch (const InternalError&) {
        }
    }
    throw InternalError("no admissible beta could be constructed");
}

FlowCertificate hatcher_flow(const Surface& s, const std::vector<PolyCurve>& arcs, const std::optional<PolyCurve>& beta,
                             const std::optional<SphereMap>& map) {
    if (!hatcher_admissible(s)) {
        throw ContractError("surface with genus " + std::to_string(s.genus) + " and " +
                            std::to_string(s.boundary_count) + " boundary components is excluded from the arc flow");
    }
    FlowCertificate cert;
    cert.kind = "hatcher-flow";
    cert.surface = s;
    std::vector<NamedCurve> state;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        if (arcs[i].closed()) throw ContractError("the arc flow needs arcs");
        require_valid(s, arcs[i], handle_name("a", i));
        if (!essential_arc(s, arcs[i])) throw ContractError("arc a" + std::to_string(i) + " is inessential");
        for (std::size_t j = 0; j < i; ++j) {
            if (intersect_curves(s, arcs[i], arcs[j]).identical) throw ContractError("arcs must be distinct");
        }
        state.push_back({handle_name("a", i), arcs[i]});
    }
    if (map) {
        SphereCheck sc = check_sphere(map->sphere, map->dimension);
        if (!sc.valid) throw ContractError("sphere not validated: " + sc.message);
        check_map_simplicial(s, *map, as_map(state));
        cert.map = map;
    }
    PolyCurve b = beta ? *beta : auto_beta(s, arcs);
    if (b.closed()) throw ContractError("beta must be an arc");
    require_valid(s, b, "beta");
    if (!essential_arc(s, b)) throw ContractError("beta is inessential");
    cert.beta = b;
    cert.initial = state;
    cert.star_center = "beta";

    auto current = [&] {
        std::vector<PolyCurve> out;
        for (const NamedCurve& n : state) out.push_back(n.curve);
        return out;
    };
    std::size_t total = beta_intersections(s, current(), b).size();
    while (total > 0) {
        ArcSurgery group = arc_surgery(s, current(), b);
        for (std::size_t k = 0; k < group.replaced.size(); ++k) {
            const std::size_t i = group.replaced[k];
            const PolyCurve& fresh = group.arcs[i];
            FlowStep step;
            step.index = static_cast<int>(cert.steps.size());
            step.replace = state[i].handle;
            step.reason = "arc-surgery";
            int old_count = static_cast<int>(intersect_curves(s, state[i].curve, b).crossing_count);
            int new_count = static_cast<int>(intersect_curves(s, fresh, b).crossing_count);
            step.witnesses.push_back(count_witness("beta-crossings", "old", "", old_count));
            step.witnesses.push_back(count_witness("beta-crossings", "new", "", new_count));
            step.witnesses.push_back({"essential", "new", "", 0, 0, 0});
            step.witnesses.push_back({"near", "", "", 0, group.radii[k], group.t});
            auto w = replacement_witnesses(s, state, i, fresh);
            step.witnesses.insert(step.witnesses.end(), w.begin(), w.end());
            step.with = fresh;
            state[i].curve = fresh;
            cert.steps.push_back(std::move(step));
        }
        std::size_t after = beta_intersections(s, current(), b).size();
        if (after >= total) throw InternalError("arc surgery did not reduce the intersections with beta");
        total = after;
    }
    cert.final_set = state;
    return cert;
}

Verification verify_certificate(const FlowCertificate& cert) {
    Verification res;
    auto fail = [&](int at, std::string why) {
        res.ok = false;
        res.failed_at = at;
        res.message = std::move(why);
        return res;
    };
    const Surface& s = cert.surface;
    const bool star_flow = cert.kind == "flow-star";
    if (!star_flow && cert.kind != "hatcher-flow") return fail(-1, "unknown certificate kind " + cert.kind);

    std::map<std::string, PolyCurve> state;
    try {
        for (const NamedCurve& n : cert.initial) {
            if (state.count(n.handle)) return fail(-1, "duplicate handle " + n.handle);
            if (n.curve.closed() != star_flow) return fail(-1, n.handle + " has the wrong curve kind");
            require_valid(s, n.curve, n.handle);
            state[n.handle] = n.curve;
        }
        if (star_flow) {
            if (!state.count(cert.star_center)) return fail(-1, "unknown star center " + cert.star_center);
            if (!cert.map) return fail(-1, "star flow certificate lacks its sphere");
        } else {
            if (!cert.beta || cert.beta->closed()) return fail(-1, "arc flow certificate lacks beta");
            require_valid(s, *cert.beta, "beta");
            if (!hatcher_admissible(s)) return fail(-1, "surface is excluded from the arc flow");
            if (cert.star_center != "beta") return fail(-1, "arc flow must end in the star of beta");
        }
        if (cert.map) {
            SphereCheck sc = check_sphere(cert.map->sphere, cert.map->dimension);
            if (!sc.valid) return fail(-1, "sphere invalid: " + sc.message);
            check_map_simplicial(s, *cert.map, state);
        }
        if (star_flow) {
            std::vector<ClassKey> keys;
            for (const auto& [h, c] : state) {
                keys.push_back(collapse_map_f(s, c));
                if (keys.back().kind == ClassKey::Kind::Rejected) return fail(-1, h + " has a rejected key");
            }
            for (std::size_t a = 0; a < keys.size(); ++a) {
                for (std::size_t b = a + 1; b < keys.size(); ++b) {
                    if (!keys_compatible(s, keys[a], keys[b])) return fail(-1, "image is not inside one fiber");
                }
            }
        }
    } catch (const std::exception& e) {
        return fail(-1, e.what());
    }

    const std::map<std::string, PolyCurve> initial = state;
    std::set<std::string> pushed;
    bool surgery_seen = false;
    for (std::size_t k = 0; k < cert.steps.size(); ++k) {
        const FlowStep& step = cert.steps[k];
        const int at = static_cast<int>(k);
        try {
            if (step.index != at) return fail(at, "step carries index " + std::to_string(step.index));
            if (!state.count(step.replace)) return fail(at, "unknown handle " + step.replace);
            const PolyCurve old = state.at(step.replace);
            const PolyCurve& fresh = step.with;
            if (fresh.kind != old.kind) return fail(at, "replacement changes the curve kind");
            if (!validate_curve(s, fresh).ok) return fail(at, "replacement is not a valid curve");

            auto resolve = [&](const std::string& h) -> const PolyCurve& {
                if (h == "old") return old;
                if (h == "new") return fresh;
                if (h == "beta" && cert.beta) return *cert.beta;
                auto it = state.find(h);
                if (it == state.end()) throw InputError("witness names unknown handle " + h);
                return it->second;
            };

            if (!curves_disjoint(s, fresh, old)) return fail(at, "replacement meets the curve it replaces");
            const bool pushoff_step = step.reason == "pushoff";
            if (pushoff_step && !pushed.insert(step.replace).second) return fail(at, step.replace + " pushed off twice");
            for (const auto& [h, c] : state) {
                if (h == step.replace) continue;
                if (pushoff_step) {
                    if (curves_disjoint(s, initial.at(step.replace), initial.at(h)) &&
                        (!curves_disjoint(s, fresh, c) || !curves_disjoint(s, fresh, initial.at(h)))) {
                        return fail(at, "pushoff meets " + h + " although the originals were disjoint");
                    }
                } else if (curves_disjoint(s, old, c) && !curves_disjoint(s, fresh, c)) {
                    return fail(at, "replacement meets " + h + " although the old curve did not");
                }
            }

            std::optional<Rational> first_t;
            if (step.reason == "pushoff") {
                if (!star_flow || surgery_seen) return fail(at, "pushoff steps must open a star flow");
            } else if (step.reason == "bigon-surgery") {
                if (!star_flow) return fail(at, "bigon surgery in an arc flow");
                surgery_seen = true;
                if (step.replace == cert.star_center) return fail(at, "the center cannot be replaced");
                const PolyCurve& center = state.at(cert.star_center);
                IntersectionReport before = intersect_curves(s, old, center);
                IntersectionReport after = intersect_curves(s, fresh, center);
                if (!before.transverse() || !after.transverse()) return fail(at, "touching contact with the center");
                if (after.crossing_count != before.crossing_count - 2) {
                    return fail(at, "crossings with the center drop by " +
                                        std::to_string(before.crossing_count - after.crossing_count) + ", not 2");
                }
                if (collapse_map_f(s, fresh) != collapse_map_f(s, old)) return fail(at, "surgery changed the class");
            } else if (step.reason == "arc-surgery") {
                if (star_flow) return fail(at, "arc surgery in a star flow");
                std::vector<PolyCurve> arcs;
                std::vector<std::string> names;
                for (const auto& [h, c] : state) {
                    arcs.push_back(c);
                    names.push_back(h);
                }
                auto order = beta_intersections(s, arcs, *cert.beta);
                if (order.empty()) return fail(at, "no intersection with beta is left to resolve");
                first_t = order.front().first;
                bool through_first = false;
                for (const auto& [t, i] : order) {
                    if (t == *first_t && names[i] == step.replace) through_first = true;
                }
                if (!through_first) return fail(at, step.replace + " does not pass the first intersection with beta");
                IntersectionReport ob = intersect_curves(s, old, *cert.beta);
                auto nb = beta_intersections(s, {fresh}, *cert.beta);
                if (static_cast<int>(nb.size()) > ob.crossing_count - 1) {
                    return fail(at, "intersections with beta did not drop");
                }
                if (!essential_arc(s, fresh)) return fail(at, "replacement arc is inessential");
                bool near_ok = false;
                for (const Witness& w : step.witnesses) {
                    if (w.kind == "near" && w.t == *first_t && w.radius > 0 &&
                        near_old_or_beta(s, old, *cert.beta, w.t, fresh, w.radius)) {
                        near_ok = true;
                    }
                }
                if (!near_ok) return fail(at, "closeness to the old arc and beta is not witnessed");
            } else {
                return fail(at, "unknown reason " + step.reason);
            }

            for (std::size_t wi = 0; wi < step.witnesses.size(); ++wi) {
                const Witness& w = step.witnesses[wi];
                const std::string tag = "witness " + std::to_string(wi) + " (" + w.kind + ")";
                bool holds = false;
                if (w.kind == "disjoint") {
                    holds = curves_disjoint(s, resolve(w.a), resolve(w.b));
                } else if (w.kind == "crossings") {
                    IntersectionReport r = intersect_curves(s, resolve(w.a), resolve(w.b));
                    holds = r.transverse() && r.crossing_count == w.count;
                } else if (w.kind == "beta-crossings") {
                    if (!cert.beta) return fail(at, tag + " needs beta");
                    IntersectionReport r = intersect_curves(s, resolve(w.a), *cert.beta);
                    holds = r.transverse() && r.crossing_count == w.count;
                } else if (w.kind == "essential") {
                    holds = essential_arc(s, resolve(w.a));
                } else if (w.kind == "near") {
                    holds = cert.beta && (!first_t || w.t == *first_t) &&
                            near_old_or_beta(s, old, *cert.beta, w.t, fresh, w.radius);
                }
                if (!holds) return fail(at, tag + " does not hold");
            }

            if (cert.map) {
                std::map<std::string, PolyCurve> next = state;
                next[step.replace] = fresh;
                for (const Simplex& sigma : cert.map->sphere.maximal_simplices()) {
                    std::vector<const PolyCurve*> joint;
                    for (int v : sigma) {
                        joint.push_back(&state.at(cert.map->image[v]));
                        joint.push_back(&next.at(cert.map->image[v]));
                    }
                    for (std::size_t a = 0; a < joint.size(); ++a) {
                        for (std::size_t b = a + 1; b < joint.size(); ++b) {
                            if (*joint[a] == *joint[b]) continue;
                            if (!curves_disjoint(s, *joint[a], *joint[b])) {
                                return fail(at, "straight-line homotopy leaves the complex");
                            }
                        }
                    }
                }
            }
            state[step.replace] = fresh;
        } catch (const std::exception& e) {
            return fail(at, e.what());
        }
    }

    const int end = static_cast<int>(cert.steps.size());
    try {
        std::map<std::string, PolyCurve> claimed;
        for (const NamedCurve& n : cert.final_set) claimed[n.handle] = n.curve;
        if (claimed != state) return fail(end, "final set differs from the replayed steps");
        if (star_flow) {
            const PolyCurve& center = state.at(cert.star_center);
            for (const auto& [h, c] : state) {
                if (h != cert.star_center && !curves_disjoint(s, c, center)) {
                    return fail(end, h + " is outside the star of " + cert.star_center);
                }
            }
        } else {
            for (const auto& [h, c] : state) {
                if (!curves_disjoint(s, c, *cert.beta)) return fail(end, h + " still meets beta");
            }
        }
    } catch (const std::exception& e) {
        return fail(end, e.what());
    }
    return res;
}

Json certificate_to_json(const FlowCertificate& cert) {
    const Surface& s = cert.surface;
    Json out;
    out["kind"] = cert.kind;
    out["surface"] = surface_to_json(s);
    if (cert.map) {
        Json sphere = complex_to_json(cert.map->sphere);
        sphere["dimension"] = cert.map->dimension;
        out["sphere"] = sphere;
        Json m = Json::object();
        for (int v = 0; v < cert.map->sphere.vertex_count(); ++v) m[cert.map->sphere.vertices()[v]] = cert.map->image[v];
        out["map"] = m;
    }
    if (cert.beta) out["beta"] = curve_to_json(s, *cert.beta);
    out["initial"] = named_to_json(s, cert.initial);
    Json steps = Json::array();
    for (const FlowStep& step : cert.steps) {
        Json e;
        e["index"] = step.index;
        e["replace"] = step.replace;
        e["with"] = curve_to_json(s, step.with);
        e["reason"] = step.reason;
        Json ws = Json::array();
        for (const Witness& w : step.witnesses) ws.push_back(witness_to_json(w));
        e["witnesses"] = ws;
        steps.push_back(e);
    }
    out["steps"] = steps;
    out["final"] = named_to_json(s, cert.final_set);
    out["star_center"] = cert.star_center;
    return out;
}

FlowCertificate certificate_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("certificate must be a JSON object");
    FlowCertificate cert;
    cert.kind = string_field(j, "kind");
    if (!j.contains("surface")) throw InputError("certificate lacks its surface");
    cert.surface = surface_from_json(j.at("surface"));
    const Surface& s = cert.surface;
    if (j.contains("sphere")) {
        const Json& sp = j.at("sphere");
        SphereMap m;
        m.sphere = complex_from_json(sp);
        if (!sp.contains("dimension") || !sp.at("dimension").is_number_integer()) {
            throw InputError("sphere needs an integer dimension");
        }
        m.dimension = sp.at("dimension").get<int>();
        if (!j.contains("map") || !j.at("map").is_object()) throw InputError("sphere without a vertex map");
        for (const std::string& v : m.sphere.vertices()) {
            if (!j.at("map").contains(v)) throw InputError("map misses sphere vertex " + v);
            m.image.push_back(string_field(j.at("map"), v.c_str()));
        }
        cert.map = std::move(m);
    }
    if (j.contains("beta")) cert.beta = curve_from_json(s, j.at("beta"));
    if (!j.contains("initial") || !j.contains("steps") || !j.contains("final")) {
        throw InputError("certificate needs initial, steps and final");
    }
    cert.initial = named_from_json(s, j.at("initial"));
    if (!j.at("steps").is_array()) throw InputError("steps must be an array");
    for (const Json& e : j.at("steps")) {
        FlowStep step;
        if (!e.contains("index") || !e.at("index").is_number_integer()) throw InputError("step needs an index");
        step.index = e.at("index").get<int>();
        step.replace = string_field(e, "replace");
        if (!e.contains("with")) throw InputError("step needs a replacement curve");
        step.with = curve_from_json(s, e.at("with"));
        step.reason = string_field(e, "reason");
        if (e.contains("witnesses")) {
            if (!e.at("witnesses").is_array()) throw InputError("witnesses must be an array");
            for (const Json& w : e.at("witnesses")) step.witnesses.push_back(witness_from_json(w));
        }
        cert.steps.push_back(std::move(step));
    }
    cert.final_set = named_from_json(s, j.at("final"));
    cert.star_center = string_field(j, "star_center");
    return cert;
}

}  // namespace finecurve
