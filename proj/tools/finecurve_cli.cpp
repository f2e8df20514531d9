#include "finecurve/complex.hpp"
#include "finecurve/errors.hpp"
#include "finecurve/flows.hpp"
#include "finecurve/io.hpp"
#include "finecurve/moves.hpp"
#include "finecurve/perturbation.hpp"
#include "finecurve/topology.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace finecurve;

namespace {

struct Options {
    std::string surface;
    std::string a;
    std::string b;
    std::string curves;
    std::string arcs;
    std::string beta = "auto";
    std::string sphere;
    std::string complex;
    std::string cert;
    std::string eps = "1/64";
    std::string coeff = "Z";
    std::string out;
    unsigned long seed = 0;
};

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw InputError("cannot write " + o.out);
    f << text;
}

Surface load_surface(const Options& o) {
    if (o.surface.empty()) throw InputError("--surface is required");
    return surface_from_json(read_json_file(o.surface));
}

PolyCurve load_curve(const Surface& s, const std::string& path, const char* flag) {
    if (path.empty()) throw InputError(std::string(flag) + " is required");
    return curve_from_json(s, read_json_file(path));
}

std::vector<PolyCurve> load_family(const Surface& s, const std::string& path, const char* flag) {
    if (path.empty()) throw InputError(std::string(flag) + " is required");
    return curves_from_json(s, read_json_file(path));
}

// Sphere file: a complex with "dimension" and an optional "map" from sphere
// vertex to curve index. Without a map vertex i goes to curve i.
struct SphereInput {
    SimplicialComplex sphere;
    int dimension = 0;
    std::vector<int> image;
};

SphereInput load_sphere(const std::string& path) {
    Json j = read_json_file(path);
    SphereInput in;
    in.sphere = complex_from_json(j);
    if (!j.contains("dimension") || !j.at("dimension").is_number_integer()) {
        throw InputError("sphere file needs an integer \"dimension\"");
    }
    in.dimension = j.at("dimension").get<int>();
    for (int v = 0; v < in.sphere.vertex_count(); ++v) {
        const std::string& name = in.sphere.vertices()[v];
        if (j.contains("map")) {
            const Json& m = j.at("map");
            if (!m.contains(name) || !m.at(name).is_number_integer()) {
                throw InputError("map needs a curve index for sphere vertex " + name);
            }
            in.image.push_back(m.at(name).get<int>());
        } else {
            in.image.push_back(v);
        }
    }
    return in;
}

int run_validate(const Options& o) {
    Surface s = load_surface(o);
    Json out;
    out["genus"] = s.genus;
    out["boundary"] = s.boundary_count;
    out["euler_characteristic"] = s.euler;
    out["edges"] = s.edge_count();
    bool all_ok = true;
    if (!o.curves.empty() || !o.a.empty()) {
        Json cs = Json::array();
        for (const PolyCurve& c : load_family(s, o.curves.empty() ? o.a : o.curves, "--curves")) {
            Json e;
            Diagnostics d = validate_curve(s, c);
            e["kind"] = kind_name(c.kind);
            e["valid"] = d.ok;
            if (!d.ok) {
                e["message"] = d.message;
                all_ok = false;
            } else if (c.closed()) {
                try {
                    e["key"] = key_to_json(collapse_map_f(s, c));
                } catch (const UnsupportedSurface& err) {
                    e["key"] = err.what();
                }
            } else {
                e["essential"] = essential_arc(s, c);
            }
            cs.push_back(e);
        }
        out["curves"] = cs;
    }
    emit(o, dump(out));
    return all_ok ? 0 : 2;
}

int run_intersect(const Options& o) {
    Surface s = load_surface(o);
    PolyCurve a = load_curve(s, o.a, "--a");
    PolyCurve b = load_curve(s, o.b, "--b");
    require_valid(s, a, "--a");
    require_valid(s, b, "--b");
    emit(o, dump(report_to_json(intersect_curves(s, a, b))));
    return 0;
}

int run_perturb(const Options& o) {
    Surface s = load_surface(o);
    PolyCurve y = load_curve(s, o.a, "--a");
    std::vector<PolyCurve> family = o.b.empty() ? std::vector<PolyCurve>{} : load_family(s, o.b, "--b");
    Rational eps = parse_rational(o.eps);
    if (eps <= 0) throw InputError("--eps must be positive");
    emit(o, dump(curve_to_json(s, perturb(s, y, family, eps))));
    return 0;
}

int run_pushoff_family(const Options& o) {
    Surface s = load_surface(o);
    std::vector<PolyCurve> family = load_family(s, o.curves, "--curves");
    emit(o, dump(curves_to_json(s, pushoff_family(s, family))));
    return 0;
}

int run_tighten(const Options& o) {
    Surface s = load_surface(o);
    PolyCurve u = load_curve(s, o.a, "--a");
    PolyCurve v = load_curve(s, o.b, "--b");
    PolyCurve tight = tighten_pair(s, u, v);
    Json out = curve_to_json(s, tight);
    out["crossing_count"] = intersect_curves(s, tight, v).crossing_count;
    emit(o, dump(out));
    return 0;
}

PolyCurve resolve_beta(const Surface& s, const Options& o, const std::vector<PolyCurve>& arcs) {
    if (o.beta == "auto") return auto_beta(s, arcs);
    return load_curve(s, o.beta, "--beta");
}

int run_arc_step(const Options& o) {
    Surface s = load_surface(o);
    std::vector<PolyCurve> arcs = load_family(s, o.arcs, "--arcs");
    PolyCurve beta = resolve_beta(s, o, arcs);
    ArcSurgery step = arc_surgery(s, arcs, beta);
    Json out;
    out["beta"] = curve_to_json(s, beta);
    out["replaced"] = step.replaced;
    out["arcs"] = curves_to_json(s, step.arcs);
    emit(o, dump(out));
    return 0;
}

int run_flow_star(const Options& o) {
    Surface s = load_surface(o);
    std::vector<PolyCurve> curves = load_family(s, o.curves, "--curves");
    if (o.sphere.empty()) throw InputError("--sphere is required");
    SphereInput in = load_sphere(o.sphere);
    emit(o, dump(certificate_to_json(flow_sphere_to_star(s, in.sphere, in.dimension, curves, in.image))));
    return 0;
}

int run_hatcher_flow(const Options& o) {
    Surface s = load_surface(o);
    if (!hatcher_admissible(s)) {
        throw ContractError("surface with genus " + std::to_string(s.genus) + " and " +
                            std::to_string(s.boundary_count) + " boundary components is excluded from the arc flow");
    }
    std::vector<PolyCurve> arcs = load_family(s, o.arcs, "--arcs");
    std::optional<PolyCurve> beta;
    if (o.beta != "auto") beta = load_curve(s, o.beta, "--beta");
    std::optional<SphereMap> map;
    if (!o.sphere.empty()) {
        SphereInput in = load_sphere(o.sphere);
        SphereMap m{in.sphere, in.dimension, {}};
        for (int i : in.image) {
            if (i < 0 || i >= static_cast<int>(arcs.size())) throw InputError("sphere map points outside the arcs");
            m.image.push_back("a" + std::to_string(i));
        }
        map = m;
    }
    emit(o, dump(certificate_to_json(hatcher_flow(s, arcs, beta, map))));
    return 0;
}

int run_complex(const Options& o) {
    Surface s = load_surface(o);
    std::vector<PolyCurve> curves = load_family(s, o.curves.empty() ? o.arcs : o.curves, "--curves");
    SimplicialComplex x = fine_subcomplex(s, curves);
    Json out = complex_to_json(x);
    out["f_vector"] = x.f_vector();
    out["euler_characteristic"] = x.euler_characteristic();
    emit(o, dump(out));
    return 0;
}

int run_homology(const Options& o) {
    if (o.complex.empty()) throw InputError("--complex is required");
    SimplicialComplex x = complex_from_json(read_json_file(o.complex));
    Coefficients c = o.coeff == "Z2" ? Coefficients::Mod2 : Coefficients::Integers;
    emit(o, dump(homology_to_json(homology(x, c))));
    return 0;
}

int run_verify(const Options& o) {
    if (o.cert.empty()) throw InputError("--cert is required");
    FlowCertificate cert = certificate_from_json(read_json_file(o.cert));
    Verification v = verify_certificate(cert);
    Json out;
    out["ok"] = v.ok;
    if (!v.ok) {
        out["failed_at"] = v.failed_at;
        out["message"] = v.message;
    }
    out["steps"] = cert.steps.size();
    emit(o, dump(out));
    if (!v.ok) std::cerr << "certificate rejected at " << v.failed_at << ": " << v.message << "\n";
    return v.ok ? 0 : 2;
}

// SVG of the fundamental polygon with curves drawn chart by chart. Crossings
// are marked with circles, touching contacts with squares.
int run_render(const Options& o) {
    Surface s = load_surface(o);
    std::vector<PolyCurve> curves;
    if (!o.curves.empty()) curves = load_family(s, o.curves, "--curves");
    if (!o.a.empty()) curves.push_back(load_curve(s, o.a, "--a"));
    if (!o.b.empty()) curves.push_back(load_curve(s, o.b, "--b"));

    double xmin = 1e300, ymin = 1e300, xmax = -1e300, ymax = -1e300;
    for (const Vec2& p : s.polygon) {
        xmin = std::min(xmin, to_double(p.x));
        xmax = std::max(xmax, to_double(p.x));
        ymin = std::min(ymin, to_double(p.y));
        ymax = std::max(ymax, to_double(p.y));
    }
    const double size = 480, margin = 20;
    const double scale = size / std::max(xmax - xmin, ymax - ymin);
    auto sx = [&](const Rational& x) { return margin + (to_double(x) - xmin) * scale; };
    auto sy = [&](const Rational& y) { return margin + (ymax - to_double(y)) * scale; };
    auto points = [&](const std::vector<Vec2>& poly) {
        std::ostringstream pts;
        for (const Vec2& p : poly) pts << sx(p.x) << "," << sy(p.y) << " ";
        return pts.str();
    };

    std::ostringstream svg;
    const double total = size + 2 * margin;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total << "\" height=\"" << total << "\">\n";
    svg << "<polygon points=\"" << points(s.polygon) << "\" fill=\"#f4f4f4\" stroke=\"#444\"/>\n";
    for (int k = 0; k < s.edge_count(); ++k) {
        if (s.identified(k)) continue;
        Segment e = s.edge(k);
        svg << "<line x1=\"" << sx(e.a.x) << "\" y1=\"" << sy(e.a.y) << "\" x2=\"" << sx(e.b.x) << "\" y2=\""
            << sy(e.b.y) << "\" stroke=\"#000\" stroke-width=\"3\"/>\n";
    }
    for (const auto& h : s.holes) svg << "<polygon points=\"" << points(h) << "\" fill=\"#fff\" stroke=\"#000\" stroke-width=\"2\"/>\n";
    const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};
    for (std::size_t i = 0; i < curves.size(); ++i) {
        for (const Segment& seg : curves[i].segs) {
            svg << "<line x1=\"" << sx(seg.a.x) << "\" y1=\"" << sy(seg.a.y) << "\" x2=\"" << sx(seg.b.x) << "\" y2=\""
                << sy(seg.b.y) << "\" stroke=\"" << palette[i % 6] << "\" stroke-width=\"2\"/>\n";
        }
    }
    for (std::size_t i = 0; i < curves.size(); ++i) {
        for (std::size_t j = i + 1; j < curves.size(); ++j) {
            IntersectionReport r = intersect_curves(s, curves[i], curves[j]);
            for (const auto& c : r.components) {
                if (c.contact == Contact::Crossing) {
                    svg << "<circle cx=\"" << sx(c.start.x) << "\" cy=\"" << sy(c.start.y)
                        << "\" r=\"4\" fill=\"none\" stroke=\"#000\"/>\n";
                } else {
                    svg << "<rect x=\"" << sx(c.start.x) - 4 << "\" y=\"" << sy(c.start.y) - 4
                        << "\" width=\"8\" height=\"8\" fill=\"#e377c2\"/>\n";
                }
            }
        }
    }
    svg << "</svg>\n";
    emit(o, svg.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact curves and arcs on polygonal surfaces"};
    app.require_subcommand(1);
    Options o;

    auto add = [&](const char* name, const char* help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--out", o.out, "Output file (default: stdout)");
        sub->add_option("--seed", o.seed, "Seed for reproducible runs");
        return sub;
    };
    auto surface = [&](CLI::App* sub) { sub->add_option("--surface", o.surface, "Surface JSON")->required(); };

    CLI::App* validate = add("validate", "Check a surface and optionally a curve family");
    surface(validate);
    validate->add_option("--curves", o.curves, "Curve family JSON");
    validate->add_option("--a", o.a, "Single curve JSON");

    CLI::App* intersect = add("intersect", "Classify the intersection of two curves");
    surface(intersect);
    intersect->add_option("--a", o.a)->required();
    intersect->add_option("--b", o.b)->required();

    CLI::App* perturb_cmd = add("perturb", "Move a curve off touching contacts with a family");
    surface(perturb_cmd);
    perturb_cmd->add_option("--a", o.a, "Curve to perturb")->required();
    perturb_cmd->add_option("--b", o.b, "Family to avoid");
    perturb_cmd->add_option("--eps", o.eps, "Distance bound as p/q");

    CLI::App* pushoffs = add("pushoff-family", "Replace a family by pairwise disjoint-or-equal pushoffs");
    surface(pushoffs);
    pushoffs->add_option("--curves", o.curves)->required();

    CLI::App* tighten = add("tighten", "Remove bigons between two curves");
    surface(tighten);
    tighten->add_option("--a", o.a, "Curve to move")->required();
    tighten->add_option("--b", o.b, "Fixed target")->required();

    CLI::App* arc_step = add("arc-step", "One surgery at the first intersection with beta");
    surface(arc_step);
    arc_step->add_option("--arcs", o.arcs)->required();
    arc_step->add_option("--beta", o.beta, "Beta arc JSON or 'auto'");

    CLI::App* flow_star = add("flow-star", "Flow a sphere map into a vertex star");
    surface(flow_star);
    flow_star->add_option("--curves", o.curves)->required();
    flow_star->add_option("--sphere", o.sphere, "Sphere complex with dimension and map")->required();

    CLI::App* hatcher = add("hatcher-flow", "Flow an arc family into the star of beta");
    surface(hatcher);
    hatcher->add_option("--arcs", o.arcs)->required();
    hatcher->add_option("--beta", o.beta, "Beta arc JSON or 'auto'");
    hatcher->add_option("--sphere", o.sphere, "Optional sphere complex with map into the arcs");

    CLI::App* complex_cmd = add("complex", "Fine subcomplex spanned by a curve family");
    surface(complex_cmd);
    complex_cmd->add_option("--curves", o.curves);
    complex_cmd->add_option("--arcs", o.arcs);

    CLI::App* homology_cmd = add("homology", "Reduced homology of a finite complex");
    homology_cmd->add_option("--complex", o.complex)->required();
    homology_cmd->add_option("--coeff", o.coeff)->check(CLI::IsMember({"Z", "Z2"}));

    CLI::App* verify = add("verify", "Re-check a flow certificate");
    verify->add_option("--cert", o.cert)->required();

    CLI::App* render = add("render", "Draw curves on the fundamental polygon as SVG");
    surface(render);
    render->add_option("--curves", o.curves);
    render->add_option("--a", o.a);
    render->add_option("--b", o.b);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    const std::vector<std::pair<CLI::App*, int (*)(const Options&)>> handlers = {
        {validate, run_validate},       {intersect, run_intersect},   {perturb_cmd, run_perturb},
        {pushoffs, run_pushoff_family}, {tighten, run_tighten},       {arc_step, run_arc_step},
        {flow_star, run_flow_star},     {hatcher, run_hatcher_flow},  {complex_cmd, run_complex},
        {homology_cmd, run_homology},   {verify, run_verify},         {render, run_render}};
    try {
        for (const auto& [sub, handler] : handlers) {
            if (sub->parsed()) return handler(o);
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const ContractError& e) {
        std::cerr << "contract violation: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
