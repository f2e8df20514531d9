#pragma once

#include "finecurve/complex.hpp"
#include "finecurve/io.hpp"
#include "finecurve/moves.hpp"
#include "finecurve/topology.hpp"

#include <optional>
#include <string>
#include <vector>

namespace finecurve {

SimplicialComplex fiber_subcomplex(const Surface& s, const std::vector<PolyCurve>& curves,
                                   const std::vector<ClassKey>& simplex);

struct NamedCurve {
    std::string handle;
    PolyCurve curve;
};

// A fact the verifier recomputes. Handles name curves of the state before the
// step, plus "old" (the replaced curve), "new" (its replacement) and "beta".
//   disjoint        a and b are disjoint
//   crossings       a meets b in `count` crossing points and nothing else
//   beta-crossings  a meets beta in `count` crossing points
//   essential       a is an essential arc
//   near            new lies within `radius` of old and of beta up to `t`
struct Witness {
    std::string kind;
    std::string a;
    std::string b;
    int count = 0;
    Rational radius;
    Rational t;
};

struct FlowStep {
    int index = 0;
    std::string replace;
    PolyCurve with;
    std::string reason;  // pushoff | bigon-surgery | arc-surgery
    std::vector<Witness> witnesses;
};

struct SphereMap {
    SimplicialComplex sphere;
    int dimension = 0;
    std::vector<std::string> image;  // handle of the image curve per sphere vertex
};

struct FlowCertificate {
    std::string kind;  // flow-star | hatcher-flow
    Surface surface;
    std::optional<SphereMap> map;
    std::optional<PolyCurve> beta;
    std::vector<NamedCurve> initial;
    std::vector<FlowStep> steps;
    std::vector<NamedCurve> final_set;
    std::string star_center;
};

// Sphere map into the fine complex on `curves` (handles c0, c1, ...): sphere
// vertex v goes to curves[image[v]].
FlowCertificate flow_sphere_to_star(const Surface& s, const SimplicialComplex& sphere, int dimension,
                                    const std::vector<PolyCurve>& curves, const std::vector<int>& image);

bool hatcher_admissible(const Surface& s);

// Straight essential arc between two boundary points, perturbed off the family.
PolyCurve auto_beta(const Surface& s, const std::vector<PolyCurve>& arcs);

// Flow of an arc family (handles a0, a1, ...) into the star of beta. The
// sphere map is optional; without it the family itself is the flowed set.
FlowCertificate hatcher_flow(const Surface& s, const std::vector<PolyCurve>& arcs,
                             const std::optional<PolyCurve>& beta,
                             const std::optional<SphereMap>& map = std::nullopt);

struct Verification {
    bool ok = true;
    // -1 for the initial data, the step index, or steps.size() for the final
    // set and star condition.
    int failed_at = -1;
    std::string message;
};

Verification verify_certificate(const FlowCertificate& cert);

Json certificate_to_json(const FlowCertificate& cert);
FlowCertificate certificate_from_json(const Json& j);

}  // namespace finecurve
