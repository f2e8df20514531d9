#pragma once

#include "finecurve/complex.hpp"
#include "finecurve/intersection.hpp"
#include "finecurve/topology.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace finecurve {

using Json = nlohmann::ordered_json;

// Every reader throws InputError on malformed documents.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);
std::string dump(const Json& j);

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);
Json point_to_json(const Vec2& p);  // {"x": "p/q", "y": "p/q"}
Vec2 point_from_json(const Json& j);

Json surface_to_json(const Surface& s);
Surface surface_from_json(const Json& j);

Json curve_to_json(const Surface& s, const PolyCurve& c);
PolyCurve curve_from_json(const Surface& s, const Json& j);

// A family file is either a JSON array of curves or an object holding one
// under "curves" or "arcs".
std::vector<PolyCurve> curves_from_json(const Surface& s, const Json& j);
Json curves_to_json(const Surface& s, const std::vector<PolyCurve>& cs);

Json complex_to_json(const SimplicialComplex& x);
SimplicialComplex complex_from_json(const Json& j);

Json report_to_json(const IntersectionReport& r);
Json homology_to_json(const HomologyReport& h);
Json key_to_json(const ClassKey& k);

}  // namespace finecurve
