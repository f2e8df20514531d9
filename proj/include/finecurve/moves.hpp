#pragma once

#include "finecurve/perturbation.hpp"

#include <optional>
#include <vector>

namespace finecurve {

// A disk bounded by a sub-path of family[member] and a sub-path of the
// target. The u side runs forward along the member from u_from to u_to, the v
// side forward along the target from v_from to v_to.
struct Bigon {
    std::size_t member = 0;
    PolyCurve target;
    Rational u_from, u_to;
    Rational v_from, v_to;
    bool u_starts_at_v_from = true;
    std::vector<Segment> side_u;
    std::vector<Segment> side_v;
    std::vector<Vec2> disk;  // plane polygon: side_u then side_v backwards
    Rational area;           // signed; positive when the disk lies left of side_u
    Rational innermost_rank() const { return area < 0 ? Rational(-area) : area; }
};

// Forward sub-path of c between two parameters, wrapping for closed curves.
std::vector<Segment> sub_path(const PolyCurve& c, const Rational& from, const Rational& to);
std::vector<Segment> reversed_path(const std::vector<Segment>& segs);

// All bigons between one curve and the target.
std::vector<Bigon> bigons_between(const Surface& s, const PolyCurve& u, const PolyCurve& v, std::size_t member = 0);

std::optional<Bigon> find_innermost_bigon(const Surface& s, const std::vector<PolyCurve>& family,
                                          const PolyCurve& target);

std::vector<PolyCurve> bigon_surgery(const Surface& s, const std::vector<PolyCurve>& family, const Bigon& b);

PolyCurve tighten_pair(const Surface& s, const PolyCurve& u, const PolyCurve& v);

// One surgery of the Hatcher flow at the first intersection along beta.
struct ArcSurgery {
    std::vector<std::size_t> replaced;  // indices into the input family, in order
    std::vector<PolyCurve> arcs;        // the family after the step
    Rational t;                         // beta parameter of the first intersection
    std::vector<Rational> radii;        // closeness radius per replacement
};

// Crossings of the family with beta sorted by the beta parameter. Each entry
// holds the beta parameter and the family index.
std::vector<std::pair<Rational, std::size_t>> beta_intersections(const Surface& s, const std::vector<PolyCurve>& arcs,
                                                                 const PolyCurve& beta);

ArcSurgery arc_surgery(const Surface& s, const std::vector<PolyCurve>& arcs, const PolyCurve& beta);
std::vector<PolyCurve> arc_surgery_step(const Surface& s, const std::vector<PolyCurve>& arcs, const PolyCurve& beta);

// Closeness condition of the arc surgery: every waypoint of the new arc lies
// within r of the old arc or of the initial piece of beta up to parameter t.
bool near_old_or_beta(const Surface& s, const PolyCurve& old_arc, const PolyCurve& beta, const Rational& t,
                      const PolyCurve& fresh, const Rational& r);

}  // namespace finecurve
