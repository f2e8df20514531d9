#pragma once

#include "finecurve/intersection.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace finecurve {

enum class Side { Left, Right };

inline Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }

// One offset attempt at exactly distance d (up to grid snapping). Returns
// nothing unless the result is a valid curve disjoint from c and the strip
// swept between them contains no corner or hole vertex.
std::optional<PolyCurve> offset_curve(const Surface& s, const PolyCurve& c, Side side, const Rational& d);

// Largest dyadic distance that is a safe first guess for offsets of c. Curves
// in `avoid` must already be disjoint from c.
Rational initial_offset(const Surface& s, const PolyCurve& c, const std::vector<PolyCurve>& avoid = {});

using CurveTest = std::function<bool(const PolyCurve&)>;

struct Pushoff {
    PolyCurve curve;
    Rational distance;
};

// Offsets at d, d/2, d/4, ... until the result is disjoint from every curve in
// `avoid` and passes `accept`. Throws InternalError when nothing works.
Pushoff pushoff(const Surface& s, const PolyCurve& c, Side side, const Rational& d,
                const std::vector<PolyCurve>& avoid = {}, const CurveTest& accept = {});

std::optional<Pushoff> try_pushoff(const Surface& s, const PolyCurve& c, Side side, const Rational& d,
                                   const std::vector<PolyCurve>& avoid = {}, const CurveTest& accept = {});

enum class RegionShape { Annulus, Strip };

struct TubularRegion {
    PolyCurve core;
    Rational radius;
    RegionShape shape = RegionShape::Annulus;
    PolyCurve left;
    PolyCurve right;
};

TubularRegion tubular_region(const Surface& s, const PolyCurve& c, const Rational& r);

// Every waypoint of `curve` lies within eps of `core`, measured in the
// polygon chart and its neighbours across identified edges.
bool within_distance(const Surface& s, const PolyCurve& core, const PolyCurve& curve, const Rational& eps);

// A curve near y (within eps) meeting every member of family only in
// isolated crossing points.
PolyCurve perturb(const Surface& s, const PolyCurve& y, const std::vector<PolyCurve>& family, const Rational& eps);

PolyCurve region_representative(const Surface& s, const TubularRegion& region, const std::vector<PolyCurve>& family);

std::vector<PolyCurve> pushoff_family(const Surface& s, const std::vector<PolyCurve>& family);

// The identity and the chart maps reaching polygon copies up to two
// identified edges away.
std::vector<Similarity> neighbourhood_maps(const Surface& s);

// Squared distance between two surface points, measured through nearby
// copies of the polygon.
Rational surface_distance_sq(const Surface& s, const Vec2& p, const Vec2& q);

bool transverse_or_disjoint(const Surface& s, const PolyCurve& a, const PolyCurve& b);

}  // namespace finecurve
