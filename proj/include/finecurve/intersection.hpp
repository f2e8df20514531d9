#pragma once

#include "finecurve/surface.hpp"

#include <vector>

namespace finecurve {

enum class Contact { Crossing, Touching };

// Curve parameters are k + t on segment k. For closed curves an interval may
// wrap past the end, in which case u_end < u_start.
struct IntersectionComponent {
    bool interval = false;
    Vec2 start;  // canonical surface points
    Vec2 end;
    Rational u_start, u_end;
    Rational v_start, v_end;
    Contact contact = Contact::Touching;
};

struct IntersectionReport {
    bool identical = false;
    std::vector<IntersectionComponent> components;
    int crossing_count = 0;
    std::vector<Vec2> problem_set;

    int touching_count() const { return static_cast<int>(components.size()) - crossing_count; }
    bool empty() const { return components.empty() && !identical; }
    // Every component is an isolated crossing point.
    bool transverse() const;
};

IntersectionReport intersect_curves(const Surface& s, const PolyCurve& u, const PolyCurve& v);

// Cheaper than a full report when only emptiness matters.
bool curves_disjoint(const Surface& s, const PolyCurve& u, const PolyCurve& v);

std::vector<Vec2> problem_set(const Surface& s, const std::vector<PolyCurve>& curves);

// Rays leaving the point at parameter p of c, expressed in the chart of the
// canonical representative. A missing ray marks an arc endpoint.
struct LocalRays {
    Vec2 point;
    std::optional<Vec2> back;
    std::optional<Vec2> ahead;
};

LocalRays rays_at(const Surface& s, const PolyCurve& c, const Rational& p);

// Parameter normalised into [0, n) for closed curves.
Rational wrap_param(const PolyCurve& c, const Rational& p);

}  // namespace finecurve
