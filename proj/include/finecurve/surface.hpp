#pragma once

#include "finecurve/geometry.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace finecurve {

struct SurfaceSpec {
    int genus = 0;
    int boundary = 0;
    std::vector<Vec2> polygon;
    std::vector<std::array<int, 3>> identifications;
    std::vector<std::vector<Vec2>> holes;
};

enum class LocusKind { Interior, PolygonEdge, PolygonCorner, HoleEdge, HoleCorner, InsideHole, Outside };

struct Locus {
    LocusKind kind = LocusKind::Interior;
    int index = -1;  // polygon edge/corner, or hole
    int edge = -1;   // edge/corner of the hole
};

class Surface {
public:
    int genus = 0;
    int boundary_count = 0;
    std::vector<Vec2> polygon;
    std::vector<int> partner;        // -1 for declared boundary
    std::vector<Similarity> glue;    // edge k point -> same point on partner[k]
    std::vector<std::vector<Vec2>> holes;
    std::vector<int> edge_component; // boundary component of each declared-boundary edge
    int outer_components = 0;        // components formed by declared-boundary edges
    int euler = 0;
    bool translation = true;
    SurfaceSpec spec;

    int edge_count() const { return static_cast<int>(polygon.size()); }
    Segment edge(int k) const { return {polygon[k], polygon[(k + 1) % polygon.size()]}; }
    bool identified(int k) const { return partner[k] >= 0; }
    bool has_identifications() const;

    Locus locate(const Vec2& p) const;
    // Edge index if p lies in the relative interior of a polygon edge.
    std::optional<int> polygon_edge_of(const Vec2& p) const;
    bool on_identified_edge(const Vec2& p) const;
    bool on_boundary(const Vec2& p) const;
    // Component id of a boundary point: declared-boundary components first,
    // then one per hole.
    int boundary_component_of(const Vec2& p) const;
    Vec2 canonical(const Vec2& p) const;
    bool same_point(const Vec2& p, const Vec2& q) const { return canonical(p) == canonical(q); }
    // Position of p within the closed polygon, excluding holes.
    bool in_closed_polygon(const Vec2& p) const;
    bool in_open_polygon(const Vec2& p) const;
};

Surface build_surface(const SurfaceSpec& spec);

enum class CurveKind { Closed, Arc };

// A curve is a chain of chart segments inside the fundamental polygon. Two
// consecutive segments either share an interior point or meet an identified
// edge at glued points.
struct PolyCurve {
    CurveKind kind = CurveKind::Closed;
    std::vector<Segment> segs;

    std::size_t size() const { return segs.size(); }
    bool closed() const { return kind == CurveKind::Closed; }
    friend bool operator==(const PolyCurve&, const PolyCurve&) = default;
};

std::string kind_name(CurveKind k);

// Waypoints follow the file convention: the first is a departure, every later
// one an arrival. Arriving on an identified edge continues from the glued
// point; closed curves return to the first waypoint implicitly.
PolyCurve curve_from_waypoints(const Surface& s, CurveKind kind, const std::vector<Vec2>& pts);
std::vector<Vec2> curve_waypoints(const Surface& s, const PolyCurve& c);

struct Diagnostics {
    bool ok = true;
    std::string message;
    int seg_a = -1;
    int seg_b = -1;
};

Diagnostics validate_curve(const Surface& s, const PolyCurve& c);
void require_valid(const Surface& s, const PolyCurve& c, const std::string& what);

// Junction k joins segs[k] to segs[k+1] (cyclically for closed curves).
std::size_t junction_count(const PolyCurve& c);
bool glued_junction(const Surface& s, const PolyCurve& c, std::size_t k);

// The curve drawn in the plane by gluing successive copies of the polygon.
// maps[k] places segment k; for a closed curve `holonomy` carries the first
// point to the last.
struct Development {
    std::vector<Vec2> points;
    std::vector<Similarity> maps;
    Similarity holonomy;
};

Development develop(const Surface& s, const PolyCurve& c);

// Inverse of develop: fold a plane polyline starting in copy `start` back into
// the polygon. Fails if the polyline hits a corner, runs along an edge, or
// leaves through declared boundary.
std::optional<PolyCurve> fold(const Surface& s, CurveKind kind, const std::vector<Vec2>& pts,
                              const Similarity& start = Similarity::identity());

// Merge collinear segments that meet at an interior point.
PolyCurve simplify(const PolyCurve& c);

PolyCurve reversed(const PolyCurve& c);

// Point at parameter s in [0, n] (k + t on segment k).
Vec2 point_at(const PolyCurve& c, const Rational& param);

// Approximate Euclidean length, for heuristics only.
double approx_length(const PolyCurve& c);

}  // namespace finecurve
