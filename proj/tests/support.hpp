#pragma once

// Fixture surfaces and curve generators shared by the unit tests and the
// acceptance runner.

#include "finecurve/surface.hpp"

#include <random>
#include <vector>

namespace fixtures {

using finecurve::CurveKind;
using finecurve::PolyCurve;
using finecurve::Rational;
using finecurve::Surface;
using finecurve::Vec2;

Rational q(long num, long den = 1);
Vec2 pt(long x, long y);
Vec2 pt(const Rational& x, const Rational& y);

Surface torus();
Surface s05();  // unit square, four square holes
Surface s04();
Surface s12();  // torus with two holes
Surface s11();
Surface octagon();

PolyCurve curve(const Surface& s, CurveKind kind, const std::vector<Vec2>& waypoints);

// Closed curve on the torus from a plane polyline whose last point is a
// lattice translate of the first.
PolyCurve torus_polyline(const Surface& s, const std::vector<Vec2>& pts);

// Closed straight curve of class (p, q) on the square torus. `offset` fixes
// q*x - p*y mod 1 along the line and must not be an integer.
PolyCurve torus_line(const Surface& s, int p, int q, const Rational& offset);

// Class (p, q) representative meeting the straight (r, s) line `target_offset`
// in |ps - qr| + 2 * sum(zigs) points. zigs[k] extra pairs are added at the
// k-th crossing (or as fingers when the classes are parallel).
struct WiggleSpec {
    int p, q, r, s;
    std::vector<int> zigs;
    bool flip = false;
};

struct WigglePair {
    PolyCurve wiggled;
    PolyCurve target;
};

WigglePair wiggled_pair(const Surface& torus, const WiggleSpec& spec);

int torus_intersection_number(int p, int q, int r, int s);

std::pair<int, int> random_primitive(std::mt19937_64& rng, int bound);

// Valid arcs sampled on a holed square (S_{0,5}) or holed torus (S_{1,2}).
std::vector<PolyCurve> random_arcs(const Surface& s, std::mt19937_64& rng, int count);

// A random closed curve made of a straight torus class with fingers.
PolyCurve random_torus_curve(const Surface& s, std::mt19937_64& rng, int p, int q, const Rational& offset,
                             int fingers);

}  // namespace fixtures
