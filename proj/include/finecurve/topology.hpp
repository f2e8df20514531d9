#pragma once

#include "finecurve/surface.hpp"

#include <optional>
#include <string>
#include <vector>

namespace finecurve {

// Surfaces where disk questions are answered by lifting to the plane: no
// identifications at all, or a parallelogram torus glued by translations.
bool lifts_to_plane(const Surface& s);

// Lattice of deck translations (planar surfaces: just the origin) restricted
// to a window around the box [lo, hi].
std::vector<Vec2> deck_translations(const Surface& s, const Vec2& lo, const Vec2& hi);

// Signed area of the disk a plane polygon bounds in the surface, or nothing
// if some hole (or a translate of it) sits inside.
std::optional<Rational> plane_loop_disk(const Surface& s, const std::vector<Vec2>& loop);

// Whether a closed curve bounds an embedded disk. Throws UnsupportedSurface
// outside lifts_to_plane surfaces.
bool bounds_disk(const Surface& s, const PolyCurve& c);

bool essential_arc(const Surface& s, const PolyCurve& arc);

// Isotopy class key of a closed curve.
struct ClassKey {
    enum class Kind { Rejected, Torus, Planar };
    Kind kind = Kind::Rejected;
    int p = 0;
    int q = 0;
    std::vector<int> side;  // planar: boundary components on the canonical side

    friend bool operator==(const ClassKey&, const ClassKey&) = default;
    friend auto operator<=>(const ClassKey&, const ClassKey&) = default;
};

std::string to_string(const ClassKey& k);

ClassKey collapse_map_f(const Surface& s, const PolyCurve& c);

// The two classes have disjoint representatives (an edge or a vertex of the
// curve complex).
bool keys_compatible(const Surface& s, const ClassKey& a, const ClassKey& b);

// Plane path along a boundary polygon from `from` to `to`, both on its edges.
std::vector<Vec2> boundary_path(const std::vector<Vec2>& poly, const Vec2& from, const Vec2& to, bool forward);

}  // namespace finecurve
