#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace finecurve {

using Rational = mpq_class;

// Accepts "p/q", "p" and a leading sign. Throws InputError on malformed text
// or a zero denominator.
Rational parse_rational(std::string_view text);

// Always "p/q" (integers become "p/1").
std::string format_rational(const Rational& r);

inline double to_double(const Rational& r) { return r.get_d(); }

inline int sign(const Rational& r) { return sgn(r); }

inline Rational abs_value(const Rational& r) { return Rational(abs(r)); }

// Largest power of two (as a rational) not exceeding r; r must be positive.
Rational dyadic_floor(const Rational& r);

// Nearest multiple of grid (ties toward +infinity).
Rational snap_to_grid(const Rational& r, const Rational& grid);

struct Vec2 {
    Rational x;
    Rational y;

    Vec2() = default;
    Vec2(Rational x_, Rational y_) : x(std::move(x_)), y(std::move(y_)) {}
    Vec2(long x_, long y_) : x(x_), y(y_) {}

    friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Vec2& a, const Vec2& b) { return !(a == b); }
};

inline Vec2 operator+(const Vec2& a, const Vec2& b) { return {Rational(a.x + b.x), Rational(a.y + b.y)}; }
inline Vec2 operator-(const Vec2& a, const Vec2& b) { return {Rational(a.x - b.x), Rational(a.y - b.y)}; }
inline Vec2 operator-(const Vec2& a) { return {Rational(-a.x), Rational(-a.y)}; }
inline Vec2 operator*(const Rational& s, const Vec2& a) { return {Rational(s * a.x), Rational(s * a.y)}; }
inline Vec2 operator*(const Vec2& a, const Rational& s) { return s * a; }
inline Vec2 operator/(const Vec2& a, const Rational& s) { return {Rational(a.x / s), Rational(a.y / s)}; }

inline Rational cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline Rational dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline Rational norm_sq(const Vec2& a) { return dot(a, a); }
inline Rational norm_l1(const Vec2& a) { return Rational(abs(a.x) + abs(a.y)); }
inline Vec2 rot90(const Vec2& a) { return {Rational(-a.y), a.x}; }

// Lexicographic (x, then y).
inline bool lex_less(const Vec2& a, const Vec2& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

struct Vec2Less {
    bool operator()(const Vec2& a, const Vec2& b) const { return lex_less(a, b); }
};

// Orientation of (a, b, c): +1 counter-clockwise, -1 clockwise, 0 collinear.
inline int orientation(const Vec2& a, const Vec2& b, const Vec2& c) { return sign(cross(b - a, c - a)); }

Vec2 snap_to_grid(const Vec2& p, const Rational& grid);

std::string to_string(const Vec2& p);

}  // namespace finecurve
