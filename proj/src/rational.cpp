#include "finecurve/rational.hpp"

#include "finecurve/errors.hpp"

#include <cctype>

namespace finecurve {

namespace {

bool valid_integer_text(std::string_view s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

std::string strip_plus(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return std::string(s);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_integer_text(num) || !valid_integer_text(den) || den.front() == '-' || den.front() == '+') {
        throw InputError("malformed rational '" + std::string(text) + "'");
    }
    mpz_class n(strip_plus(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string format_rational(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational dyadic_floor(const Rational& r) {
    if (r <= 0) throw InternalError("dyadic_floor of a non-positive value");
    Rational p(1);
    while (p > r) p /= 2;
    while (p * 2 <= r) p *= 2;
    return p;
}

Rational snap_to_grid(const Rational& r, const Rational& grid) {
    Rational scaled = r / grid + Rational(1, 2);
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    return Rational(q) * grid;
}

Vec2 snap_to_grid(const Vec2& p, const Rational& grid) {
    return {snap_to_grid(p.x, grid), snap_to_grid(p.y, grid)};
}

std::string to_string(const Vec2& p) {
    return "(" + format_rational(p.x) + ", " + format_rational(p.y) + ")";
}

}  // namespace finecurve
