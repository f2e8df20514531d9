#include "finecurve/complex.hpp"
#include "finecurve/errors.hpp"
#include "finecurve/intersection.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace finecurve;
using namespace fixtures;

namespace {

std::vector<long> sphere_betti(int n) {
    std::vector<long> b(n, 0);
    b[n - 1] = 1;
    return b;
}

}  // namespace

TEST_CASE("parallel torus curves span a triangle") {
    Surface t = torus();
    std::vector<PolyCurve> cs{torus_line(t, 1, 0, q(1, 4)), torus_line(t, 1, 0, q(1, 2)), torus_line(t, 1, 0, q(3, 4))};
    SimplicialComplex x = fine_subcomplex(t, cs);
    CHECK(x.dimension() == 2);
    CHECK(x.f_vector() == std::vector<int>{3, 3, 1});
}

TEST_CASE("crossing curves stay isolated") {
    Surface t = torus();
    SimplicialComplex x = fine_subcomplex(t, {torus_line(t, 1, 0, q(1, 3)), torus_line(t, 0, 1, q(1, 3))});
    CHECK(x.f_vector() == std::vector<int>{2});
}

TEST_CASE("disjointness four-cycle") {
    Surface t = torus();
    auto square = [&](const Rational& x, const Rational& y) {
        Rational w = q(1, 8);
        return curve(t, CurveKind::Closed, {pt(x, y), pt(x + w, y), pt(x + w, y + w), pt(x, y + w)});
    };
    PolyCurve a = square(q(1, 16), q(1, 16));
    PolyCurve c = square(q(1, 8), q(1, 8));
    PolyCurve b = square(q(9, 16), q(9, 16));
    PolyCurve d = square(q(5, 8), q(5, 8));
    REQUIRE(intersect_curves(t, a, c).crossing_count == 2);
    SimplicialComplex x = fine_subcomplex(t, {a, b, c, d}, {"a", "b", "c", "d"});
    CHECK(x.f_vector() == std::vector<int>{4, 4});
    CHECK(check_sphere(x, 1).valid);
    CHECK_FALSE(x.contains({0, 2}));
    CHECK_FALSE(x.contains({1, 3}));
}

TEST_CASE("mixed kinds are rejected") {
    Surface s = s05();
    PolyCurve arc = curve(s, CurveKind::Arc, {pt(q(1, 2), 0), pt(q(1, 2), 1)});
    PolyCurve loop = curve(s, CurveKind::Closed, {pt(q(1, 16), q(1, 16)), pt(q(1, 8), q(1, 16)), pt(q(1, 8), q(1, 8))});
    CHECK_THROWS_AS(fine_subcomplex(s, {arc, loop}), ContractError);
}

TEST_CASE("star and link") {
    SimplicialComplex tri({"a", "b", "c"}, {{0, 1, 2}});
    CHECK(star(tri, "a").simplices() == tri.simplices());
    SimplicialComplex oct = octahedron();
    SimplicialComplex lk = link(oct, "x+");
    CHECK(lk.vertex_count() == 4);
    CHECK(lk.f_vector() == std::vector<int>{4, 4});
    CHECK(check_sphere(lk, 1).valid);
    SimplicialComplex discrete({"a", "b"}, {});
    CHECK(star(discrete, "a").vertices() == std::vector<std::string>{"a"});
    CHECK(link(discrete, "a").vertex_count() == 0);
    CHECK_THROWS_AS(star(discrete, "z"), ContractError);
}

TEST_CASE("sphere validation") {
    CHECK(check_sphere(boundary_of_simplex(1), 0).valid);
    CHECK(check_sphere(cycle_complex(6), 1).valid);
    CHECK(check_sphere(octahedron(), 2).valid);
    CHECK(check_sphere(boundary_of_simplex(3), 2).valid);
    CHECK_FALSE(check_sphere(SimplicialComplex({"a", "b", "c"}, {{0, 1, 2}}), 2).valid);
    SimplicialComplex two_cycles({"a", "b", "c", "d", "e", "f"}, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    CHECK_FALSE(check_sphere(two_cycles, 1).valid);
    SphereCheck high = check_sphere(boundary_of_simplex(4), 3);
    CHECK(high.valid);
    CHECK_FALSE(high.validated);
}

TEST_CASE("simplicial maps") {
    SimplicialComplex c = cycle_complex(4);
    SimplicialMap id{c, c, {0, 1, 2, 3}};
    CHECK(check_simplicial(id));
    SimplicialMap constant{c, c, {2, 2, 2, 2}};
    CHECK(check_simplicial(constant));
    SimplicialMap bad{c, c, {0, 2, 2, 0}};
    CHECK_FALSE(check_simplicial(bad));
    CHECK(straight_line_homotopy_valid(id, id));
    SimplicialMap shifted{c, c, {1, 2, 3, 0}};
    CHECK_FALSE(straight_line_homotopy_valid(id, shifted));

    Surface t = torus();
    std::vector<PolyCurve> cs{torus_line(t, 1, 0, q(1, 4)), torus_line(t, 1, 0, q(1, 2)), torus_line(t, 0, 1, q(1, 2))};
    SimplicialComplex fine = fine_subcomplex(t, cs);
    SimplicialComplex edge({"s", "t"}, {{0, 1}});
    CHECK(check_simplicial({edge, fine, {0, 1}}));
    CHECK_FALSE(check_simplicial({edge, fine, {0, 2}}));
    CHECK_FALSE(straight_line_homotopy_valid({edge, fine, {0, 1}}, {edge, fine, {0, 2}}));
}

TEST_CASE("homology of simplex boundaries") {
    for (int n = 1; n <= 6; ++n) {
        CAPTURE(n);
        SimplicialComplex x = boundary_of_simplex(n);
        CHECK(homology(x, Coefficients::Integers).betti == sphere_betti(n));
        CHECK(homology(x, Coefficients::Mod2).betti == sphere_betti(n));
    }
    CHECK(homology(octahedron(), Coefficients::Integers).betti == std::vector<long>{0, 0, 1});
    CHECK(homology(star(octahedron(), "x+"), Coefficients::Integers).betti == std::vector<long>{0, 0, 0});
}

TEST_CASE("torsion of the projective plane") {
    // Six-vertex real projective plane.
    SimplicialComplex rp2({"1", "2", "3", "4", "5", "6"},
                          {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
                           {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}});
    HomologyReport z = homology(rp2, Coefficients::Integers);
    CHECK(z.betti == std::vector<long>{0, 0, 0});
    REQUIRE(z.torsion[1].size() == 1);
    CHECK(z.torsion[1][0] == 2);
    CHECK(homology(rp2, Coefficients::Mod2).betti == std::vector<long>{0, 1, 1});
    CHECK(rp2.euler_characteristic() == 1);
}

TEST_CASE("smith diagonal") {
    std::vector<std::vector<mpz_class>> m{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
    CHECK(smith_diagonal(m) == std::vector<mpz_class>{2, 6, 12});
}
