#include "finecurve/errors.hpp"
#include "finecurve/moves.hpp"
#include "finecurve/topology.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace finecurve;
using namespace fixtures;

namespace {

int crossings(const Surface& s, const PolyCurve& a, const PolyCurve& b) { return intersect_curves(s, a, b).crossing_count; }

int beta_total(const Surface& s, const std::vector<PolyCurve>& arcs, const PolyCurve& beta) {
    return static_cast<int>(beta_intersections(s, arcs, beta).size());
}

}  // namespace

TEST_CASE("sub paths wrap around closed curves") {
    Surface t = torus();
    PolyCurve c = curve(t, CurveKind::Closed, {pt(q(1, 4), q(1, 4)), pt(q(3, 4), q(1, 4)), pt(q(3, 4), q(3, 4)),
                                               pt(q(1, 4), q(3, 4))});
    auto p = sub_path(c, q(7, 2), q(1, 2));
    REQUIRE(p.size() == 2);
    CHECK(p[0].a == pt(q(1, 4), q(1, 2)));
    CHECK(p[1].b == pt(q(1, 2), q(1, 4)));
}

TEST_CASE("innermost bigon detection") {
    Surface t = torus();
    WigglePair w = wiggled_pair(t, {1, 0, 0, 1, {1}});
    REQUIRE(crossings(t, w.wiggled, w.target) == 3);
    CHECK(find_innermost_bigon(t, {w.wiggled}, w.target).has_value());

    PolyCurve horizontal = torus_line(t, 1, 0, q(1, 3));
    PolyCurve vertical = torus_line(t, 0, 1, q(1, 3));
    CHECK_FALSE(find_innermost_bigon(t, {horizontal}, vertical).has_value());
    CHECK_FALSE(find_innermost_bigon(t, {torus_line(t, 1, 0, q(2, 3))}, horizontal).has_value());
}

TEST_CASE("bigon surgery removes two crossings") {
    Surface t = torus();
    WigglePair w = wiggled_pair(t, {1, 0, 0, 1, {1}});
    auto b = find_innermost_bigon(t, {w.wiggled}, w.target);
    REQUIRE(b);
    auto out = bigon_surgery(t, {w.wiggled}, *b);
    CHECK(crossings(t, out[0], w.target) == 1);
    CHECK(curves_disjoint(t, out[0], w.wiggled));
    CHECK(collapse_map_f(t, out[0]) == collapse_map_f(t, w.wiggled));
}

TEST_CASE("trivial bigon disappears") {
    Surface t = torus();
    PolyCurve circle = curve(t, CurveKind::Closed, {pt(q(1, 8), q(1, 8)), pt(q(3, 8), q(1, 8)),
                                                    pt(q(3, 8), q(3, 8)), pt(q(1, 8), q(3, 8))});
    PolyCurve line = torus_line(t, 0, 1, q(-1, 4));
    REQUIRE(crossings(t, circle, line) == 2);
    auto b = find_innermost_bigon(t, {circle}, line);
    REQUIRE(b);
    auto out = bigon_surgery(t, {circle}, *b);
    CHECK(intersect_curves(t, out[0], line).empty());
    CHECK(bounds_disk(t, out[0]));
}

TEST_CASE("surgery keeps disjoint members disjoint") {
    Surface t = torus();
    WigglePair w = wiggled_pair(t, {1, 0, 0, 1, {1}});
    PolyCurve parallel = pushoff(t, w.wiggled, Side::Left, q(1, 64)).curve;
    REQUIRE(curves_disjoint(t, parallel, w.wiggled));
    std::vector<PolyCurve> family{w.wiggled, parallel};
    auto b = find_innermost_bigon(t, family, w.target);
    REQUIRE(b);
    auto out = bigon_surgery(t, family, *b);
    CHECK(curves_disjoint(t, out[0], out[1]));
    CHECK(crossings(t, out[b->member], w.target) == 1);
}

TEST_CASE("tighten reaches the intersection number") {
    Surface t = torus();
    WigglePair w = wiggled_pair(t, {1, 0, 0, 1, {2}});
    REQUIRE(crossings(t, w.wiggled, w.target) == 5);
    PolyCurve tight = tighten_pair(t, w.wiggled, w.target);
    CHECK(crossings(t, tight, w.target) == 1);
    CHECK(crossings(t, tighten_pair(t, tight, w.target), w.target) == 1);

    WigglePair w2 = wiggled_pair(t, {2, 1, 1, 1, {1}});
    REQUIRE(crossings(t, w2.wiggled, w2.target) == 3);
    CHECK(crossings(t, tighten_pair(t, w2.wiggled, w2.target), w2.target) == 1);

    PolyCurve a = torus_line(t, 1, 0, q(1, 3));
    PolyCurve b = torus_line(t, 1, 0, q(2, 3));
    CHECK(tighten_pair(t, a, b) == a);
}

TEST_CASE("tighten matches the torus oracle on seeded pairs") {
    Surface t = torus();
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 6; ++trial) {
        auto [p, qq] = random_primitive(rng, 3);
        auto [r, ss] = random_primitive(rng, 3);
        WigglePair w = wiggled_pair(t, {p, qq, r, ss, {1, 1}});
        PolyCurve tight = tighten_pair(t, w.wiggled, w.target);
        CAPTURE(p);
        CAPTURE(qq);
        CAPTURE(r);
        CAPTURE(ss);
        CHECK(crossings(t, tight, w.target) == torus_intersection_number(p, qq, r, ss));
    }
}

TEST_CASE("arc surgery on the five-holed sphere") {
    Surface s = s05();
    PolyCurve beta = curve(s, CurveKind::Arc, {pt(q(1, 2), 0), pt(q(1, 2), 1)});
    PolyCurve g = curve(s, CurveKind::Arc, {pt(q(5, 16), q(1, 4)), pt(q(11, 16), q(1, 4))});
    REQUIRE(beta_total(s, {g}, beta) == 1);
    ArcSurgery step = arc_surgery(s, {g}, beta);
    CHECK(step.replaced == std::vector<std::size_t>{0});
    CHECK(validate_curve(s, step.arcs[0]).ok);
    CHECK(intersect_curves(s, step.arcs[0], beta).empty());
    CHECK(curves_disjoint(s, step.arcs[0], g));
    CHECK(essential_arc(s, step.arcs[0]));
    CHECK(near_old_or_beta(s, g, beta, q(1, 4), step.arcs[0], step.radii.at(0)));
}

TEST_CASE("multi-intersection is resolved in one step") {
    Surface s = s05();
    PolyCurve beta = curve(s, CurveKind::Arc, {pt(q(1, 2), 0), pt(q(1, 2), 1)});
    PolyCurve g1 = curve(s, CurveKind::Arc, {pt(q(5, 16), q(1, 4)), pt(q(11, 16), q(1, 4))});
    PolyCurve g2 = curve(s, CurveKind::Arc, {pt(q(3, 8), 0), pt(q(5, 8), q(1, 2)), pt(1, q(1, 2))});
    REQUIRE(validate_curve(s, g2).ok);
    std::vector<PolyCurve> family{g1, g2};
    REQUIRE(beta_total(s, family, beta) == 2);
    ArcSurgery step = arc_surgery(s, family, beta);
    CHECK(step.replaced.size() == 2);
    CHECK(beta_total(s, step.arcs, beta) == 0);
}

TEST_CASE("arc surgery is the identity away from beta") {
    Surface s = s05();
    PolyCurve beta = curve(s, CurveKind::Arc, {pt(q(1, 2), 0), pt(q(1, 2), 1)});
    PolyCurve g = curve(s, CurveKind::Arc, {pt(q(1, 4), 0), pt(q(1, 4), q(3, 16))});
    CHECK(arc_surgery_step(s, {g}, beta) == std::vector<PolyCurve>{g});
}

TEST_CASE("touching arcs violate the arc surgery contract") {
    Surface s = s05();
    PolyCurve beta = curve(s, CurveKind::Arc, {pt(q(1, 2), 0), pt(q(1, 2), 1)});
    PolyCurve g = curve(s, CurveKind::Arc, {pt(q(5, 16), q(1, 4)), pt(q(1, 2), q(1, 2)), pt(q(5, 16), q(3, 4))});
    REQUIRE(validate_curve(s, g).ok);
    CHECK_THROWS_AS(arc_surgery_step(s, {g}, beta), ContractError);
}
