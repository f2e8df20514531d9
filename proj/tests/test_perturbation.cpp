#include "finecurve/perturbation.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace finecurve;
using namespace fixtures;

namespace {

PolyCurve vertical(const Surface& t, const Rational& x) { return curve(t, CurveKind::Closed, {pt(x, 0), pt(x, 1)}); }

PolyCurve zigzag(const Surface& t) {
    return curve(t, CurveKind::Closed,
                 {pt(q(1, 4), 0), pt(q(5, 16), q(1, 4)), pt(q(1, 4), q(1, 2)), pt(q(5, 16), q(3, 4)), pt(q(1, 4), 1)});
}

}  // namespace

TEST_CASE("pushoff of a vertical torus curve") {
    Surface t = torus();
    PolyCurve c = vertical(t, q(1, 4));
    PolyCurve r = pushoff(t, c, Side::Right, q(1, 16)).curve;
    CHECK(r == vertical(t, q(5, 16)));
    CHECK(curves_disjoint(t, c, r));
}

TEST_CASE("tubular region around a straight curve") {
    Surface t = torus();
    TubularRegion region = tubular_region(t, vertical(t, q(1, 4)), q(1, 8));
    CHECK(region.radius == q(1, 8));
    CHECK(region.shape == RegionShape::Annulus);
    CHECK(region.left == vertical(t, q(1, 8)));
    CHECK(region.right == vertical(t, q(3, 8)));
}

TEST_CASE("strip around an arc between boundary components") {
    Surface s = s05();
    PolyCurve arc = curve(s, CurveKind::Arc, {pt(q(1, 2), 0), pt(q(1, 2), 1)});
    TubularRegion region = tubular_region(s, arc, q(1, 32));
    CHECK(region.shape == RegionShape::Strip);
    for (const PolyCurve* side : {&region.left, &region.right}) {
        CHECK(validate_curve(s, *side).ok);
        CHECK(s.on_boundary(side->segs.front().a));
        CHECK(s.on_boundary(side->segs.back().b));
    }
}

TEST_CASE("zig-zag region shrinks until embedded") {
    Surface t = torus();
    PolyCurve z = zigzag(t);
    TubularRegion region = tubular_region(t, z, q(1, 2));
    CHECK(region.radius < q(1, 2));
    CHECK(validate_curve(t, region.left).ok);
    CHECK(validate_curve(t, region.right).ok);
    CHECK(curves_disjoint(t, region.left, region.right));
    CHECK(curves_disjoint(t, region.left, z));
    CHECK(curves_disjoint(t, region.right, z));
    PolyCurve p = pushoff(t, z, Side::Left, q(1, 2)).curve;
    CHECK(intersect_curves(t, p, z).empty());
}

TEST_CASE("perturb against the curve itself gives a disjoint copy") {
    Surface t = torus();
    PolyCurve y = vertical(t, q(1, 4));
    PolyCurve g = perturb(t, y, {y}, q(1, 8));
    CHECK(intersect_curves(t, g, y).empty());
    CHECK(within_distance(t, y, g, q(1, 8)));
}

TEST_CASE("perturb keeps one crossing with a transversal") {
    Surface t = torus();
    PolyCurve y = vertical(t, q(1, 4));
    PolyCurve h = curve(t, CurveKind::Closed, {pt(0, q(1, 2)), pt(1, q(1, 2))});
    PolyCurve g = perturb(t, y, {h}, q(1, 8));
    IntersectionReport r = intersect_curves(t, g, h);
    CHECK(r.crossing_count == 1);
    CHECK(r.transverse());
}

TEST_CASE("perturb resolves overlaps and touchings") {
    Surface t = torus();
    PolyCurve y = vertical(t, q(1, 4));
    PolyCurve overlap = curve(t, CurveKind::Closed,
                              {pt(q(1, 2), q(1, 8)), pt(q(1, 4), q(1, 4)), pt(q(1, 4), q(1, 2)), pt(q(1, 2), q(5, 8))});
    PolyCurve touch = curve(t, CurveKind::Closed,
                            {pt(q(3, 4), q(1, 4)), pt(q(1, 4), q(3, 4)), pt(q(3, 4), q(7, 8)), pt(q(7, 8), q(1, 2))});
    REQUIRE(validate_curve(t, touch).ok);
    PolyCurve g = perturb(t, y, {overlap, touch}, q(1, 16));
    for (const PolyCurve* other : {&overlap, &touch}) {
        IntersectionReport r = intersect_curves(t, g, *other);
        CHECK(r.touching_count() == 0);
        for (const auto& c : r.components) CHECK_FALSE(c.interval);
    }
}

TEST_CASE("region representative") {
    Surface t = torus();
    TubularRegion region = tubular_region(t, vertical(t, q(1, 4)), q(1, 8));
    CHECK(region_representative(t, region, {}) == region.core);
    PolyCurve h = curve(t, CurveKind::Closed, {pt(0, q(1, 2)), pt(1, q(1, 2))});
    PolyCurve rep = region_representative(t, region, {h});
    CHECK(intersect_curves(t, rep, h).crossing_count == 1);
    Surface s = s05();
    PolyCurve arc = curve(s, CurveKind::Arc, {pt(q(1, 2), 0), pt(q(1, 2), 1)});
    PolyCurve across = curve(s, CurveKind::Arc, {pt(0, q(1, 2)), pt(1, q(1, 2))});
    TubularRegion strip = tubular_region(s, arc, q(1, 32));
    PolyCurve srep = region_representative(s, strip, {across});
    CHECK(intersect_curves(s, srep, across).crossing_count == 1);
}

TEST_CASE("pushoff family conditions") {
    Surface t = torus();
    std::vector<PolyCurve> fam{vertical(t, q(1, 4)), vertical(t, q(1, 2)), zigzag(t)};
    auto out = pushoff_family(t, fam);
    REQUIRE(out.size() == 3);
    CHECK(out[0] == fam[0]);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK((out[i] == fam[i] || curves_disjoint(t, out[i], fam[i])));
        for (std::size_t j = 0; j < 3; ++j) {
            if (i == j) continue;
            if (curves_disjoint(t, fam[i], fam[j])) {
                CHECK(curves_disjoint(t, out[i], out[j]));
                CHECK(curves_disjoint(t, out[i], fam[j]));
            }
            CHECK(intersect_curves(t, out[i], out[j]).transverse());
        }
    }
}
