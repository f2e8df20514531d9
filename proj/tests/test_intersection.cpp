#include "finecurve/intersection.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace finecurve;
using namespace fixtures;

TEST_CASE("segment intersection cases") {
    SegmentHit x = segment_intersect({pt(0, 0), pt(1, 1)}, {pt(0, 1), pt(1, 0)});
    CHECK(x.kind == HitKind::Point);
    CHECK(x.p0 == pt(q(1, 2), q(1, 2)));
    SegmentHit o = segment_intersect({pt(0, 0), pt(1, 0)}, {pt(q(1, 4), 0), pt(q(3, 4), 0)});
    CHECK(o.kind == HitKind::Overlap);
    CHECK(o.p0 == pt(q(1, 4), 0));
    CHECK(o.p1 == pt(q(3, 4), 0));
    CHECK(segment_intersect({pt(0, 0), pt(1, 0)}, {pt(0, 1), pt(1, 1)}).kind == HitKind::None);
}

TEST_CASE("straight meridian and longitude cross once") {
    Surface t = torus();
    PolyCurve u = curve(t, CurveKind::Closed, {pt(q(1, 4), 0), pt(q(1, 4), 1)});
    PolyCurve v = curve(t, CurveKind::Closed, {pt(0, q(1, 2)), pt(1, q(1, 2))});
    IntersectionReport r = intersect_curves(t, u, v);
    CHECK(r.components.size() == 1);
    CHECK(r.crossing_count == 1);
    REQUIRE(r.problem_set.size() == 1);
    CHECK(r.problem_set[0] == pt(q(1, 4), q(1, 2)));
    CHECK(intersect_curves(t, v, u).crossing_count == 1);
}

TEST_CASE("a curve touching from one side") {
    Surface t = torus();
    PolyCurve u = curve(t, CurveKind::Closed, {pt(q(1, 4), 0), pt(q(1, 4), 1)});
    PolyCurve v = curve(t, CurveKind::Closed,
                        {pt(q(1, 2), q(1, 4)), pt(q(1, 4), q(1, 2)), pt(q(1, 2), q(3, 4)), pt(q(3, 4), q(1, 2))});
    IntersectionReport r = intersect_curves(t, u, v);
    CHECK(r.components.size() == 1);
    CHECK(r.crossing_count == 0);
    CHECK(r.components[0].contact == Contact::Touching);
}

TEST_CASE("shared sub-segment, same side exit is touching") {
    Surface t = torus();
    PolyCurve u = curve(t, CurveKind::Closed, {pt(q(1, 4), 0), pt(q(1, 4), 1)});
    PolyCurve v = curve(t, CurveKind::Closed,
                        {pt(q(1, 2), q(1, 8)), pt(q(1, 4), q(1, 4)), pt(q(1, 4), q(1, 2)), pt(q(1, 2), q(5, 8))});
    IntersectionReport r = intersect_curves(t, u, v);
    REQUIRE(r.components.size() == 1);
    CHECK(r.components[0].interval);
    CHECK(r.components[0].contact == Contact::Touching);
    CHECK(r.problem_set == std::vector<Vec2>{pt(q(1, 4), q(1, 4)), pt(q(1, 4), q(1, 2))});
}

TEST_CASE("shared sub-segment with opposite exits is one crossing") {
    Surface t = torus();
    PolyCurve u = curve(t, CurveKind::Closed, {pt(q(1, 4), 0), pt(q(1, 4), 1)});
    PolyCurve v = curve(t, CurveKind::Closed,
                        {pt(0, q(1, 8)), pt(q(1, 4), q(1, 4)), pt(q(1, 4), q(1, 2)), pt(q(1, 2), q(5, 8)), pt(1, q(1, 8))});
    IntersectionReport r = intersect_curves(t, u, v);
    REQUIRE(r.components.size() == 1);
    CHECK(r.components[0].interval);
    CHECK(r.crossing_count == 1);
    CHECK(intersect_curves(t, v, u).crossing_count == 1);
}

TEST_CASE("problem sets") {
    Surface t = torus();
    PolyCurve a = torus_line(t, 1, 0, q(1, 3));
    PolyCurve b = torus_line(t, 1, 0, q(2, 3));
    CHECK(problem_set(t, {a, b}).empty());
    PolyCurve c = torus_line(t, 0, 1, q(1, 3));
    PolyCurve d = torus_line(t, 1, 1, q(1, 2));
    CHECK(problem_set(t, {a, c, d}).size() == 3);
}

TEST_CASE("identical curves are flagged") {
    Surface t = torus();
    PolyCurve a = torus_line(t, 2, 1, q(1, 3));
    CHECK(intersect_curves(t, a, a).identical);
}

TEST_CASE("crossings at glued points") {
    Surface t = torus();
    // The vertical curve crosses the horizontal line y = 0 exactly on the glued edge.
    PolyCurve u = curve(t, CurveKind::Closed, {pt(q(1, 4), 0), pt(q(1, 4), 1)});
    PolyCurve v = curve(t, CurveKind::Closed, {pt(0, q(1, 3)), pt(q(1, 2), 0), pt(q(1, 2), 1), pt(1, q(1, 3))});
    IntersectionReport r = intersect_curves(t, u, v);
    CHECK(r.crossing_count == intersect_curves(t, v, u).crossing_count);
}

TEST_CASE("torus lines meet in the determinant") {
    Surface t = torus();
    for (auto [p, qq, r, s] : std::vector<std::array<int, 4>>{{1, 0, 0, 1}, {2, 1, 1, 1}, {3, 2, -1, 4}, {5, 3, 2, -5}}) {
        PolyCurve a = torus_line(t, p, qq, q(1, 3));
        PolyCurve b = torus_line(t, r, s, q(1, 5));
        IntersectionReport rep = intersect_curves(t, a, b);
        CHECK(rep.crossing_count == torus_intersection_number(p, qq, r, s));
        CHECK(rep.transverse());
    }
}
