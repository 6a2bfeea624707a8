#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sobcurve/curve.hpp"
#include "sobcurve/point_set.hpp"

using namespace sobcurve;
using doctest::Approx;

namespace {
constexpr double pi = 3.14159265358979323846;
}

TEST_CASE("segment is parametrised by arc length") {
    Curve c = Curve::segment({-1, 0}, {1, 0});
    CHECK(c.length() == Approx(2.0));
    CHECK(!c.closed());
    CHECK(c.point_at(0.5).real() == Approx(-0.5));
    CHECK(std::abs(c.tangent_at(1.0) - cplx(1, 0)) < 1e-14);
    Curve r = c.reversed();
    CHECK(std::abs(r.point_at(0.5) - c.point_at(1.5)) < 1e-14);
}

TEST_CASE("full circle wraps around") {
    Curve c = Curve::full_circle({0, 0}, 2.0);
    CHECK(c.closed());
    CHECK(c.length() == Approx(4 * pi));
    CHECK(std::abs(c.point_at(0.0) - c.point_at(c.length())) < 1e-12);
    CHECK(std::abs(c.point_at(pi) - cplx(0, 2)) < 1e-12);
    CHECK(c.arc_length({3 * pi, pi}) == Approx(2 * pi));
}

TEST_CASE("circle arc and polyline") {
    Curve a = Curve::circle_arc({1, 0}, 1.0, 0.0, pi / 2);
    CHECK(a.length() == Approx(pi / 2));
    CHECK(std::abs(a.point_at(pi / 2) - cplx(1, 1)) < 1e-12);
    Curve p = Curve::polyline({{0, 0}, {1, 0}, {1, 1}});
    CHECK(p.length() == Approx(2.0));
    CHECK(std::abs(p.point_at(1.5) - cplx(1, 0.5)) < 1e-14);
    CHECK(p.vertex_params().size() == 3);
    Curve sq = Curve::polyline({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}});
    CHECK(sq.closed());
    CHECK(sq.length() == Approx(4.0));
}

TEST_CASE("degenerate curves are rejected") {
    CHECK_THROWS_AS(Curve::segment({1, 1}, {1, 1}), CurveError);
    CHECK_THROWS_AS(Curve::full_circle({0, 0}, 0.0), CurveError);
}

TEST_CASE("point sets track half-points") {
    const double L = 2.0;
    PointSet s = PointSet::open_arc(L, false, 0.5, 1.0);
    CHECK(s.contains(0.75, Side::left));
    CHECK(!s.contains(0.5, Side::left));
    CHECK(!s.contains(0.5, Side::right));
    CHECK(!s.contains_point(1.0));

    PointSet c = PointSet::closed_arc(L, false, 0.5, 1.0);
    CHECK(c.contains(0.5, Side::right));
    CHECK(!c.contains(0.5, Side::left));
    CHECK(c.contains(1.0, Side::left));
    CHECK(c.contains_closed(0.5, 1.0));

    PointSet u = s.unite(PointSet::open_arc(L, false, 1.0, 1.5));
    CHECK(u.components().size() == 2);
    u.assign_half(1.0, Side::left, true);
    u.assign_half(1.0, Side::right, true);
    CHECK(u.components().size() == 1);
    CHECK(u.contains_open(0.5, 1.5));
    CHECK(u.measure() == Approx(1.0));

    PointSet comp = u.complement();
    CHECK(comp.measure() == Approx(1.0));
    CHECK(comp.intersect(u).empty());
}

TEST_CASE("open curve ends are one-sided") {
    PointSet w = PointSet::whole(1.0, false);
    CHECK(w.contains_point(0.0));
    CHECK(w.contains_point(1.0));
    PointSet o = PointSet::open_arc(1.0, false, 0.0, 1.0);
    CHECK(!o.contains_point(0.0));
}

TEST_CASE("closed curves identify 0 with L") {
    const double L = 2 * pi;
    PointSet s = PointSet::open_arc(L, true, 5.0, L).unite(PointSet::open_arc(L, true, 0.0, 1.0));
    s.assign_half(0.0, Side::left, true);
    s.assign_half(0.0, Side::right, true);
    auto comps = s.components();
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].wraps);
    CHECK(comps[0].length(L) == Approx(L - 4.0));
    CHECK(PointSet::whole(L, true).components()[0].whole);
}
