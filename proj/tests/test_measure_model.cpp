#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>

#include "helpers.hpp"
#include "sobcurve/measure.hpp"
#include "sobcurve/measure_io.hpp"
#include "sobcurve/quadrature.hpp"

using namespace sobcurve;
using doctest::Approx;

TEST_CASE("Gauss rules integrate polynomials exactly") {
    const NodesWeights& g = gauss_legendre(5);
    double s = 0.0;
    for (size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * std::pow(g.x[i], 8);
    CHECK(s == Approx(2.0 / 9.0).epsilon(1e-14));
    // (1-x)^a (1+x)^b against x^2: closed form through Beta functions
    double a = 0.5, b = 3.0;
    const NodesWeights& j = gauss_jacobi(6, a, b);
    double q = 0.0;
    for (size_t i = 0; i < j.x.size(); ++i) q += j.w[i] * j.x[i] * j.x[i];
    // substitute x = 2u - 1: 2^(a+b+1) int u^b (1-u)^a (2u-1)^2 du
    double exact = std::pow(2.0, a + b + 1) *
                   (4 * beta_fn(b + 3, a + 1) - 4 * beta_fn(b + 2, a + 1) + beta_fn(b + 1, a + 1));
    CHECK(q == Approx(exact).epsilon(1e-13));
}

TEST_CASE("singular endpoint integrals") {
    auto r = integrate_singular([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0, -0.5, 0.0);
    CHECK(r.value == Approx(2.0).epsilon(1e-10));
    auto q = integrate_adaptive([](double t) { return std::exp(t); }, 0.0, 1.0);
    CHECK(q.value == Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
    CHECK(probe_integrability([](double t) { return 1.0 / (t * t); }, 0.0, 1.0, 1.0).verdict == Integrability::infinite);
    CHECK(probe_integrability([](double t) { return std::pow(t, -0.5); }, 0.0, 1.0, 1.0).verdict == Integrability::finite);
}

TEST_CASE("round trip of every corpus document") {
    for (auto& e : std::filesystem::directory_iterator(SOBCURVE_DATA_DIR)) {
        if (e.path().extension() != ".json") continue;
        CAPTURE(e.path().string());
        VectorialMeasure mu = load_measure(e.path().string());
        json once = serialize_measure(mu);
        VectorialMeasure back = parse_measure(once);
        CHECK(back == mu);
        CHECK(serialize_measure(back) == once);
    }
}

TEST_CASE("exact spellings survive parsing") {
    VectorialMeasure mu = testing::corpus("k1_two_components");
    REQUIRE(!mu.comp(0).atoms.empty());
    CHECK(mu.comp(0).atoms[0].t == 0.5);
    CHECK(mu.comp(0).atoms[0].exact_t == "1/2");
    CHECK(parse_number(json("3/8")) == 0.375);
    CHECK(parse_number(json("-1.25")) == -1.25);
}

TEST_CASE("malformed documents are rejected") {
    CHECK_THROWS(parse_measure_text(R"({"p": 2})"));
    CHECK_THROWS(parse_measure_text(R"({"family": "nope", "depth": 2})"));
    // pieces must tile the curve
    CHECK_THROWS(testing::on_segment(0, 1, 0, R"([{"j": 0, "pieces": [{"arc": [0, 0.5], "form": {"type": "zero"}}]}])"));
    // atoms carry positive mass
    CHECK_THROWS(testing::on_segment(0, 1, 0, R"([{"j": 0, "atoms": [{"t": 0.5, "mass": -1}]}])"));
}

TEST_CASE("dyadic generator masses") {
    for (int d = 0; d <= 4; ++d) {
        VectorialMeasure mu = dyadic_counterexample(d);
        CHECK(mu.comp(0).atom_mass() == Approx(2.0 - std::ldexp(1.0, -d)));
        CHECK(mu.comp(1).atom_mass() == Approx(2.0 - std::ldexp(1.0, -d)));
        CHECK(mu.comp(2).ac_zero());
        // int (b - x)^3 (x - a)^3 = (b - a)^7 / 140
        double expect = 0.0;
        for (int m = 0; m <= d; ++m) expect += std::pow(std::ldexp(1.0, -2 * m) - std::ldexp(1.0, -2 * m - 2), 7) / 140.0;
        CHECK(total_mass(mu.comp(3), 1.0) == Approx(expect).epsilon(1e-10));
        CHECK(mu.family->infinite);
        CHECK(mu.tails.size() == 1);
    }
    CHECK(dyadic_counterexample(2, 2.0, false).tails.empty());
}

TEST_CASE("weight integrals, restriction and decomposition") {
    // w = x^2 on [0, 1] plus an atom
    VectorialMeasure mu = testing::on_segment(
        0, 1, 0, R"([{"j": 0, "pieces": [{"arc": [0, 1], "form": {"type": "power", "alpha_left": 2}}], "atoms": [{"t": 0.25, "mass": 3}]}])");
    const MeasureComponent& c = mu.comp(0);
    CHECK(ac_mass(c, 0.0, 1.0) == Approx(1.0 / 3.0));
    CHECK(integrate_weight(c, 0.0, 0.5, [](double t) { return t; }) == Approx(1.0 / 64.0));
    CHECK(total_mass(c, 1.0) == Approx(3.0 + 1.0 / 3.0));

    PointSet half = PointSet::closed_arc(1.0, false, 0.5, 1.0);
    MeasureComponent r = restrict_component(c, half);
    CHECK(r.atoms.empty());
    CHECK(total_mass(r, 1.0) == Approx(7.0 / 24.0));

    Decomposition d = decompose(c, PointSet::open_arc(1.0, false, 0.0, 0.5), 1.0);
    CHECK(d.ac_mass == Approx(1.0 / 24.0));
    CHECK(d.star_mass == Approx(3.0 + 7.0 / 24.0));
}

// Reversal recomputes L - t in floating point and drops exact spellings.
VectorialMeasure plain(VectorialMeasure mu) {
    for (auto& c : mu.components) {
        for (auto& a : c.atoms) a.exact_t = a.exact_mass = "";
        for (auto& p : c.pieces) p.exact_t0 = p.exact_t1 = "";
    }
    return mu;
}

TEST_CASE("reversal and scaling") {
    VectorialMeasure mu = testing::corpus("heuristic_example");
    VectorialMeasure r = reverse_measure(mu);
    CHECK(reverse_measure(r) == plain(mu));
    for (int j = 0; j <= mu.k; ++j) CHECK(total_mass(r.comp(j), r.length()) == Approx(total_mass(mu.comp(j), mu.length())));
    VectorialMeasure s = scale_measure(mu, 2.5);
    for (int j = 0; j <= mu.k; ++j)
        CHECK(total_mass(s.comp(j), s.length()) == Approx(2.5 * total_mass(mu.comp(j), mu.length())));
}
