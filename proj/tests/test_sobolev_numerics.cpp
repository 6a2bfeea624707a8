#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "sobcurve/numerics.hpp"

using namespace sobcurve;
using doctest::Approx;

namespace {

constexpr double pi = 3.14159265358979323846;

VectorialMeasure unit_circle() {
    return parse_measure_text(R"({"curve": {"kind": "full_circle", "params": {"center": [0, 0], "radius": 1}}, "p": 2, "k": 0,
        "components": [{"j": 0, "pieces": [{"arc": [0, 6.283185307179586], "form": {"type": "power"}}]}]})");
}

VectorialMeasure legendre(int k = 0) {
    std::string comps = "[";
    for (int j = 0; j <= k; ++j)
        comps += std::string(j ? "," : "") + R"({"j": )" + std::to_string(j) +
                 R"(, "pieces": [{"arc": [0, 2], "form": {"type": "power"}}]})";
    return testing::on_segment(-1, 1, k, comps + "]");
}

Polynomial mono(int n) {
    Polynomial p;
    p.c.assign(static_cast<size_t>(n + 1), 0.0);
    p.c.back() = 1.0;
    return p;
}

}  // namespace

TEST_CASE("Chebyshev basis values and derivatives") {
    AdaptedBasis b = AdaptedBasis::for_curve(Curve::segment({-1, 0}, {3, 0}));
    CHECK(b.kind == AdaptedBasis::Kind::chebyshev);
    cplx z{2.0, 0.5};
    cplx zeta = (z - 1.0) / 2.0;
    std::vector<std::vector<cplx>> v;
    b.eval(z, 4, 2, v);
    CHECK(std::abs(v[0][3] - (4.0 * zeta * zeta * zeta - 3.0 * zeta)) < 1e-13);
    // d/dz = (1/2) d/dzeta
    CHECK(std::abs(v[1][3] - (12.0 * zeta * zeta - 3.0) / 2.0) < 1e-13);
    CHECK(std::abs(v[2][4] - (96.0 * zeta * zeta - 16.0) / 4.0) < 1e-12);
    // coefficient maps
    std::vector<cplx> a = {0.5, -1.0, 2.0, 0.25};
    Polynomial p = b.to_monomial(a);
    cplx direct = 0.0;
    for (int n = 0; n < 4; ++n) direct += a[n] * v[0][n];
    CHECK(std::abs(p.eval(z) - direct) < 1e-12);
    std::vector<cplx> za = b.times_z(a);
    Polynomial pz = b.to_monomial(za);
    CHECK(std::abs(pz.eval(z) - z * direct) < 1e-12);
}

TEST_CASE("moments and Sobolev products against closed forms") {
    VectorialMeasure leb = legendre();
    for (int m = 0; m <= 6; ++m)
        for (int n = 0; n <= 6; ++n) {
            double exact = (m + n) % 2 ? 0.0 : 2.0 / (m + n + 1);
            CHECK(std::abs(sobolev_inner(leb, mono(m), mono(n)) - exact) < 1e-13);
        }
    // int x^2 + int 1 on [-1, 1]
    CHECK(sobolev_inner(legendre(1), mono(1), mono(1)).real() == Approx(8.0 / 3.0));
    // circle: int z^m conj(z^n) ds = 2 pi delta
    VectorialMeasure c = unit_circle();
    CHECK(sobolev_inner(c, mono(3), mono(3)).real() == Approx(2 * pi));
    CHECK(std::abs(sobolev_inner(c, mono(3), mono(2))) < 1e-12);
    // int_0^1 x^{-1/2} = 2 and int_0^1 x^{1/2} = 2/3 through Gauss-Jacobi nodes
    VectorialMeasure sing = testing::on_segment(
        0, 1, 0, R"([{"j": 0, "pieces": [{"arc": [0, 1], "form": {"type": "power", "alpha_left": -0.5}}]}])");
    CHECK(sobolev_inner(sing, mono(0), mono(0)).real() == Approx(2.0).epsilon(1e-13));
    CHECK(sobolev_inner(sing, mono(1), mono(0)).real() == Approx(2.0 / 3.0).epsilon(1e-13));
    // atoms evaluate the derivative of their order
    VectorialMeasure at = testing::on_segment(0, 1, 1, R"([{"j": 0, "atoms": [{"t": 0.5, "mass": 2}]}, {"j": 1, "atoms": [{"t": 0.25, "mass": 3}]}])");
    // f = x^2: 2 f(0.5)^2 + 3 f'(0.25)^2
    CHECK(sobolev_inner(at, mono(2), mono(2)).real() == Approx(0.125 + 0.75));
    CHECK(sobolev_norm(leb, mono(0), 3.0) == Approx(std::cbrt(2.0)));
    CHECK_THROWS(sobolev_inner(testing::on_segment(0, 1, 0, R"([{"j": 0, "atoms": [{"t": 0.5, "mass": 1}]}])", 3.0),
                               mono(0), mono(0)));
}

TEST_CASE("Gram matrices") {
    GramMatrix g = gram_matrix(unit_circle(), 12);
    CHECK((g.G - 2 * pi * Eigen::MatrixXcd::Identity(13, 13)).cwiseAbs().maxCoeff() < 1e-12);
    VectorialMeasure mu = testing::corpus("jacobi_k1");
    GramMatrix par = gram_matrix(mu, 24), ser = gram_matrix_serial(mu, 24);
    CHECK(par.G == ser.G);
    CHECK((par.G - par.G.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    OrthoBasis ob = ortho_basis(par);
    CHECK(ob.residual < 1e-12);
    CHECK(orthonormality_residual(mu, ob) < 1e-10);
}

TEST_CASE("zero-norm polynomial makes the Gram matrix singular") {
    // f = x vanishes at the atom and has vanishing second and third derivatives
    VectorialMeasure mu = testing::corpus("heuristic_example");
    try {
        ortho_basis(gram_matrix(mu, 6));
        FAIL("expected a singular Gram matrix");
    } catch (const GramSingular& e) {
        CHECK(e.degree == 1);
        REQUIRE(e.null_coeffs.size() == 2);
        // x in the Chebyshev basis of [-1, 1] is T_1
        CHECK(std::abs(e.null_coeffs[0]) < 1e-10);
    }
    CHECK_THROWS_AS(arnoldi(mu, 6), GramSingular);
}

TEST_CASE("Legendre recurrence") {
    VectorialMeasure leb = legendre();
    ArnoldiResult ar = arnoldi(leb, 30);
    for (int n = 0; n < 30; ++n) {
        double b = (n + 1) / std::sqrt(4.0 * (n + 1) * (n + 1) - 1.0);
        CHECK(std::abs(ar.H(n + 1, n) - b) < 1e-12);
        CHECK(std::abs(ar.H(n, n)) < 1e-12);
    }
    // Cholesky route gives the same polynomials
    OrthoBasis ob = ortho_basis(gram_matrix(leb, 12));
    CHECK((ob.C - ar.basis.C.topLeftCorner(13, 13)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("circle: the multiplication matrix is the shift") {
    ArnoldiResult ar = arnoldi(unit_circle(), 16);
    for (int m = 0; m <= 17; ++m)
        for (int n = 0; n <= 16; ++n) CHECK(std::abs(ar.H(m, n) - (m == n + 1 ? 1.0 : 0.0)) < 1e-12);
}

TEST_CASE("companion-matrix zeros") {
    ZeroSet z = poly_zeros(Polynomial{{1.0, 0.0, 1.0}});
    REQUIRE(z.zeros.size() == 2);
    CHECK(std::abs(z.zeros[0] - cplx(0, -1)) < 1e-14);
    CHECK(std::abs(z.zeros[1] - cplx(0, 1)) < 1e-14);
    for (double r : z.residuals) CHECK(r < 1e-15);
    ZeroSet p = poly_zeros(mono(5));
    REQUIRE(p.zeros.size() == 5);
    for (auto v : p.zeros) CHECK(std::abs(v) < 1e-8);
    ZeroSet red = poly_zeros(Polynomial{{1.0, 1.0, 1e-20}});
    CHECK(red.reduced);
    REQUIRE(red.zeros.size() == 1);
    CHECK(std::abs(red.zeros[0] + 1.0) < 1e-14);
}

TEST_CASE("zero bound for Legendre") {
    MultOpReport r = verify_zero_bound(legendre(), 20, 64);
    CHECK(r.bound_ok);
    CHECK(r.sigma_max >= 0.995);
    CHECK(r.sigma_max <= 1.0 + 1e-10);
    const double s = std::sqrt(0.6);
    REQUIRE(r.zeros.size() == 20);
    CHECK(std::abs(r.zeros[2][0] + s) < 1e-8);
    CHECK(std::abs(r.zeros[2][1]) < 1e-8);
    CHECK(std::abs(r.zeros[2][2] - s) < 1e-8);
    CHECK(r.zero_crosscheck < 1e-6);
    CHECK(r.ortho_residual < 1e-10);
    // sigma_max grows monotonically in N
    for (size_t i = 1; i < r.sigma_history.size(); ++i)
        CHECK(r.sigma_history[i].second >= r.sigma_history[i - 1].second - 1e-14);
}
