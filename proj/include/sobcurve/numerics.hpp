#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sobcurve/measure.hpp"
#include "sobcurve/quadrature.hpp"

namespace sobcurve {

// Polynomial in z with monomial coefficients c0 + c1 z + ...
struct Polynomial {
    std::vector<cplx> c;
    cplx eval(cplx z, int deriv = 0) const;
    int degree() const { return static_cast<int>(c.size()) - 1; }
};

// Basis adapted to the curve: Chebyshev polynomials T_n(zeta) on segments and
// polylines, monomials zeta^n on circles, with zeta = (z - center) / scale.
class AdaptedBasis {
public:
    enum class Kind { chebyshev, monomial };

    static AdaptedBasis for_curve(const Curve& c);

    Kind kind = Kind::chebyshev;
    cplx center{0.0, 0.0};
    cplx scale{1.0, 0.0};

    // out[d][n] = d-th z-derivative of phi_n at z, n = 0..N, d = 0..D
    void eval(cplx z, int N, int D, std::vector<std::vector<cplx>>& out) const;
    // coefficients of z f from those of f (one longer)
    std::vector<cplx> times_z(const std::vector<cplx>& a) const;
    // monomial coefficients in zeta
    std::vector<cplx> to_zeta_monomial(const std::vector<cplx>& a) const;
    Polynomial to_monomial(const std::vector<cplx>& a) const;
    std::string name() const { return kind == Kind::chebyshev ? "chebyshev" : "monomial"; }
};

// Quadrature nodes for one component: integral of g against mu_j is
// sum_i w[i] g(z[i]) (atoms included with their masses).
struct NodeTable {
    int j = 0;
    std::vector<double> t, w;
    std::vector<cplx> z;
};

// Rules exact for polynomials of the given degree on segments and polylines
// (Gauss-Jacobi on power pieces, Gauss-Legendre elsewhere, split at table
// kinks and polyline vertices); circle panels span at most pi/4.
std::vector<NodeTable> node_tables(const VectorialMeasure& mu, int degree, int extra_nodes = 16);

struct ComplexQuadrature {
    cplx value{0.0, 0.0};
    double error = 0.0;
    int evaluations = 0;
    bool converged = true;
};
// Adaptive integral of f(z(s)) w(s) ds over the arc.
ComplexQuadrature integrate_weighted(const Curve& c, const Arc& a, const MeasureComponent& w,
                                     const std::function<cplx(cplx)>& f, double tol = 1e-10);

// Sesquilinear product, conjugate on the second argument (p = 2 only).
cplx sobolev_inner(const VectorialMeasure& mu, const Polynomial& f, const Polynomial& g);
double sobolev_norm(const VectorialMeasure& mu, const Polynomial& f, double p);

// G(m, n) = <phi_n, phi_m>, so that <f, g> = b^H G a for coefficient vectors
// a of f and b of g.
struct GramMatrix {
    int N = 0;
    AdaptedBasis basis;
    Eigen::MatrixXcd G;
};
GramMatrix gram_matrix(const VectorialMeasure& mu, int N);
GramMatrix gram_matrix_serial(const VectorialMeasure& mu, int N);

// Thrown when a nonzero polynomial of the reported degree has zero norm.
class GramSingular : public std::runtime_error {
public:
    GramSingular(int degree, std::vector<cplx> null_coeffs)
        : std::runtime_error("Sobolev Gram matrix singular at degree " + std::to_string(degree)),
          degree(degree),
          null_coeffs(std::move(null_coeffs)) {}
    int degree;
    std::vector<cplx> null_coeffs;  // adapted basis
};

struct OrthoBasis {
    AdaptedBasis basis;
    Eigen::MatrixXcd C;  // column n: coefficients of q_n (upper triangular)
    double residual = 0.0;  // max |<q_m, q_n> - delta_mn|
};

// Cholesky route; pivots below 1e-12 trace / (N + 1) raise GramSingular.
OrthoBasis ortho_basis(const GramMatrix& g);

// Arnoldi route on the node tables: q_0 .. q_{N+1} and the Hessenberg matrix
// H(m, n) = <z q_n, q_m>, of size (N + 2) x (N + 1).
struct ArnoldiResult {
    OrthoBasis basis;
    Eigen::MatrixXcd H;
};
ArnoldiResult arnoldi(const VectorialMeasure& mu, int N);

// Orthonormality defect of the basis under an independent quadrature rule.
double orthonormality_residual(const VectorialMeasure& mu, const OrthoBasis& ob);

struct ZeroSet {
    std::vector<cplx> zeros;
    std::vector<double> residuals;  // |q(z)| / sum |c_i| |z|^i
    bool reduced = false;           // leading coefficients dropped
};
ZeroSet poly_zeros(const Polynomial& q);

struct MultOpReport {
    int N = 0;
    Eigen::MatrixXcd M;
    double sigma_max = 0.0;
    std::vector<std::pair<int, double>> sigma_history;
    std::vector<std::vector<cplx>> zeros;  // zeros[n - 1]: zeros of q_n
    double max_zero = 0.0;
    double tol = 0.05;
    bool bound_ok = false;
    double ortho_residual = 0.0;
    double zero_crosscheck = 0.0;  // largest distance to the companion-matrix zeros
};

MultOpReport multiplication_matrix(const VectorialMeasure& mu, int N);
MultOpReport verify_zero_bound(const VectorialMeasure& mu, int n_max, int N, double tol = 0.05);

}  // namespace sobcurve
