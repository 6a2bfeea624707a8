#pragma once

#include <vector>

#include "sobcurve/measure.hpp"

namespace sobcurve {

// Polynomial in z on a parameter arc, stored in the scaled basis
// ((z - center) / scale)^i. For a wrap-around arc on a closed curve t1 is
// given unwrapped (t1 > L).
struct PolyPart {
    double t0 = 0.0, t1 = 0.0;
    cplx center{0.0, 0.0};
    double scale = 1.0;
    std::vector<cplx> coeffs;

    // d^m/dz^m at the curve point z.
    cplx derivative(cplx z, int m) const;
    bool covers(double t, double L, bool closed) const;  // t in the closed arc
};

// Function that is a polynomial on each part and zero elsewhere.
struct PiecewisePolynomial {
    std::vector<PolyPart> parts;

    cplx derivative(const Curve& c, double t, int m, Side side) const;
    // z * f on every part.
    PiecewisePolynomial times_z() const;
    // sup |f| over the parts, sampled
    double sup_abs(const Curve& c, int samples = 64) const;
};

// Sobolev norm of a piecewise polynomial for the measure mu restricted to
// `region`: weights integrate over the parts, atoms evaluate at their
// location (largest one-sided value where two parts meet).
double sobolev_norm(const VectorialMeasure& mu, const PiecewisePolynomial& f, const PointSet& region, double p,
                    double tol = 1e-12);

}  // namespace sobcurve
