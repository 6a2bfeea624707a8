#pragma once

#include <functional>
#include <vector>

namespace sobcurve {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    bool converged = true;
};

struct NodesWeights {
    std::vector<double> x, w;
};

// Gauss-Legendre on [-1, 1].
const NodesWeights& gauss_legendre(int n);
// Gauss-Jacobi on [-1, 1] for the weight (1-x)^a (1+x)^b, a, b > -1.
const NodesWeights& gauss_jacobi(int n, double a, double b);

// Adaptive Gauss-Kronrod (7/15) on [a, b].
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tol = 1e-10, int max_intervals = 4000,
                                    double abs_floor = 1.0);

// Integrand behaving like (t-a)^alpha_a near a and (b-t)^alpha_b near b.
// Each half is mapped with t - a = h * u^(1/(1+alpha)) so the transformed
// integrand is smooth.
QuadratureResult integrate_singular(const std::function<double(double)>& f, double a, double b, double alpha_a,
                                    double alpha_b, double tol = 1e-10);

// Beta function via lgamma.
double beta_fn(double a, double b);

enum class Integrability { finite, infinite, unknown };

// Decides whether g >= 0 is integrable near `end` on the side pointing into
// [end, end + dir * h] by looking at the decay of dyadic shell integrals.
struct ProbeResult {
    Integrability verdict = Integrability::unknown;
    double ratio = 0.0;  // asymptotic ratio of consecutive shells
    double partial = 0.0;
};
ProbeResult probe_integrability(const std::function<double(double)>& g, double end, double dir, double h);

}  // namespace sobcurve
