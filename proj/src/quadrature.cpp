#include "sobcurve/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>
#include <tuple>

namespace sobcurve {

namespace {

std::mutex g_cache_mutex;

NodesWeights golub_welsch(int n, const std::vector<double>& alpha, const std::vector<double>& beta, double mu0) {
    Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) diag(i) = alpha[i];
    for (int i = 0; i + 1 < n; ++i) sub(i) = std::sqrt(beta[i + 1]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    NodesWeights nw;
    nw.x.resize(n);
    nw.w.resize(n);
    for (int i = 0; i < n; ++i) {
        nw.x[i] = es.eigenvalues()(i);
        double v0 = es.eigenvectors()(0, i);
        nw.w[i] = mu0 * v0 * v0;
    }
    return nw;
}

// Gauss-Kronrod 7/15 abscissae and weights
const double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
const double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
const double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fc = f(c);
    double resk = fc * kWgk[7];
    double resg = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        double dx = h * kXgk[j];
        double f1 = f(c - dx), f2 = f(c + dx);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    return {a, b, resk * h, std::abs((resk - resg) * h)};
}

}  // namespace

const NodesWeights& gauss_legendre(int n) {
    static std::map<int, NodesWeights> cache;
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    NodesWeights nw;
    nw.x.resize(n);
    nw.w.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton on P_n from the Chebyshev-like initial guess
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        if (n == 1) {
            p1 = x;
            p0 = 1.0;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        nw.x[n - 1 - i] = x;
        nw.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return cache.emplace(n, std::move(nw)).first->second;
}

double beta_fn(double a, double b) { return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)); }

const NodesWeights& gauss_jacobi(int n, double a, double b) {
    if (a == 0.0 && b == 0.0) return gauss_legendre(n);
    static std::map<std::tuple<int, double, double>, NodesWeights> cache;
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = cache.find({n, a, b});
        if (it != cache.end()) return it->second;
    }
    std::vector<double> alpha(n), beta(n + 1, 0.0);
    double ab = a + b;
    alpha[0] = (b - a) / (ab + 2.0);
    for (int k = 1; k < n; ++k) {
        double s = 2.0 * k + ab;
        alpha[k] = (b * b - a * a) / (s * (s + 2.0));
    }
    if (n > 1) beta[1] = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    for (int k = 2; k <= n; ++k) {
        double s = 2.0 * k + ab;
        beta[k] = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    double mu0 = std::pow(2.0, ab + 1.0) * beta_fn(a + 1.0, b + 1.0);
    NodesWeights nw = golub_welsch(n, alpha, beta, mu0);
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    return cache.emplace(std::make_tuple(n, a, b), std::move(nw)).first->second;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol,
                                    int max_intervals, double abs_floor) {
    QuadratureResult r;
    if (a == b) return r;
    double sign = 1.0;
    if (b < a) {
        std::swap(a, b);
        sign = -1.0;
    }
    std::priority_queue<Panel> heap;
    Panel p0 = gk15(f, a, b);
    heap.push(p0);
    r.evaluations = 15;
    double total = p0.value, err = p0.error;
    int count = 1;
    while (err > tol * std::max(abs_floor, std::abs(total)) && count < max_intervals) {
        Panel p = heap.top();
        heap.pop();
        double m = 0.5 * (p.a + p.b);
        if (!(m > p.a && m < p.b)) {
            heap.push(p);
            break;
        }
        Panel l = gk15(f, p.a, m), rr = gk15(f, m, p.b);
        r.evaluations += 30;
        total += l.value + rr.value - p.value;
        err += l.error + rr.error - p.error;
        heap.push(l);
        heap.push(rr);
        ++count;
    }
    // resum to limit cancellation drift
    total = 0.0;
    err = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    r.value = sign * total;
    r.error = err;
    r.converged = err <= tol * std::max(abs_floor, std::abs(total)) && std::isfinite(total);
    return r;
}

QuadratureResult integrate_singular(const std::function<double(double)>& f, double a, double b, double alpha_a,
                                    double alpha_b, double tol) {
    QuadratureResult r;
    if (a == b) return r;
    double m = 0.5 * (a + b), h = m - a;
    auto half = [&](double base, double dir, double alpha) {
        if (alpha == 0.0 || (alpha > 0.0 && alpha == std::floor(alpha)))
            return integrate_adaptive([&](double t) { return f(t); }, dir > 0 ? base : base - h,
                                      dir > 0 ? base + h : base, tol);
        double q = 1.0 / (1.0 + alpha);
        // t = base + dir * h * u^q, dt = h q u^(q-1) du
        auto g = [&, q](double u) {
            if (u <= 0.0) return 0.0;
            double t = base + dir * h * std::pow(u, q);
            double v = f(t);
            if (v == 0.0) return 0.0;
            return v * h * q * std::pow(u, q - 1.0);
        };
        return integrate_adaptive(g, 0.0, 1.0, tol);
    };
    QuadratureResult left = half(a, 1.0, alpha_a);
    QuadratureResult right = half(b, -1.0, alpha_b);
    r.value = left.value + right.value;
    r.error = left.error + right.error;
    r.evaluations = left.evaluations + right.evaluations;
    r.converged = left.converged && right.converged;
    return r;
}

ProbeResult probe_integrability(const std::function<double(double)>& g, double end, double dir, double h) {
    ProbeResult pr;
    // stop before cancellation in the evaluator dominates
    double floor_width = 1e-8 * std::max(1.0, std::abs(end));
    int levels = 1;
    while (levels < 60 && h * std::ldexp(1.0, -levels) > floor_width) ++levels;
    std::vector<double> shells;
    double total = 0.0;
    for (int n = 0; n < levels; ++n) {
        double outer = h * std::ldexp(1.0, -n), inner = h * std::ldexp(1.0, -n - 1);
        double a = end + dir * inner, b = end + dir * outer;
        if (a == b) break;
        QuadratureResult q = integrate_adaptive(g, std::min(a, b), std::max(a, b), 1e-9, 200, 0.0);
        if (!std::isfinite(q.value)) {
            pr.verdict = Integrability::infinite;
            pr.partial = INFINITY;
            return pr;
        }
        shells.push_back(q.value);
        total += q.value;
    }
    pr.partial = total;
    int n = static_cast<int>(shells.size());
    if (n < 12) return pr;
    // Look at the tail where power-law behaviour has settled.
    double rmin = 1e300, rmax = -1e300;
    int used = 0;
    for (int i = n - 10; i < n; ++i) {
        if (shells[i - 1] <= 0.0) {
            if (shells[i] <= 0.0) continue;
            rmin = std::min(rmin, 1e300);
            rmax = 1e300;
            ++used;
            continue;
        }
        double r = shells[i] / shells[i - 1];
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
        ++used;
    }
    if (used == 0) {
        // integrand vanishes near the end
        pr.verdict = Integrability::finite;
        pr.ratio = 0.0;
        return pr;
    }
    pr.ratio = rmax;
    if (rmax < 0.98) pr.verdict = Integrability::finite;
    else if (rmin > 0.999) pr.verdict = Integrability::infinite;
    return pr;
}

}  // namespace sobcurve
