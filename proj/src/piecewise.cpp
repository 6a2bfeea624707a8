#include "sobcurve/piecewise.hpp"

#include <algorithm>
#include <cmath>

namespace sobcurve {

namespace {

double falling(int i, int m) {
    double r = 1.0;
    for (int q = 0; q < m; ++q) r *= i - q;
    return r;
}

}  // namespace

cplx PolyPart::derivative(cplx z, int m) const {
    cplx zeta = (z - center) / scale;
    cplx acc{0.0, 0.0};
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= m; --i) acc = acc * zeta + coeffs[i] * falling(i, m);
    return acc / std::pow(scale, m);
}

bool PolyPart::covers(double t, double L, bool closed) const {
    double e = 1e-12 * std::max(1.0, L);
    if (t >= t0 - e && t <= t1 + e) return true;
    return closed && t1 > L && t + L <= t1 + e;
}

cplx PiecewisePolynomial::derivative(const Curve& c, double t, int m, Side side) const {
    double L = c.length();
    double e = 1e-12 * std::max(1.0, L);
    cplx z = c.point_at(std::clamp(t, 0.0, L));
    for (auto& p : parts) {
        if (!p.covers(t, L, c.closed())) continue;
        double tt = t;
        if (c.closed() && p.t1 > L && t < p.t0 - e) tt = t + L;
        // prefer the part that extends to the requested side of t
        bool into = side == Side::right ? tt < p.t1 - e : tt > p.t0 + e;
        if (into) return p.derivative(z, m);
    }
    return {0.0, 0.0};
}

PiecewisePolynomial PiecewisePolynomial::times_z() const {
    PiecewisePolynomial out = *this;
    for (auto& p : out.parts) {
        // z = center + scale * zeta
        std::vector<cplx> c(p.coeffs.size() + 1, cplx{0.0, 0.0});
        for (size_t i = 0; i < p.coeffs.size(); ++i) {
            c[i] += p.center * p.coeffs[i];
            c[i + 1] += p.scale * p.coeffs[i];
        }
        p.coeffs = c;
    }
    return out;
}

double PiecewisePolynomial::sup_abs(const Curve& c, int samples) const {
    double L = c.length(), s = 0.0;
    for (auto& p : parts)
        for (int i = 0; i <= samples; ++i) {
            double t = p.t0 + (p.t1 - p.t0) * i / samples;
            if (t > L) t -= L;
            s = std::max(s, std::abs(p.derivative(c.point_at(std::clamp(t, 0.0, L)), 0)));
        }
    return s;
}

double sobolev_norm(const VectorialMeasure& mu, const PiecewisePolynomial& f, const PointSet& region, double p,
                    double tol) {
    double L = mu.length();
    double total = 0.0;
    for (int j = 0; j <= mu.k; ++j) {
        MeasureComponent c = restrict_component(mu.comp(j), region);
        for (auto& part : f.parts) {
            auto g = [&](double t) { return std::pow(std::abs(part.derivative(mu.curve.point_at(t), j)), p); };
            std::vector<std::pair<double, double>> spans;
            if (part.t1 > L) spans = {{part.t0, L}, {0.0, part.t1 - L}};
            else spans = {{part.t0, part.t1}};
            for (auto [a, b] : spans)
                if (b > a) total += integrate_weight(c, a, b, g, tol);
        }
        for (auto& a : c.atoms) {
            if (a.mass <= 0.0) continue;
            double v = std::max(std::abs(f.derivative(mu.curve, a.t, j, Side::left)),
                                std::abs(f.derivative(mu.curve, a.t, j, Side::right)));
            total += a.mass * std::pow(v, p);
        }
    }
    return std::pow(total, 1.0 / p);
}

}  // namespace sobcurve
