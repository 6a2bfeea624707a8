#include "sobcurve/numerics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace sobcurve {

namespace {

constexpr double kPi = 3.14159265358979323846;

double eps_of(double L) { return 1e-12 * std::max(1.0, L); }

// Pairwise sum of f(i) for i in [lo, hi): fixed association order.
template <class F>
cplx pairwise(F&& f, size_t lo, size_t hi) {
    if (hi - lo <= 32) {
        cplx s{0.0, 0.0};
        for (size_t i = lo; i < hi; ++i) s += f(i);
        return s;
    }
    size_t mid = lo + (hi - lo) / 2;
    return pairwise(f, lo, mid) + pairwise(f, mid, hi);
}

int smooth_degree(const WeightForm& f) {
    if (auto* p = std::get_if<PowerForm>(&f.v))
        return p->smooth && p->smooth->kind == Evaluator::Kind::polynomial ? static_cast<int>(p->smooth->coeffs.size()) : 0;
    if (auto* m = std::get_if<MonotoneForm>(&f.v))
        return m->eval.kind == Evaluator::Kind::polynomial ? static_cast<int>(m->eval.coeffs.size()) : 0;
    if (auto* g = std::get_if<GeneralForm>(&f.v))
        return g->eval.kind == Evaluator::Kind::polynomial ? static_cast<int>(g->eval.coeffs.size()) : 0;
    return 0;
}

std::vector<double> kinks_of(const WeightForm& f) {
    if (auto* m = std::get_if<MonotoneForm>(&f.v)) return m->eval.kinks();
    if (auto* g = std::get_if<GeneralForm>(&f.v)) return g->eval.kinks();
    if (auto* p = std::get_if<PowerForm>(&f.v)) return p->smooth ? p->smooth->kinks() : std::vector<double>{};
    return {};
}

// Panels of [t0, t1] split at the given points and at curve structure.
std::vector<std::pair<double, double>> panels(const Curve& c, double t0, double t1, std::vector<double> cuts) {
    double e = eps_of(c.length());
    if (c.kind() == CurveKind::polyline)
        for (double v : c.vertex_params()) cuts.push_back(v);
    cuts.push_back(t0);
    cuts.push_back(t1);
    std::vector<double> pts;
    for (double x : cuts)
        if (x >= t0 - e && x <= t1 + e) pts.push_back(std::clamp(x, t0, t1));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(), [&](double a, double b) { return std::abs(a - b) <= e; }), pts.end());
    std::vector<std::pair<double, double>> out;
    bool round = c.kind() == CurveKind::circle_arc || c.kind() == CurveKind::full_circle;
    double max_len = round ? c.radius() * kPi / 4.0 : INFINITY;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        double a = pts[i], b = pts[i + 1];
        int n = std::max(1, static_cast<int>(std::ceil((b - a) / max_len - 1e-12)));
        for (int q = 0; q < n; ++q) out.push_back({a + (b - a) * q / n, q + 1 == n ? b : a + (b - a) * (q + 1) / n});
    }
    return out;
}

void add_term(NodeTable& tab, const Curve& curve, const WeightForm& term, double u0, double u1, int n) {
    double L = curve.length(), e = eps_of(L);
    double h = 0.5 * (u1 - u0), mid = 0.5 * (u0 + u1);
    if (auto* p = std::get_if<PowerForm>(&term.v)) {
        double bl = std::abs(p->anchor0 - u0) <= e ? p->alpha0 : 0.0;
        double ar = std::abs(p->anchor1 - u1) <= e ? p->alpha1 : 0.0;
        const NodesWeights& gj = gauss_jacobi(n, ar, bl);
        double f = std::pow(h, bl + ar);
        for (size_t i = 0; i < gj.x.size(); ++i) {
            double t = mid + h * gj.x[i];
            double rest = p->c;
            if (bl == 0.0 && p->alpha0 != 0.0) rest *= std::pow(std::abs(t - p->anchor0), p->alpha0);
            if (ar == 0.0 && p->alpha1 != 0.0) rest *= std::pow(std::abs(p->anchor1 - t), p->alpha1);
            if (p->smooth) rest *= (*p->smooth)(t);
            double w = h * f * gj.w[i] * rest;
            if (w == 0.0) continue;
            tab.t.push_back(t);
            tab.z.push_back(curve.point_at(t));
            tab.w.push_back(w);
        }
        return;
    }
    const NodesWeights& gl = gauss_legendre(n);
    for (size_t i = 0; i < gl.x.size(); ++i) {
        double t = mid + h * gl.x[i];
        double w = h * gl.w[i] * term.value(t);
        if (w == 0.0) continue;
        tab.t.push_back(t);
        tab.z.push_back(curve.point_at(t));
        tab.w.push_back(w);
    }
}

}  // namespace

cplx Polynomial::eval(cplx z, int deriv) const {
    cplx acc{0.0, 0.0};
    for (int i = degree(); i >= deriv; --i) {
        double f = 1.0;
        for (int q = 0; q < deriv; ++q) f *= i - q;
        acc = acc * z + c[static_cast<size_t>(i)] * f;
    }
    return acc;
}

AdaptedBasis AdaptedBasis::for_curve(const Curve& c) {
    AdaptedBasis b;
    switch (c.kind()) {
        case CurveKind::segment:
            b.kind = Kind::chebyshev;
            b.center = 0.5 * (c.a() + c.b());
            b.scale = 0.5 * (c.b() - c.a());
            break;
        case CurveKind::polyline:
            b.kind = Kind::chebyshev;
            b.center = c.bbox_center();
            b.scale = c.bbox_radius();
            break;
        default:
            b.kind = Kind::monomial;
            b.center = c.center();
            b.scale = c.radius();
    }
    return b;
}

void AdaptedBasis::eval(cplx z, int N, int D, std::vector<std::vector<cplx>>& out) const {
    out.assign(static_cast<size_t>(D + 1), std::vector<cplx>(static_cast<size_t>(N + 1), cplx{0.0, 0.0}));
    cplx zeta = (z - center) / scale;
    if (kind == Kind::monomial) {
        for (int d = 0; d <= D; ++d) {
            cplx sd = std::pow(scale, d);
            for (int n = d; n <= N; ++n) {
                double f = 1.0;
                for (int q = 0; q < d; ++q) f *= n - q;
                out[d][n] = f * std::pow(zeta, n - d) / sd;
            }
        }
        return;
    }
    // Chebyshev recurrence differentiated d times in zeta
    for (int d = 0; d <= D; ++d) {
        auto& T = out[d];
        T[0] = d == 0 ? 1.0 : 0.0;
        if (N >= 1) T[1] = d == 0 ? zeta : (d == 1 ? cplx{1.0, 0.0} : cplx{0.0, 0.0});
        for (int n = 1; n < N; ++n) {
            cplx v = 2.0 * zeta * T[n] - T[n - 1];
            if (d > 0) v += 2.0 * d * out[d - 1][n];
            T[n + 1] = v;
        }
    }
    for (int d = 1; d <= D; ++d) {
        cplx sd = std::pow(scale, d);
        for (auto& v : out[d]) v /= sd;
    }
}

std::vector<cplx> AdaptedBasis::times_z(const std::vector<cplx>& a) const {
    std::vector<cplx> r(a.size() + 1, cplx{0.0, 0.0});
    for (size_t i = 0; i < a.size(); ++i) r[i] += center * a[i];
    if (kind == Kind::monomial) {
        for (size_t i = 0; i < a.size(); ++i) r[i + 1] += scale * a[i];
    } else {
        for (size_t i = 0; i < a.size(); ++i) {
            if (i == 0) r[1] += scale * a[0];
            else {
                r[i + 1] += 0.5 * scale * a[i];
                r[i - 1] += 0.5 * scale * a[i];
            }
        }
    }
    return r;
}

std::vector<cplx> AdaptedBasis::to_zeta_monomial(const std::vector<cplx>& a) const {
    if (kind == Kind::monomial) return a;
    size_t n = a.size();
    std::vector<cplx> out(n, cplx{0.0, 0.0});
    std::vector<double> tm2, tm1, t;
    for (size_t k = 0; k < n; ++k) {
        if (k == 0) t = {1.0};
        else if (k == 1) t = {0.0, 1.0};
        else {
            t.assign(k + 1, 0.0);
            for (size_t i = 0; i < tm1.size(); ++i) t[i + 1] += 2.0 * tm1[i];
            for (size_t i = 0; i < tm2.size(); ++i) t[i] -= tm2[i];
        }
        for (size_t i = 0; i < t.size(); ++i) out[i] += a[k] * t[i];
        tm2 = tm1;
        tm1 = t;
    }
    return out;
}

Polynomial AdaptedBasis::to_monomial(const std::vector<cplx>& a) const {
    std::vector<cplx> m = to_zeta_monomial(a);
    // zeta = (z - c) / s, expand by Horner in z
    Polynomial p;
    p.c = {cplx{0.0, 0.0}};
    for (size_t i = m.size(); i-- > 0;) {
        // p <- p * (z - c) / s + m[i]
        std::vector<cplx> r(p.c.size() + 1, cplx{0.0, 0.0});
        for (size_t q = 0; q < p.c.size(); ++q) {
            r[q + 1] += p.c[q] / scale;
            r[q] -= p.c[q] * center / scale;
        }
        r[0] += m[i];
        p.c = r;
    }
    while (p.c.size() > 1 && p.c.back() == cplx{0.0, 0.0}) p.c.pop_back();
    return p;
}

std::vector<NodeTable> node_tables(const VectorialMeasure& mu, int degree, int extra_nodes) {
    std::vector<NodeTable> out;
    for (int j = 0; j <= mu.k; ++j) {
        NodeTable tab;
        tab.j = j;
        const MeasureComponent& c = mu.comp(j);
        for (auto& pc : c.pieces) {
            if (pc.form.is_zero()) continue;
            for (auto* term : flatten_terms(pc.form)) {
                if (term->is_zero()) continue;
                std::vector<double> cuts = kinks_of(*term);
                int n = degree / 2 + extra_nodes + smooth_degree(*term) / 2 + 1;
                for (auto [u0, u1] : panels(mu.curve, pc.arc.t0, pc.arc.t1, cuts)) add_term(tab, mu.curve, *term, u0, u1, n);
            }
        }
        for (auto& a : c.atoms) {
            if (!(a.mass > 0.0)) continue;
            tab.t.push_back(a.t);
            tab.z.push_back(mu.curve.point_at(a.t));
            tab.w.push_back(a.mass);
        }
        out.push_back(tab);
    }
    return out;
}

ComplexQuadrature integrate_weighted(const Curve& c, const Arc& a, const MeasureComponent& w,
                                     const std::function<cplx(cplx)>& f, double tol) {
    ComplexQuadrature r;
    double re = integrate_weight(w, a.t0, a.t1, [&](double t) { return f(c.point_at(t)).real(); }, tol);
    double im = integrate_weight(w, a.t0, a.t1, [&](double t) { return f(c.point_at(t)).imag(); }, tol);
    r.value = {re, im};
    r.converged = std::isfinite(re) && std::isfinite(im);
    return r;
}

cplx sobolev_inner(const VectorialMeasure& mu, const Polynomial& f, const Polynomial& g) {
    if (mu.p != 2.0) throw std::domain_error("inner product needs p = 2");
    auto tabs = node_tables(mu, f.degree() + g.degree() + 4);
    cplx s{0.0, 0.0};
    for (auto& t : tabs)
        s += pairwise([&](size_t i) { return t.w[i] * f.eval(t.z[i], t.j) * std::conj(g.eval(t.z[i], t.j)); }, 0,
                      t.w.size());
    return s;
}

double sobolev_norm(const VectorialMeasure& mu, const Polynomial& f, double p) {
    if (!(p >= 1.0)) throw std::domain_error("p must be >= 1");
    auto tabs = node_tables(mu, static_cast<int>(std::ceil(p * std::max(f.degree(), 1))) + 4, 32);
    double s = 0.0;
    for (auto& t : tabs)
        s += pairwise([&](size_t i) { return cplx{t.w[i] * std::pow(std::abs(f.eval(t.z[i], t.j)), p), 0.0}; }, 0,
                      t.w.size())
                 .real();
    return std::pow(s, 1.0 / p);
}

namespace {

GramMatrix gram_impl(const VectorialMeasure& mu, int N, bool parallel) {
    if (mu.p != 2.0) throw std::domain_error("Gram matrix needs p = 2");
    GramMatrix g;
    g.N = N;
    g.basis = AdaptedBasis::for_curve(mu.curve);
    auto tabs = node_tables(mu, 2 * N + 2);
    // phi_n^(j) at the nodes of table j
    std::vector<Eigen::MatrixXcd> phi;
    std::vector<std::vector<cplx>> tmp;
    for (auto& t : tabs) {
        Eigen::MatrixXcd P(static_cast<Eigen::Index>(t.z.size()), N + 1);
        for (size_t i = 0; i < t.z.size(); ++i) {
            g.basis.eval(t.z[i], N, t.j, tmp);
            for (int n = 0; n <= N; ++n) P(static_cast<Eigen::Index>(i), n) = tmp[t.j][n];
        }
        phi.push_back(P);
    }
    g.G = Eigen::MatrixXcd::Zero(N + 1, N + 1);
    auto entry = [&](int m, int n) {
        cplx s{0.0, 0.0};
        for (size_t q = 0; q < tabs.size(); ++q) {
            const auto& P = phi[q];
            const auto& w = tabs[q].w;
            s += pairwise([&](size_t i) {
                auto ii = static_cast<Eigen::Index>(i);
                return w[i] * P(ii, n) * std::conj(P(ii, m));
            }, 0, w.size());
        }
        return s;
    };
    const int total = (N + 1) * (N + 2) / 2;
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<size_t>(total));
    for (int n = 0; n <= N; ++n)
        for (int m = 0; m <= n; ++m) pairs.push_back({m, n});
    std::vector<cplx> vals(pairs.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (long i = 0; i < static_cast<long>(pairs.size()); ++i) vals[i] = entry(pairs[i].first, pairs[i].second);
    } else {
        for (size_t i = 0; i < pairs.size(); ++i) vals[i] = entry(pairs[i].first, pairs[i].second);
    }
    for (size_t i = 0; i < pairs.size(); ++i) {
        auto [m, n] = pairs[i];
        g.G(m, n) = vals[i];
        g.G(n, m) = std::conj(vals[i]);
    }
    for (int n = 0; n <= N; ++n) g.G(n, n) = g.G(n, n).real();
    return g;
}

}  // namespace

GramMatrix gram_matrix(const VectorialMeasure& mu, int N) { return gram_impl(mu, N, true); }
GramMatrix gram_matrix_serial(const VectorialMeasure& mu, int N) { return gram_impl(mu, N, false); }

OrthoBasis ortho_basis(const GramMatrix& g) {
    const int n1 = g.N + 1;
    const Eigen::MatrixXcd& G = g.G;
    double thr = 1e-12 * G.diagonal().real().sum() / n1;
    Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(n1, n1);
    for (int n = 0; n < n1; ++n) {
        cplx d = G(n, n);
        for (int k = 0; k < n; ++k) d -= std::norm(L(n, k));
        if (!(d.real() > thr)) {
            // x = [-L^{-H} l; 1] with l = L^{-1} G(0:n, n)
            std::vector<cplx> x(static_cast<size_t>(n + 1), cplx{0.0, 0.0});
            if (n > 0) {
                Eigen::MatrixXcd Ln = L.topLeftCorner(n, n);
                Eigen::VectorXcd l = Ln.triangularView<Eigen::Lower>().solve(G.col(n).head(n));
                Eigen::VectorXcd y = Ln.adjoint().triangularView<Eigen::Upper>().solve(l);
                for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = -y(i);
            }
            x[static_cast<size_t>(n)] = 1.0;
            throw GramSingular(n, x);
        }
        L(n, n) = std::sqrt(d.real());
        for (int i = n + 1; i < n1; ++i) {
            cplx s = G(i, n);
            for (int k = 0; k < n; ++k) s -= L(i, k) * std::conj(L(n, k));
            L(i, n) = s / L(n, n);
        }
    }
    OrthoBasis ob;
    ob.basis = g.basis;
    Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n1, n1);
    ob.C = L.adjoint().triangularView<Eigen::Upper>().solve(I);
    ob.residual = (ob.C.adjoint() * G * ob.C - I).cwiseAbs().maxCoeff();
    return ob;
}

namespace {

// Derivative values of one polynomial at every node table: D[q][d * n_q + i].
struct Values {
    std::vector<std::vector<cplx>> D;
    std::vector<cplx> coeffs;
};

cplx inner(const std::vector<NodeTable>& tabs, const Values& f, const Values& g) {
    cplx s{0.0, 0.0};
    for (size_t q = 0; q < tabs.size(); ++q) {
        const auto& t = tabs[q];
        size_t n = t.w.size(), off = static_cast<size_t>(t.j) * n;
        s += pairwise([&](size_t i) { return t.w[i] * f.D[q][off + i] * std::conj(g.D[q][off + i]); }, 0, n);
    }
    return s;
}

void axpy(Values& v, cplx a, const Values& x) {
    for (size_t q = 0; q < v.D.size(); ++q)
        for (size_t i = 0; i < v.D[q].size(); ++i) v.D[q][i] += a * x.D[q][i];
    if (v.coeffs.size() < x.coeffs.size()) v.coeffs.resize(x.coeffs.size(), cplx{0.0, 0.0});
    for (size_t i = 0; i < x.coeffs.size(); ++i) v.coeffs[i] += a * x.coeffs[i];
}

void scale(Values& v, cplx a) {
    for (auto& d : v.D)
        for (auto& x : d) x *= a;
    for (auto& x : v.coeffs) x *= a;
}

}  // namespace

ArnoldiResult arnoldi(const VectorialMeasure& mu, int N) {
    if (mu.p != 2.0) throw std::domain_error("orthogonal polynomials need p = 2");
    auto tabs = node_tables(mu, 2 * N + 4);
    AdaptedBasis basis = AdaptedBasis::for_curve(mu.curve);
    std::vector<Values> q;
    Values one;
    for (auto& t : tabs) {
        std::vector<cplx> d(static_cast<size_t>(t.j + 1) * t.w.size(), cplx{0.0, 0.0});
        for (size_t i = 0; i < t.w.size(); ++i) d[i] = 1.0;
        one.D.push_back(d);
    }
    one.coeffs = {cplx{1.0, 0.0}};
    double n0 = std::sqrt(inner(tabs, one, one).real());
    if (!(n0 > 0.0)) throw GramSingular(0, {cplx{1.0, 0.0}});
    scale(one, 1.0 / n0);
    q.push_back(one);

    ArnoldiResult res;
    res.H = Eigen::MatrixXcd::Zero(N + 2, N + 1);
    for (int n = 0; n <= N; ++n) {
        const Values& qn = q.back();
        Values v;
        v.D.resize(tabs.size());
        for (size_t t = 0; t < tabs.size(); ++t) {
            size_t m = tabs[t].w.size();
            v.D[t].assign(qn.D[t].size(), cplx{0.0, 0.0});
            for (int d = 0; d <= tabs[t].j; ++d)
                for (size_t i = 0; i < m; ++i) {
                    cplx val = tabs[t].z[i] * qn.D[t][static_cast<size_t>(d) * m + i];
                    if (d > 0) val += static_cast<double>(d) * qn.D[t][static_cast<size_t>(d - 1) * m + i];
                    v.D[t][static_cast<size_t>(d) * m + i] = val;
                }
        }
        v.coeffs = basis.times_z(qn.coeffs);
        double before = std::sqrt(inner(tabs, v, v).real());
        for (int pass = 0; pass < 2; ++pass) {
            std::vector<cplx> h(static_cast<size_t>(n + 1));
            for (int m = 0; m <= n; ++m) h[m] = inner(tabs, v, q[m]);
            for (int m = 0; m <= n; ++m) {
                axpy(v, -h[m], q[m]);
                res.H(m, n) += h[m];
            }
        }
        double hn = std::sqrt(inner(tabs, v, v).real());
        if (!(hn > 1e-12 * before)) {
            // v is a null polynomial of degree n + 1
            std::vector<cplx> x = v.coeffs;
            throw GramSingular(n + 1, x);
        }
        res.H(n + 1, n) = hn;
        scale(v, 1.0 / hn);
        q.push_back(v);
    }
    res.basis.basis = basis;
    res.basis.C = Eigen::MatrixXcd::Zero(N + 2, N + 2);
    for (int n = 0; n <= N + 1; ++n)
        for (size_t i = 0; i < q[n].coeffs.size() && static_cast<int>(i) <= N + 1; ++i)
            res.basis.C(static_cast<Eigen::Index>(i), n) = q[n].coeffs[i];
    return res;
}

double orthonormality_residual(const VectorialMeasure& mu, const OrthoBasis& ob) {
    const int n1 = static_cast<int>(ob.C.cols());
    // a different rule: more nodes per panel than any construction uses
    auto tabs = node_tables(mu, 2 * n1 + 8, 24);
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(n1, n1);
    std::vector<std::vector<cplx>> tmp;
    for (auto& t : tabs) {
        Eigen::MatrixXcd P(static_cast<Eigen::Index>(t.z.size()), n1);
        for (size_t i = 0; i < t.z.size(); ++i) {
            ob.basis.eval(t.z[i], n1 - 1, t.j, tmp);
            for (int n = 0; n < n1; ++n) P(static_cast<Eigen::Index>(i), n) = tmp[t.j][n];
        }
        Eigen::MatrixXcd Q = P * ob.C;
        Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(t.w.data(), static_cast<Eigen::Index>(t.w.size()));
        G += Q.adjoint() * w.asDiagonal() * Q;
    }
    return (G - Eigen::MatrixXcd::Identity(n1, n1)).cwiseAbs().maxCoeff();
}

ZeroSet poly_zeros(const Polynomial& q) {
    ZeroSet zs;
    std::vector<cplx> c = q.c;
    double mx = 0.0;
    for (auto v : c) mx = std::max(mx, std::abs(v));
    while (c.size() > 1 && std::abs(c.back()) <= 1e-12 * mx) {
        c.pop_back();
        zs.reduced = true;
    }
    const int n = static_cast<int>(c.size()) - 1;
    if (n < 1) return zs;
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) A(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) A(i, n - 1) = -c[static_cast<size_t>(i)] / c[static_cast<size_t>(n)];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A);
    Polynomial red{c};
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        cplx z = es.eigenvalues()(i);
        double den = 0.0;
        for (int k = 0; k <= n; ++k) den += std::abs(c[static_cast<size_t>(k)]) * std::pow(std::abs(z), k);
        zs.zeros.push_back(z);
        zs.residuals.push_back(den > 0.0 ? std::abs(red.eval(z)) / den : 0.0);
    }
    std::sort(zs.zeros.begin(), zs.zeros.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return zs;
}

namespace {

double sigma_max(const Eigen::MatrixXcd& M) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    return svd.singularValues()(0);
}

MultOpReport build_report(const VectorialMeasure& mu, int N, int n_max, double tol) {
    ArnoldiResult ar = arnoldi(mu, N);
    MultOpReport rep;
    rep.N = N;
    rep.tol = tol;
    rep.M = ar.H.topLeftCorner(N + 1, N + 1);
    rep.sigma_max = sigma_max(rep.M);
    for (int n = 8; n < N; n *= 2) rep.sigma_history.push_back({n, sigma_max(ar.H.topLeftCorner(n + 1, n + 1))});
    rep.sigma_history.push_back({N, rep.sigma_max});
    OrthoBasis head = ar.basis;
    rep.ortho_residual = orthonormality_residual(mu, head);
    n_max = std::min(n_max, N + 1);
    for (int n = 1; n <= n_max; ++n) {
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(ar.H.topLeftCorner(n, n), false);
        std::vector<cplx> z;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) z.push_back(es.eigenvalues()(i));
        std::sort(z.begin(), z.end(), [](cplx a, cplx b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });
        for (auto v : z) rep.max_zero = std::max(rep.max_zero, std::abs(v));
        // companion-matrix zeros from the coefficients, for comparison
        std::vector<cplx> coeffs(static_cast<size_t>(n + 1));
        for (int i = 0; i <= n; ++i) coeffs[static_cast<size_t>(i)] = ar.basis.C(i, n);
        ZeroSet zc = poly_zeros(Polynomial{ar.basis.basis.to_zeta_monomial(coeffs)});
        for (auto& zeta : zc.zeros) zeta = ar.basis.basis.center + ar.basis.basis.scale * zeta;
        for (auto a : z) {
            double best = INFINITY;
            for (auto b : zc.zeros) best = std::min(best, std::abs(a - b));
            if (!zc.zeros.empty()) rep.zero_crosscheck = std::max(rep.zero_crosscheck, best);
        }
        rep.zeros.push_back(z);
    }
    rep.bound_ok = rep.max_zero <= rep.sigma_max * (1.0 + tol);
    return rep;
}

}  // namespace

MultOpReport multiplication_matrix(const VectorialMeasure& mu, int N) { return build_report(mu, N, 0, 0.05); }

MultOpReport verify_zero_bound(const VectorialMeasure& mu, int n_max, int N, double tol) {
    return build_report(mu, N, n_max, tol);
}

}  // namespace sobcurve
