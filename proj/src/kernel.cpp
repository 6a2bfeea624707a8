#include "sobcurve/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sobcurve {

namespace {

using Intervals = std::vector<std::pair<double, double>>;

double eps_of(double L) { return 1e-12 * std::max(1.0, L); }

Intervals intervals_of(const SetComponent& c, double L) {
    if (c.whole) return {{0.0, L}};
    if (c.wraps) return {{c.t0, L}, {0.0, c.t1}};
    return {{c.t0, c.t1}};
}

bool overlaps(const Intervals& a, const Intervals& b, double e) {
    for (auto [a0, a1] : a)
        for (auto [b0, b1] : b)
            if (std::min(a1, b1) - std::max(a0, b0) > e) return true;
    return false;
}

bool same_point(double x, double y, double L, bool closed, double e) {
    if (std::abs(x - y) <= e) return true;
    return closed && std::abs(std::abs(x - y) - L) <= e;
}

bool meets(const PointSet& s, const Intervals& iv, double L, double e) {
    for (auto& c : s.components())
        if (overlaps(intervals_of(c, L), iv, e)) return true;
    return false;
}

// Where t sits relative to the closure of a component: 0 = outside,
// 1 = interior, 2 = left end (faces right), 3 = right end (faces left).
int position(const KernelComponent& kc, double t, double L, bool closed, double e) {
    if (kc.arc.whole) return 1;
    if (same_point(t, kc.arc.t0, L, closed, e)) return 2;
    if (same_point(t, kc.arc.t1, L, closed, e)) return 3;
    for (auto [a, b] : intervals_of(kc.arc, L))
        if (t > a && t < b) return 1;
    return 0;
}

double factor(int i, int m) {
    double r = 1.0;
    for (int q = 0; q < m; ++q) r *= i - q;
    return r;
}

// Row entries of f^(m)(z) in the scaled basis of one component.
void derivative_row(std::vector<cplx>& row, size_t off, const KernelComponent& kc, cplx z, int m, double sign) {
    cplx zeta = (z - kc.center) / kc.scale;
    for (int i = m; i < kc.j_lower; ++i)
        row[off + i] += sign * factor(i, m) * std::pow(zeta, i - m) / std::pow(kc.scale, m);
}

}  // namespace

ComponentDecomposition decompose_components(const VectorialMeasure& mu, const MeasureAnalysis& an) {
    ComponentDecomposition dec;
    double L = mu.length(), e = eps_of(L);
    bool closed = mu.closed();
    dec.omega0 = an.regular.at(0);
    if (mu.k == 0) return dec;

    for (auto& sc : an.omega_union.components()) {
        KernelComponent kc;
        kc.arc = sc;
        kc.t0 = sc.whole ? 0.0 : sc.t0;
        kc.t1 = sc.whole ? L : (sc.wraps ? sc.t1 + L : sc.t1);
        Intervals iv = intervals_of(sc, L);

        kc.j_upper = mu.k;
        for (int m = 1; m <= mu.k; ++m)
            if (meets(an.omega[m], iv, L, e)) {
                kc.j_upper = m;
                break;
            }

        double re0 = INFINITY, re1 = -INFINITY, im0 = INFINITY, im1 = -INFINITY;
        std::vector<cplx> zs;
        for (int i = 0; i <= 16; ++i) {
            double t = kc.t0 + (kc.t1 - kc.t0) * i / 16.0;
            cplx z = mu.curve.point_at(t > L ? t - L : std::min(t, L));
            zs.push_back(z);
            re0 = std::min(re0, z.real()), re1 = std::max(re1, z.real());
            im0 = std::min(im0, z.imag()), im1 = std::max(im1, z.imag());
        }
        kc.center = {0.5 * (re0 + re1), 0.5 * (im0 + im1)};
        kc.scale = 0.0;
        for (auto z : zs) kc.scale = std::max(kc.scale, std::abs(z - kc.center));
        if (!(kc.scale > 0.0)) kc.scale = 1.0;

        // qualifying atoms of mu_m per order, by location
        std::vector<std::vector<ConstraintAtom>> found(mu.k + 1);
        for (int m = 0; m < kc.j_upper; ++m) {
            const MeasureComponent& c = mu.comp(m);
            double acm = 0.0;
            for (auto [a, b] : iv) acm += ac_mass(c, a, b);
            if (acm > 0.0) {
                kc.counts.push_back(-1);
                continue;
            }
            for (auto& a : c.atoms) {
                if (!(a.mass > 0.0)) continue;
                int pos = position(kc, a.t, L, closed, e);
                if (pos == 0) continue;
                const PointSet& reg = an.regular[m];
                bool ok = false;
                Side side = Side::right;
                if (pos == 1) ok = reg.contains(a.t, Side::left) || reg.contains(a.t, Side::right);
                else {
                    side = pos == 2 ? Side::right : Side::left;
                    ok = reg.contains(a.t, side);
                }
                if (!ok) continue;
                bool dup = false;
                for (auto& f : found[m])
                    if (same_point(f.t, a.t, L, closed, e)) {
                        f.mass += a.mass;
                        dup = true;
                    }
                if (!dup) found[m].push_back({a.t, m, side, pos == 1, a.mass, "atom"});
            }
            kc.counts.push_back(static_cast<int>(found[m].size()));
        }
        kc.j_lower = kc.j_upper;
        for (int m = 0; m < kc.j_upper; ++m)
            if (kc.counts[m] < 0 || kc.counts[m] >= kc.j_upper - m) {
                kc.j_lower = m;
                break;
            }
        for (int m = 0; m < kc.j_lower; ++m)
            for (auto& a : found[m]) kc.atoms.push_back(a);
        for (auto& tc : mu.tails) {
            Side facing = tc.side == Side::left ? Side::right : Side::left;
            int pos = position(kc, tc.t, L, closed, e);
            bool ok = pos == 1 || (pos == 2 && facing == Side::right) || (pos == 3 && facing == Side::left);
            if (ok && tc.order < kc.j_lower) kc.atoms.push_back({tc.t, tc.order, facing, pos == 1, 0.0, "tail"});
        }
        dec.comps.push_back(kc);
    }

    for (size_t a = 0; a < dec.comps.size(); ++a)
        for (size_t b = 0; b < dec.comps.size(); ++b) {
            if (a == b) continue;
            const auto& A = dec.comps[a];
            const auto& B = dec.comps[b];
            if (A.arc.whole || B.arc.whole) continue;
            if (!same_point(A.arc.t1, B.arc.t0, L, closed, e)) continue;
            PastingPoint pp;
            pp.t = B.arc.t0;
            pp.left = a;
            pp.right = b;
            for (int j = 0; j < mu.k; ++j)
                if (an.regular[j].contains(pp.t, Side::left) && an.regular[j].contains(pp.t, Side::right))
                    pp.orders.push_back(j);
            if (!pp.orders.empty()) dec.betas.push_back(pp);
        }
    return dec;
}

ComponentDecomposition decompose_components(const VectorialMeasure& mu) {
    return decompose_components(mu, analyze_measure(mu));
}

KernelSystem assemble_kernel_system(const VectorialMeasure& mu, const PointSet& region) {
    double L = mu.length();
    if (std::abs(region.length() - L) > eps_of(L) || region.closed() != mu.closed())
        throw std::invalid_argument("region is not a subset of the measure's curve");
    if (region.empty()) throw std::invalid_argument("empty region");
    KernelSystem sys;
    sys.region = region;
    sys.measure = restrict_measure(mu, region);
    sys.analysis = analyze_measure(sys.measure);
    sys.dec = decompose_components(sys.measure, sys.analysis);
    for (auto& kc : sys.dec.comps) {
        sys.offset.push_back(sys.unknowns);
        sys.unknowns += static_cast<size_t>(kc.j_lower);
    }
    const Curve& curve = sys.measure.curve;
    auto z_at = [&](double t) { return curve.point_at(std::clamp(t, 0.0, L)); };
    for (size_t c = 0; c < sys.dec.comps.size(); ++c) {
        const auto& kc = sys.dec.comps[c];
        for (auto& a : kc.atoms) {
            KernelRow r;
            r.coeffs.assign(sys.unknowns, cplx{0.0, 0.0});
            derivative_row(r.coeffs, sys.offset[c], kc, z_at(a.t), a.order, 1.0);
            std::ostringstream os;
            os << "f^(" << a.order << ")(" << a.t << (a.interior ? "" : a.side == Side::left ? "^-" : "^+") << ") = 0 [" << a.source
               << "]";
            r.label = os.str();
            sys.rows.push_back(r);
        }
    }
    for (auto& pp : sys.dec.betas)
        for (int j : pp.orders) {
            const auto& A = sys.dec.comps[pp.left];
            const auto& B = sys.dec.comps[pp.right];
            if (j >= std::max(A.j_lower, B.j_lower)) continue;  // both sides vanish identically
            KernelRow r;
            r.coeffs.assign(sys.unknowns, cplx{0.0, 0.0});
            derivative_row(r.coeffs, sys.offset[pp.left], A, z_at(pp.t), j, 1.0);
            derivative_row(r.coeffs, sys.offset[pp.right], B, z_at(pp.t), j, -1.0);
            std::ostringstream os;
            os << "f^(" << j << ")(" << pp.t << "^-) = f^(" << j << ")(" << pp.t << "^+)";
            r.label = os.str();
            sys.rows.push_back(r);
        }
    return sys;
}

KernelSystem assemble_kernel_system(const VectorialMeasure& mu) {
    return assemble_kernel_system(mu, PointSet::whole(mu.length(), mu.closed()));
}

PiecewisePolynomial to_piecewise(const KernelSystem& sys, const Eigen::VectorXcd& x) {
    PiecewisePolynomial f;
    for (size_t c = 0; c < sys.dec.comps.size(); ++c) {
        const auto& kc = sys.dec.comps[c];
        if (kc.j_lower == 0) continue;
        PolyPart part;
        part.t0 = kc.t0;
        part.t1 = kc.t1;
        part.center = kc.center;
        part.scale = kc.scale;
        for (int i = 0; i < kc.j_lower; ++i) part.coeffs.push_back(x(static_cast<Eigen::Index>(sys.offset[c]) + i));
        f.parts.push_back(part);
    }
    return f;
}

KernelReport solve_kernel(const KernelSystem& sys, double p) {
    KernelReport rep;
    const Eigen::Index n = static_cast<Eigen::Index>(sys.unknowns);
    if (n == 0) return rep;
    std::vector<std::vector<cplx>> rows;
    for (auto& r : sys.rows) {
        double s = 0.0;
        for (auto v : r.coeffs) s += std::norm(v);
        if (s == 0.0) continue;
        std::vector<cplx> row = r.coeffs;
        for (auto& v : row) v /= std::sqrt(s);
        for (auto v : row) rep.real = rep.real && v.imag() == 0.0;
        rows.push_back(row);
    }
    const Eigen::Index m = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXcd null;
    if (m == 0) {
        null = Eigen::MatrixXcd::Identity(n, n);
    } else {
        Eigen::VectorXd sv;
        Eigen::MatrixXcd V;
        if (rep.real) {
            Eigen::MatrixXd A(m, n);
            for (Eigen::Index i = 0; i < m; ++i)
                for (Eigen::Index j = 0; j < n; ++j) A(i, j) = rows[i][j].real();
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
            sv = svd.singularValues();
            V = svd.matrixV().cast<cplx>();
        } else {
            Eigen::MatrixXcd A(m, n);
            for (Eigen::Index i = 0; i < m; ++i)
                for (Eigen::Index j = 0; j < n; ++j) A(i, j) = rows[i][j];
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
            sv = svd.singularValues();
            V = svd.matrixV();
        }
        double thr = 1e-10 * sv(0);
        Eigen::Index rank = 0;
        while (rank < sv.size() && sv(rank) > thr) ++rank;
        if (rank > 0) {
            double next = rank < sv.size() ? sv(rank) : 0.0;
            if (rank < n && sv(rank - 1) < 10.0 * std::max(next, thr)) rep.low_confidence = true;
        }
        for (Eigen::Index i = 0; i < sv.size(); ++i) rep.singular_values.push_back(sv(i));
        null = V.rightCols(n - rank);
    }
    rep.dim = static_cast<int>(null.cols());
    for (Eigen::Index c = 0; c < null.cols(); ++c) {
        Eigen::VectorXcd x = null.col(c);
        Eigen::Index imax;
        x.cwiseAbs().maxCoeff(&imax);
        x /= x(imax);
        rep.vectors.push_back(x);
        rep.basis.push_back(to_piecewise(sys, x));
    }
    for (auto& b : rep.basis) rep.residual = std::max(rep.residual, sobolev_norm(sys.measure, b, sys.dec.omega0, p));
    return rep;
}

KernelReport solve_kernel(const VectorialMeasure& mu) { return solve_kernel(assemble_kernel_system(mu), mu.p); }

Eigen::MatrixXcd sample_basis(const KernelSystem& sys, const std::vector<PiecewisePolynomial>& basis) {
    double L = sys.measure.length();
    std::vector<double> ts;
    for (auto& kc : sys.dec.comps)
        for (int i = 0; i < kc.j_lower; ++i) {
            double t = kc.t0 + (kc.t1 - kc.t0) * (i + 1) / (kc.j_lower + 1);
            ts.push_back(t > L ? t - L : t);
        }
    Eigen::MatrixXcd S(static_cast<Eigen::Index>(ts.size()), static_cast<Eigen::Index>(basis.size()));
    for (size_t r = 0; r < ts.size(); ++r)
        for (size_t c = 0; c < basis.size(); ++c)
            S(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                basis[c].derivative(sys.measure.curve, ts[r], 0, Side::right);
    return S;
}

double span_residual(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    auto one_way = [](const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
        if (x.cols() == 0) return 0.0;
        if (y.cols() == 0) return 1.0;
        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(y);
        qr.setThreshold(1e-12);
        Eigen::Index r = qr.rank();
        Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(y.rows(), r);
        double worst = 0.0;
        for (Eigen::Index c = 0; c < x.cols(); ++c) {
            Eigen::VectorXcd v = x.col(c);
            double nv = v.norm();
            if (nv == 0.0) continue;
            worst = std::max(worst, (v - Q * (Q.adjoint() * v)).norm() / nv);
        }
        return worst;
    };
    return std::max(one_way(a, b), one_way(b, a));
}

C0Report check_c0(const KernelSystem& sys, const KernelReport& ker) {
    C0Report r;
    r.kernel_dim = ker.dim;
    const VectorialMeasure& mu = sys.measure;
    double L = mu.length(), e = eps_of(L);
    if (ker.dim > 0) {
        r.in_c0 = Tri::no;
        r.justification = "nonzero_kernel";
        return r;
    }
    if (mu.k <= 2) {
        r.in_c0 = Tri::yes;
        r.justification = "order_at_most_two";
        return r;
    }
    PointSet low = sys.analysis.omega[0].unite(sys.analysis.omega[1]).unite(sys.analysis.omega[2]);
    bool all_low = true;
    for (auto& c : sys.dec.omega0.components()) {
        if (c.length(L) <= e) continue;
        if (!meets(low, intervals_of(c, L), L, e)) all_low = false;
    }
    if (all_low) {
        r.in_c0 = Tri::yes;
        r.justification = "low_order_components";
        return r;
    }
    // local solutions of the atom conditions alone have vanishing second derivative
    bool linear = true;
    for (auto& kc : sys.dec.comps) {
        if (kc.j_lower <= 2) continue;
        Eigen::MatrixXcd A(static_cast<Eigen::Index>(kc.atoms.size()), kc.j_lower);
        A.setZero();
        for (size_t i = 0; i < kc.atoms.size(); ++i) {
            std::vector<cplx> row(static_cast<size_t>(kc.j_lower), cplx{0.0, 0.0});
            derivative_row(row, 0, kc, mu.curve.point_at(std::clamp(kc.atoms[i].t, 0.0, L)), kc.atoms[i].order, 1.0);
            double s = 0.0;
            for (auto v : row) s += std::norm(v);
            for (int q = 0; q < kc.j_lower; ++q)
                A(static_cast<Eigen::Index>(i), q) = s > 0.0 ? row[q] / std::sqrt(s) : row[q];
        }
        Eigen::Index rank = 0;
        Eigen::MatrixXcd V = Eigen::MatrixXcd::Identity(kc.j_lower, kc.j_lower);
        if (A.rows() > 0) {
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
            auto sv = svd.singularValues();
            while (rank < sv.size() && sv(rank) > 1e-10 * sv(0)) ++rank;
            V = svd.matrixV();
        }
        for (Eigen::Index c = rank; c < kc.j_lower; ++c)
            if (V.col(c).tail(kc.j_lower - 2).norm() > 1e-10 * V.col(c).norm()) linear = false;
    }
    if (linear) {
        r.in_c0 = Tri::yes;
        r.justification = "linear_kernel_elements";
        return r;
    }
    if (!(mu.family && mu.family->infinite)) {
        r.in_c0 = Tri::yes;
        r.justification = "finite_gaps";
        return r;
    }
    r.in_c0 = Tri::unknown;
    r.justification = "not_covered";
    return r;
}

Certificate unboundedness_certificate(const KernelSystem& sys, const KernelReport& ker) {
    Certificate best;
    if (ker.dim == 0) return best;
    const VectorialMeasure& mu = sys.measure;
    double p = mu.p;
    double mass = 0.0;
    for (int j = 0; j <= mu.k; ++j) {
        MeasureComponent c = restrict_component(mu.comp(j), sys.dec.omega0);
        mass += total_mass(c, mu.length());
    }
    std::vector<PiecewisePolynomial> cands = ker.basis;
    if (ker.basis.size() > 1) {
        PiecewisePolynomial sum = ker.basis[0];
        for (size_t b = 1; b < ker.basis.size(); ++b)
            for (size_t q = 0; q < sum.parts.size(); ++q)
                for (size_t i = 0; i < sum.parts[q].coeffs.size(); ++i) sum.parts[q].coeffs[i] += ker.basis[b].parts[q].coeffs[i];
        cands.push_back(sum);
    }
    double best_ratio = -1.0;
    for (auto& h : cands) {
        double sup = h.sup_abs(mu.curve);
        if (!(sup > 0.0)) continue;
        Certificate c;
        c.h = h;
        c.scale = std::pow(mass, 1.0 / p) * sup;
        c.norm_h = sobolev_norm(mu, h, sys.dec.omega0, p);
        c.norm_zh = sobolev_norm(mu, h.times_z(), sys.dec.omega0, p);
        double ratio = c.scale > 0.0 ? c.norm_zh / c.scale : 0.0;
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best = c;
        }
    }
    best.found = best_ratio > 0.0 && best.norm_h < 1e-8 * best.scale && best.norm_zh > 1e-6 * best.scale;
    return best;
}

}  // namespace sobcurve
