#include "sobcurve/exact_kernel.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <map>

namespace sobcurve {

namespace {

using Q = boost::multiprecision::cpp_rational;
using boost::multiprecision::cpp_int;

Q from_double(double x) {
    int e = 0;
    double m = std::frexp(x, &e);
    // m in [0.5, 1): 53 bits of mantissa
    auto mi = static_cast<long long>(std::ldexp(m, 53));
    e -= 53;
    Q r = Q(cpp_int(mi));
    if (e > 0) r *= Q(cpp_int(1) << e);
    else if (e < 0) r /= Q(cpp_int(1) << -e);
    return r;
}

Q parse_exact(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) return Q(cpp_int(s.substr(0, slash))) / Q(cpp_int(s.substr(slash + 1)));
    auto exp = s.find_first_of("eE");
    std::string mant = s.substr(0, exp);
    int e10 = exp == std::string::npos ? 0 : std::stoi(s.substr(exp + 1));
    bool neg = !mant.empty() && mant[0] == '-';
    if (neg || (!mant.empty() && mant[0] == '+')) mant = mant.substr(1);
    auto dot = mant.find('.');
    std::string digits = mant;
    if (dot != std::string::npos) {
        digits = mant.substr(0, dot) + mant.substr(dot + 1);
        e10 -= static_cast<int>(mant.size() - dot - 1);
    }
    Q r = Q(cpp_int(digits.empty() ? std::string("0") : digits));
    cpp_int ten = 1;
    for (int i = 0; i < std::abs(e10); ++i) ten *= 10;
    if (e10 > 0) r *= Q(ten);
    else r /= Q(ten);
    return neg ? -r : r;
}

class Lookup {
public:
    void add(double v, const std::string& s) {
        if (!s.empty()) exact_[v] = parse_exact(s);
    }
    Q operator()(double v) const {
        auto it = exact_.find(v);
        return it != exact_.end() ? it->second : from_double(v);
    }

private:
    std::map<double, Q> exact_;
};

Q falling(int i, int m) {
    Q r = 1;
    for (int q = 0; q < m; ++q) r *= i - q;
    return r;
}

}  // namespace

ExactKernelReport solve_kernel_exact(const KernelSystem& sys) {
    ExactKernelReport rep;
    const VectorialMeasure& mu = sys.measure;
    if (mu.curve.kind() != CurveKind::segment || mu.curve.a().imag() != 0.0 || mu.curve.b().imag() != 0.0) {
        rep.reason = "exact solver needs a segment on the real axis";
        return rep;
    }
    rep.supported = true;
    Lookup look;
    for (auto& c : mu.components) {
        for (auto& a : c.atoms) look.add(a.t, a.exact_t);
        for (auto& pc : c.pieces) {
            look.add(pc.arc.t0, pc.exact_t0);
            look.add(pc.arc.t1, pc.exact_t1);
        }
    }
    Q za = from_double(mu.curve.a().real());
    int dir = mu.curve.b().real() > mu.curve.a().real() ? 1 : -1;
    auto z_of = [&](double t) { return za + dir * look(t); };

    const size_t nc = sys.dec.comps.size();
    std::vector<Q> centers(nc);
    std::vector<size_t> off(nc);
    size_t n = 0;
    for (size_t c = 0; c < nc; ++c) {
        const auto& kc = sys.dec.comps[c];
        centers[c] = (z_of(kc.t0) + z_of(kc.t1)) / 2;
        off[c] = n;
        n += static_cast<size_t>(kc.j_lower);
    }
    if (n == 0) return rep;

    std::vector<std::vector<Q>> A;
    auto add_deriv = [&](std::vector<Q>& row, size_t c, const Q& z, int m, int sign) {
        const auto& kc = sys.dec.comps[c];
        Q d = z - centers[c];
        for (int i = m; i < kc.j_lower; ++i) {
            Q pw = 1;
            for (int q = 0; q < i - m; ++q) pw *= d;
            row[off[c] + i] += sign * falling(i, m) * pw;
        }
    };
    for (size_t c = 0; c < nc; ++c)
        for (auto& a : sys.dec.comps[c].atoms) {
            std::vector<Q> row(n, Q(0));
            add_deriv(row, c, z_of(a.t), a.order, 1);
            A.push_back(row);
        }
    for (auto& pp : sys.dec.betas)
        for (int j : pp.orders) {
            std::vector<Q> row(n, Q(0));
            add_deriv(row, pp.left, z_of(pp.t), j, 1);
            add_deriv(row, pp.right, z_of(pp.t), j, -1);
            A.push_back(row);
        }

    // reduced row echelon form
    std::vector<int> pivot_col;
    size_t r = 0;
    for (size_t col = 0; col < n && r < A.size(); ++col) {
        size_t piv = r;
        while (piv < A.size() && A[piv][col] == 0) ++piv;
        if (piv == A.size()) continue;
        std::swap(A[piv], A[r]);
        Q inv = 1 / A[r][col];
        for (auto& v : A[r]) v *= inv;
        for (size_t i = 0; i < A.size(); ++i) {
            if (i == r || A[i][col] == 0) continue;
            Q f = A[i][col];
            for (size_t q = col; q < n; ++q) A[i][q] -= f * A[r][q];
        }
        pivot_col.push_back(static_cast<int>(col));
        ++r;
    }
    rep.rank = static_cast<int>(r);
    rep.dim = static_cast<int>(n - r);
    std::vector<char> is_pivot(n, 0);
    for (int c : pivot_col) is_pivot[static_cast<size_t>(c)] = 1;
    for (size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Q> x(n, Q(0));
        x[free] = 1;
        for (size_t i = 0; i < pivot_col.size(); ++i) x[static_cast<size_t>(pivot_col[i])] = -A[i][free];
        PiecewisePolynomial f;
        for (size_t c = 0; c < nc; ++c) {
            const auto& kc = sys.dec.comps[c];
            if (kc.j_lower == 0) continue;
            PolyPart part;
            part.t0 = kc.t0;
            part.t1 = kc.t1;
            part.center = {static_cast<double>(centers[c]), 0.0};
            part.scale = 1.0;
            for (int i = 0; i < kc.j_lower; ++i) part.coeffs.push_back({static_cast<double>(x[off[c] + i]), 0.0});
            f.parts.push_back(part);
        }
        rep.basis.push_back(f);
    }
    return rep;
}

}  // namespace sobcurve
