#include "sobcurve/weight_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sobcurve/quadrature.hpp"

namespace sobcurve {

namespace {

double eps_of(double L) { return 1e-12 * std::max(1.0, L); }

// Piece facing t from `side`; wraps through 0 == L on closed curves.
const WeightPiece* facing_piece(const MeasureComponent& c, double t, Side side, const Curve& curve, double* tt) {
    double L = curve.length(), e = eps_of(L);
    *tt = t;
    if (curve.closed()) {
        if (side == Side::left && t <= e) *tt = L;
        if (side == Side::right && t >= L - e) *tt = 0.0;
    } else {
        if (side == Side::left && t <= e) return nullptr;
        if (side == Side::right && t >= L - e) return nullptr;
    }
    return c.piece_at(*tt, side);
}

std::string half_name(double t, Side side) {
    std::ostringstream os;
    os << t << (side == Side::left ? "^-" : "^+");
    return os.str();
}

}  // namespace

std::string to_string(Tri t) {
    switch (t) {
        case Tri::no: return "no";
        case Tri::yes: return "yes";
        case Tri::unknown: return "unknown";
    }
    return "?";
}

Tri local_bp(const MeasureComponent& w, double t, Side side, double p, const Curve& curve) {
    double tt;
    const WeightPiece* piece = facing_piece(w, t, side, curve, &tt);
    if (!piece) return Tri::no;
    LocalBehaviour lb = local_behaviour(*piece, tt, side);
    if (lb.kind == LocalKind::zero) return Tri::no;
    if (lb.kind == LocalKind::power) {
        if (p == 1.0) return lb.exponent <= 0.0 ? Tri::yes : Tri::no;
        return lb.exponent < p - 1.0 ? Tri::yes : Tri::no;
    }
    if (p == 1.0) return Tri::no;  // w -> 0 makes 1/w unbounded
    double q = 1.0 / (p - 1.0);
    auto g = [&](double s) {
        double v = piece->form.value(s);
        return v > 0.0 ? std::pow(v, -q) : INFINITY;
    };
    double h = 0.25 * (piece->arc.t1 - piece->arc.t0);
    ProbeResult pr = probe_integrability(g, tt, side == Side::right ? 1.0 : -1.0, h);
    if (pr.verdict == Integrability::finite) return Tri::yes;
    if (pr.verdict == Integrability::infinite) return Tri::no;
    return Tri::unknown;
}

BpResult bp_membership(const MeasureComponent& w, double a, double b, double p, const Curve& curve, bool closed_left,
                       bool closed_right) {
    BpResult r;
    if (!(b > a)) {
        r.verdict = Tri::unknown;
        r.reason = "empty arc";
        return r;
    }
    double L = curve.length(), e = eps_of(L);
    std::vector<double> pts{a, b};
    for (auto& pc : w.pieces) {
        if (pc.arc.t1 <= a + e || pc.arc.t0 >= b - e) continue;
        for (double x : {pc.arc.t0, pc.arc.t1})
            if (x > a + e && x < b - e) pts.push_back(x);
        for (double x : structural_points(pc))
            if (x > a + e && x < b - e) pts.push_back(x);
    }
    std::sort(pts.begin(), pts.end());
    bool unknown = false;
    std::ostringstream why;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        double m = 0.5 * (pts[i] + pts[i + 1]);
        const WeightPiece* pc = w.piece_at(m, Side::right);
        CellSign s = pc ? cell_sign(*pc, pts[i], pts[i + 1]) : CellSign::zero;
        if (s == CellSign::zero) {
            why << "w vanishes on (" << pts[i] << ", " << pts[i + 1] << ")";
            return {Tri::no, why.str()};
        }
        if (s == CellSign::unknown) unknown = true;
    }
    auto check = [&](double t, Side side) {
        Tri v = local_bp(w, t, side, p, curve);
        if (v == Tri::no) {
            why << "w^{-1/(p-1)} not integrable at " << half_name(t, side);
            return false;
        }
        if (v == Tri::unknown) unknown = true;
        return true;
    };
    for (size_t i = 1; i + 1 < pts.size(); ++i)
        if (!check(pts[i], Side::left) || !check(pts[i], Side::right)) return {Tri::no, why.str()};
    if (closed_left && !check(a, Side::right)) return {Tri::no, why.str()};
    if (closed_right && !check(b, Side::left)) return {Tri::no, why.str()};
    if (unknown) return {Tri::unknown, "numerical test inconclusive"};
    return {Tri::yes, ""};
}

Tri half_regular(const VectorialMeasure& mu, int j, double t, Side side) {
    bool unknown = false;
    for (int i = j + 1; i <= mu.k; ++i) {
        double tt;
        const WeightPiece* piece = facing_piece(mu.comp(i), t, side, mu.curve, &tt);
        if (!piece) continue;
        LocalBehaviour lb = local_behaviour(*piece, tt, side);
        if (lb.kind == LocalKind::zero) continue;
        if (lb.kind == LocalKind::power) {
            if (lb.exponent < (i - j) * mu.p - 1.0) return Tri::yes;
            continue;
        }
        Tri b = local_bp(mu.comp(i), t, side, mu.p, mu.curve);
        if (b == Tri::yes) return Tri::yes;
        if (b == Tri::unknown) unknown = true;
    }
    return unknown ? Tri::unknown : Tri::no;
}

MeasureAnalysis analyze_measure(const VectorialMeasure& mu) {
    MeasureAnalysis an;
    double L = mu.length();
    bool closed = mu.closed();
    an.breaks = mu.breakpoints();
    const size_t m = an.breaks.size() - 1;
    PointSet base = PointSet(L, closed).refined(an.breaks);

    std::vector<std::vector<char>> cell_in(mu.k + 1, std::vector<char>(m, 0));
    for (int j = 0; j <= mu.k; ++j) {
        const MeasureComponent& c = mu.comp(j);
        PointSet om = base;
        for (size_t i = 0; i < m; ++i) {
            double a = an.breaks[i], b = an.breaks[i + 1];
            const WeightPiece* pc = c.piece_at(0.5 * (a + b), Side::right);
            CellSign s = pc ? cell_sign(*pc, a, b) : CellSign::zero;
            cell_in[j][i] = s == CellSign::positive;
            if (s == CellSign::unknown) {
                std::ostringstream os;
                os << "Omega_" << j << ": sign of w undecided on (" << a << ", " << b << ")";
                an.warnings.push_back(os.str());
            }
            om.set_cell(i, cell_in[j][i]);
        }
        auto lbp = [&](double t, Side side) {
            Tri v = local_bp(c, t, side, mu.p, mu.curve);
            if (v == Tri::unknown) {
                std::ostringstream os;
                os << "Omega_" << j << ": B_p undecided at " << half_name(t, side);
                an.warnings.push_back(os.str());
            }
            return v == Tri::yes;
        };
        for (size_t i = 0; i <= m; ++i) {
            double t = an.breaks[i];
            bool in = false;
            if (!closed && i == 0) in = cell_in[j][0] && lbp(t, Side::right);
            else if (!closed && i == m) in = cell_in[j][m - 1] && lbp(t, Side::left);
            else if (closed && (i == 0 || i == m)) {
                in = cell_in[j][0] && cell_in[j][m - 1] && lbp(0.0, Side::right) && lbp(L, Side::left);
            } else {
                in = cell_in[j][i - 1] && cell_in[j][i] && lbp(t, Side::left) && lbp(t, Side::right);
            }
            om.set_point(i, in, in);
        }
        an.omega.push_back(om.simplified());
    }

    for (int j = 0; j <= mu.k; ++j) {
        PointSet reg = base;
        if (j == mu.k) {
            an.regular.push_back(PointSet(L, closed));
            break;
        }
        std::vector<char> cin(m, 0);
        for (size_t i = 0; i < m; ++i) {
            for (int q = j + 1; q <= mu.k; ++q) cin[i] = cin[i] || cell_in[q][i];
            reg.set_cell(i, cin[i]);
        }
        auto hr = [&](double t, Side side) {
            Tri v = half_regular(mu, j, t, side);
            if (v == Tri::unknown) {
                std::ostringstream os;
                os << "Omega^(" << j << "): regularity undecided at " << half_name(t, side);
                an.warnings.push_back(os.str());
            }
            return v == Tri::yes;
        };
        for (size_t i = 0; i <= m; ++i) {
            double t = an.breaks[i];
            if (!closed && i == 0) {
                bool r = hr(t, Side::right);
                reg.set_point(i, r, r);
            } else if (!closed && i == m) {
                bool l = hr(t, Side::left);
                reg.set_point(i, l, l);
            } else if (closed && (i == 0 || i == m)) {
                reg.set_point(i, hr(L, Side::left), hr(0.0, Side::right));
            } else {
                reg.set_point(i, hr(t, Side::left), hr(t, Side::right));
            }
        }
        an.regular.push_back(reg.simplified());
    }

    an.omega_union = PointSet(L, closed);
    for (int i = 1; i <= mu.k; ++i) an.omega_union = an.omega_union.unite(an.omega[i]);
    std::sort(an.warnings.begin(), an.warnings.end());
    an.warnings.erase(std::unique(an.warnings.begin(), an.warnings.end()), an.warnings.end());
    return an;
}

PointSet compute_omega(const VectorialMeasure& mu, int j) { return analyze_measure(mu).omega.at(j); }

AdmissibilityReport admissibility(const VectorialMeasure& mu, const MeasureAnalysis& an) {
    AdmissibilityReport rep;
    double L = mu.length();
    for (int j = 1; j <= mu.k; ++j) {
        const MeasureComponent& c = mu.comp(j);
        const PointSet& reg = an.regular[j];
        for (auto& a : c.atoms) {
            if (a.mass <= 0.0) continue;
            bool ok = j < mu.k && (reg.contains(a.t, Side::left) || reg.contains(a.t, Side::right));
            if (!ok) {
                rep.admissible = false;
                rep.violations.push_back({j, a.t, j == mu.k ? "atom in top component" : "atom outside Omega^(j)"});
            }
        }
        // weight carried off Omega_j
        Decomposition d = decompose(c, an.omega[j], L);
        for (auto& pc : d.star.pieces) {
            if (pc.form.is_zero()) continue;
            double mass = ac_mass(d.star, pc.arc.t0, pc.arc.t1);
            if (!(mass > 0.0)) continue;
            double mid = 0.5 * (pc.arc.t0 + pc.arc.t1);
            bool ok = j < mu.k && reg.contains_open(pc.arc.t0, pc.arc.t1);
            if (!ok) {
                rep.admissible = false;
                rep.violations.push_back({j, mid, "weight off Omega_j outside Omega^(j)"});
                continue;
            }
            for (auto& comp : reg.components()) {
                if (!comp.contains(mid, Side::right, L)) continue;
                if (!comp.contains(pc.arc.t0, Side::right, L) || !comp.contains(pc.arc.t1, Side::left, L)) {
                    rep.strongly = false;
                    rep.violations.push_back({j, mid, "singular part reaches the boundary of a component of Omega^(j)"});
                }
            }
        }
    }
    rep.strongly = rep.strongly && rep.admissible;
    return rep;
}

AdmissibilityReport admissibility(const VectorialMeasure& mu) { return admissibility(mu, analyze_measure(mu)); }

OmegaReport omega_report(const PointSet& omega, const Curve& curve) {
    OmegaReport r;
    r.arcs = omega.open_arcs();
    if (!curve.closed()) {
        r.contains_start = omega.contains(0.0, Side::right);
        r.contains_end = omega.contains(curve.length(), Side::left);
    }
    return r;
}

}  // namespace sobcurve
