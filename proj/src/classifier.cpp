#include "sobcurve/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace sobcurve {

namespace {

double eps_of(double L) { return 1e-12 * std::max(1.0, L); }

bool finite_measure(const VectorialMeasure& mu) {
    for (auto& c : mu.components)
        if (!std::isfinite(total_mass(c, mu.length()) + c.atom_mass())) return false;
    return true;
}

std::string arc_name(double a, double b) {
    std::ostringstream os;
    os << "[" << a << ", " << b << "]";
    return os.str();
}

// Piecewise-monotone comparability from the form alone.
bool monotone_comparable(const WeightForm& f) {
    if (std::holds_alternative<ZeroForm>(f.v) || std::holds_alternative<PowerForm>(f.v) ||
        std::holds_alternative<MonotoneForm>(f.v))
        return true;
    if (auto* s = std::get_if<SumForm>(&f.v)) {
        // sums of power terms stay comparable to the dominant term
        for (auto* t : flatten_terms(f))
            if (!std::holds_alternative<PowerForm>(t->v) && !std::holds_alternative<ZeroForm>(t->v)) return false;
        return !s->terms.empty();
    }
    return false;
}

bool positive_near(const MeasureComponent& c, double t, Side side) {
    const WeightPiece* pc = c.piece_at(t, side);
    if (!pc) return false;
    double len = pc->arc.t1 - pc->arc.t0;
    double a = side == Side::right ? t : t - 0.25 * len;
    double b = side == Side::right ? t + 0.25 * len : t;
    return cell_sign(*pc, a, b) == CellSign::positive;
}

}  // namespace

TypeAReport classify_type_a(const VectorialMeasure& mu, const MeasureAnalysis& an, const AdmissibilityReport& adm) {
    TypeAReport rep;
    if (!finite_measure(mu)) rep.failures.push_back("measure is not finite");
    if (!adm.strongly) rep.failures.push_back("not strongly admissible");
    if (mu.family && mu.family->infinite)
        rep.failures.push_back("truncation of an infinite family: no finite partition of the full measure");
    if (!rep.failures.empty()) return rep;

    double L = mu.length(), e = eps_of(L);
    std::vector<double> pts{0.0, L};
    for (int j = 1; j <= mu.k; ++j)
        for (auto& pc : mu.comp(j).pieces) {
            pts.push_back(pc.arc.t0);
            pts.push_back(pc.arc.t1);
            for (double s : structural_points(pc)) pts.push_back(s);
        }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(), [&](double x, double y) { return std::abs(x - y) <= e; }), pts.end());
    rep.partition = pts;

    const double p = mu.p;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        double a = pts[i], b = pts[i + 1];
        int k2 = 0;
        for (int j = mu.k; j >= 1; --j)
            if (ac_mass(mu.comp(j), a, b) > 0.0) {
                k2 = j;
                break;
            }
        ArcCase ac{a, b, 0, k2, ""};
        if (k2 == 0) {
            ac.rule = "1";
            rep.arcs.push_back(ac);
            continue;
        }
        if (bp_membership(mu.comp(k2), a, b, p, mu.curve).verdict == Tri::yes) {
            ac.rule = "2";
            rep.arcs.push_back(ac);
            continue;
        }
        std::map<std::pair<int, int>, Tri> cache;
        auto cons = [&](int j, Side side) {
            auto key = std::make_pair(j, side == Side::right ? 1 : 0);
            auto it = cache.find(key);
            if (it != cache.end()) return it->second;
            Tri v = consistency(mu.comp(j), a, b, p, side).consistent;
            if (v == Tri::unknown) rep.undecided = true;
            return cache[key] = v;
        };
        auto all_right = [&](int k1) {
            for (int j = k1 + 1; j <= k2; ++j)
                if (cons(j, Side::right) != Tri::yes) return false;
            return true;
        };
        auto all_left = [&](int k1) {
            for (int j = k1 + 1; j <= k2; ++j)
                if (cons(j, Side::left) != Tri::yes) return false;
            return true;
        };
        auto each_side = [&](int k1) {
            for (int j = k1 + 1; j <= k2; ++j)
                if (cons(j, Side::right) != Tri::yes && cons(j, Side::left) != Tri::yes) return false;
            return true;
        };
        auto full_arc = [&](const PointSet& s) {
            return s.contains_point(a) && s.contains_point(b) && s.contains_open(a, b);
        };
        auto some_positive = [&](int k1, double t, Side side) {
            for (int j = k1 + 1; j <= k2; ++j)
                if (positive_near(mu.comp(j), t, side)) return true;
            return false;
        };
        if (each_side(0)) {
            ac.rule = "5";
            rep.arcs.push_back(ac);
            continue;
        }
        bool done = false;
        for (int k1 = 1; k1 < k2 && !done; ++k1) {
            ac.k1 = k1;
            const PointSet& reg = an.regular[k1];
            const PointSet& below = an.regular[k1 - 1];
            if (all_right(k1) && reg.contains(a, Side::right)) ac.rule = "3";
            else if (all_left(k1) && reg.contains(b, Side::left)) ac.rule = "4";
            else if (each_side(k1) && full_arc(below)) ac.rule = "5";
            else if (all_right(k1) && below.contains(a, Side::right) && some_positive(k1, a, Side::right)) ac.rule = "5'";
            else if (all_left(k1) && below.contains(b, Side::left) && some_positive(k1, b, Side::left)) ac.rule = "5''";
            done = !ac.rule.empty();
        }
        if (!done) {
            rep.failures.push_back("no case applies on " + arc_name(a, b));
            return rep;
        }
        rep.arcs.push_back(ac);
    }
    rep.is_type = true;
    return rep;
}

TypeBReport classify_type_b(const VectorialMeasure& mu, const AdmissibilityReport& adm) {
    TypeBReport rep;
    if (!finite_measure(mu)) rep.failures.push_back("measure is not finite");
    if (!adm.strongly) rep.failures.push_back("not strongly admissible");
    if (mu.family && mu.family->infinite)
        rep.failures.push_back("truncation of an infinite family: the full weights have infinitely many monotone pieces");
    rep.absolutely_continuous = true;
    for (int j = 1; j <= mu.k; ++j) {
        const MeasureComponent& c = mu.comp(j);
        for (auto& a : c.atoms)
            if (a.mass > 0.0) rep.absolutely_continuous = false;
        for (auto& pc : c.pieces) {
            if (monotone_comparable(pc.form)) continue;
            rep.failures.push_back("w_" + std::to_string(j) + " on " + arc_name(pc.arc.t0, pc.arc.t1) +
                                   " has no piecewise monotone structure");
        }
        rep.evidence.push_back("w_" + std::to_string(j) + ": " + std::to_string(c.pieces.size()) + " monotone-comparable pieces");
    }
    rep.is_type = rep.failures.empty();
    return rep;
}

TypeCReport classify_type_c(const VectorialMeasure& mu, const AdmissibilityReport& adm) {
    TypeCReport rep;
    if (mu.closed()) {
        rep.failures.push_back("closed curve");
        return rep;
    }
    if (!finite_measure(mu)) rep.failures.push_back("measure is not finite");
    if (!adm.strongly) rep.failures.push_back("not strongly admissible");
    if (mu.k == 0) rep.failures.push_back("k = 0");
    if (!rep.failures.empty()) return rep;
    double L = mu.length(), e = eps_of(L);
    std::vector<double> br = mu.breakpoints();
    double first = L, last = 0.0;
    for (double t : br) {
        if (t > e && t < L - e) {
            first = std::min(first, t);
            last = std::max(last, t);
        }
    }
    rep.a2 = std::min(0.5 * first, L / 3.0);
    rep.a3 = std::max(0.5 * (last + L), 2.0 * L / 3.0);
    const double p = mu.p;
    if (bp_membership(mu.comp(mu.k), 0.0, L, p, mu.curve, false, false).verdict != Tri::yes)
        rep.failures.push_back("w_k not in B_p on the open curve");

    auto label = [&](int j, double t, Side side, double a, double b, const std::string& prefix) -> EndLabel {
        const MeasureComponent& c = mu.comp(j);
        EndLabel l{j, "", 0.0};
        if (!(ac_mass(c, a, b) > 0.0)) {
            l.label = prefix + ".1";
            return l;
        }
        if (bp_membership(c, a, b, p, mu.curve).verdict == Tri::yes) {
            l.label = prefix + ".2";
            return l;
        }
        const WeightPiece* pc = c.piece_at(t, side);
        if (!pc) return l;
        if (std::holds_alternative<MonotoneForm>(pc->form.v)) {
            l.label = prefix + ".1";
            return l;
        }
        if (pc->form.has_general()) return l;
        LocalBehaviour lb = local_behaviour(*pc, t, side);
        if (lb.kind != LocalKind::power) return l;
        l.exponent = lb.exponent;
        double thr = p == 1.0 ? 0.0 : p - 1.0;
        if (lb.exponent > thr) l.label = prefix + ".4";
        else if (lb.exponent == thr) l.label = prefix + ".3";
        return l;
    };
    for (int j = 1; j <= mu.k; ++j) {
        EndLabel s = label(j, 0.0, Side::right, 0.0, rep.a2, "2");
        EndLabel t = label(j, L, Side::left, rep.a3, L, "3");
        if (s.label.empty()) rep.failures.push_back("w_" + std::to_string(j) + " matches no case at the start");
        if (t.label.empty()) rep.failures.push_back("w_" + std::to_string(j) + " matches no case at the end");
        rep.start.push_back(s);
        rep.end.push_back(t);
    }
    rep.is_type = rep.failures.empty();
    return rep;
}

Classification classify(const VectorialMeasure& mu) {
    Classification c;
    c.analysis = analyze_measure(mu);
    c.admissibility = admissibility(mu, c.analysis);
    c.a = classify_type_a(mu, c.analysis, c.admissibility);
    c.b = classify_type_b(mu, c.admissibility);
    c.c = classify_type_c(mu, c.admissibility);
    return c;
}

VectorialMeasure esd_closure(const VectorialMeasure& mu) {
    VectorialMeasure out = mu;
    double L = mu.length();
    for (int j = mu.k - 1; j >= 0; --j) {
        MeasureComponent s = add_components(mu.comp(j), out.comp(j + 1), L);
        s.j = j;
        out.components[static_cast<size_t>(j)] = s;
    }
    return out;
}

namespace {

// sup of v/u on (a, b) where both are single pieces; +inf when unbounded.
double ratio_sup(const WeightPiece& u, const WeightPiece& v, double a, double b) {
    if (cell_sign(v, a, b) == CellSign::zero) return 0.0;
    if (cell_sign(u, a, b) == CellSign::zero) return INFINITY;
    for (auto [t, side] : {std::pair{a, Side::right}, std::pair{b, Side::left}}) {
        LocalBehaviour lu = local_behaviour(u, t, side), lv = local_behaviour(v, t, side);
        if (lv.kind == LocalKind::zero) continue;
        if (lu.kind == LocalKind::zero) return INFINITY;
        if (lu.kind == LocalKind::power && lv.kind == LocalKind::power) {
            if (lv.exponent < lu.exponent) return INFINITY;
            continue;
        }
        // numeric: look for growth of the ratio towards t
        double h = 0.25 * (b - a), prev = -1.0, first = -1.0;
        for (int q = 0; q < 30; ++q, h *= 0.5) {
            double s = side == Side::right ? t + h : t - h;
            double uv = u.form.value(s), vv = v.form.value(s);
            double r = vv > 0.0 ? (uv > 0.0 ? vv / uv : INFINITY) : 0.0;
            if (first < 0.0) first = r;
            prev = r;
        }
        if (!std::isfinite(prev) || prev > 1e3 * std::max(first, 1e-300)) return INFINITY;
    }
    double best = 0.0;
    const int n = 128;
    for (int i = 1; i < n; ++i) {
        double s = a + (b - a) * i / n;
        double uv = u.form.value(s), vv = v.form.value(s);
        if (vv <= 0.0) continue;
        if (uv <= 0.0) return INFINITY;
        best = std::max(best, vv / uv);
    }
    // limits at power-type ends
    for (auto [t, side] : {std::pair{a, Side::right}, std::pair{b, Side::left}}) {
        double s = side == Side::right ? t + 1e-9 * (b - a) : t - 1e-9 * (b - a);
        double uv = u.form.value(s), vv = v.form.value(s);
        if (vv > 0.0 && uv > 0.0) best = std::max(best, vv / uv);
    }
    return best;
}

}  // namespace

EsdReport esd(const VectorialMeasure& mu) {
    EsdReport rep;
    rep.closure = esd_closure(mu);
    double L = mu.length(), e = eps_of(L);
    double c = mu.k == 0 ? 1.0 : 0.0;
    for (int j = 0; j < mu.k; ++j) {
        const MeasureComponent& lo = mu.comp(j);
        const MeasureComponent& hi = mu.comp(j + 1);
        for (auto& a : hi.atoms) {
            if (!(a.mass > 0.0)) continue;
            double below = 0.0;
            for (auto& b : lo.atoms)
                if (std::abs(b.t - a.t) <= e) below += b.mass;
            if (below <= 0.0) {
                std::ostringstream os;
                os << "atom of mu_" << j + 1 << " at " << a.t << " not charged by mu_" << j;
                rep.notes.push_back(os.str());
                c = INFINITY;
            } else {
                c = std::max(c, a.mass / below);
            }
        }
        std::vector<double> cuts;
        for (auto* comp : {&lo, &hi})
            for (auto& pc : comp->pieces) {
                cuts.push_back(pc.arc.t0);
                for (double s : structural_points(pc)) cuts.push_back(s);
            }
        std::sort(cuts.begin(), cuts.end());
        auto rl = refine_pieces(lo.pieces.empty() ? MeasureComponent{j, {{{0.0, L}, {ZeroForm{}}, "", ""}}, {}} : lo,
                                cuts, L);
        auto rh = refine_pieces(hi.pieces.empty() ? MeasureComponent{j + 1, {{{0.0, L}, {ZeroForm{}}, "", ""}}, {}} : hi,
                                cuts, L);
        for (size_t i = 0; i < rl.size() && i < rh.size(); ++i) {
            double r = ratio_sup(rl[i], rh[i], rl[i].arc.t0, rl[i].arc.t1);
            if (!std::isfinite(r)) {
                std::ostringstream os;
                os << "w_" << j + 1 << "/w_" << j << " unbounded on " << arc_name(rl[i].arc.t0, rl[i].arc.t1);
                rep.notes.push_back(os.str());
            }
            c = std::max(c, r);
        }
    }
    rep.c = c;
    rep.is_esd = std::isfinite(c);
    return rep;
}

BoundednessVerdict boundedness_verdict(const VectorialMeasure& mu) {
    BoundednessVerdict v;
    v.classes = classify(mu);
    KernelSystem sys = assemble_kernel_system(mu);
    KernelReport ker = solve_kernel(sys, mu.p);
    v.kernel_dim = ker.dim;
    v.low_confidence = ker.low_confidence;
    for (auto& w : v.classes.analysis.warnings) v.notes.push_back(w);

    const auto& cl = v.classes;
    bool ac_monotone = cl.b.is_type && cl.b.absolutely_continuous;
    bool k1 = mu.k == 1 && cl.admissibility.admissible;
    if (cl.a.is_type) v.supporting.push_back("type_a_kernel_criterion");
    if (cl.b.is_type) v.supporting.push_back("type_b_kernel_criterion");
    if (ac_monotone) v.supporting.push_back("absolutely_continuous_monotone_criterion");
    if (cl.c.is_type) v.supporting.push_back("type_c_power_criterion");
    if (k1) v.supporting.push_back("first_order_mass_criterion");

    bool covered = cl.a.is_type || cl.b.is_type || cl.c.is_type;
    std::string primary;
    if (mu.k == 1 && ac_monotone) primary = "absolutely_continuous_monotone_criterion";
    else if (cl.a.is_type) primary = "type_a_kernel_criterion";
    else if (ac_monotone) primary = "absolutely_continuous_monotone_criterion";
    else if (cl.b.is_type) primary = "type_b_kernel_criterion";
    else if (cl.c.is_type) primary = "type_c_power_criterion";

    if (cl.c.is_type && mu.k >= 1 && total_mass(mu.comp(1), mu.length()) > 0.0) {
        double m0 = total_mass(mu.comp(0), mu.length()) + mu.comp(0).atom_mass();
        bool iii = m0 > 0.0;
        if (iii != (ker.dim == 0)) v.notes.push_back("kernel test and base mass test disagree on a type C measure");
    }

    if (ker.dim > 0) {
        v.verdict = "unbounded";
        v.theorem = covered ? primary : "ill_defined_nonzero_kernel";
        if (!covered) v.supporting.push_back("ill_defined_nonzero_kernel");
        v.certificate = unboundedness_certificate(sys, ker);
    } else if (covered) {
        v.verdict = "bounded";
        v.theorem = primary;
    } else {
        v.verdict = "unknown";
        v.notes.push_back("no structural class verified and the kernel is trivial");
    }
    if (ker.low_confidence) v.notes.push_back("kernel rank decision is ill-conditioned");
    return v;
}

}  // namespace sobcurve
