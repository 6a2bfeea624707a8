#include "sobcurve/muckenhoupt.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sobcurve/quadrature.hpp"

namespace sobcurve {

namespace {

double eps_of(double L) { return 1e-12 * std::max(1.0, std::abs(L)); }

MeasureComponent reflect_component(const MeasureComponent& c, double R) {
    MeasureComponent out;
    out.j = c.j;
    for (auto it = c.pieces.rbegin(); it != c.pieces.rend(); ++it) {
        WeightPiece q;
        q.arc = {R - it->arc.t1, R - it->arc.t0};
        q.form = reflect_form(it->form, R);
        out.pieces.push_back(q);
    }
    for (auto it = c.atoms.rbegin(); it != c.atoms.rend(); ++it) out.atoms.push_back({R - it->t, it->mass, "", ""});
    return out;
}

// Integral of v^{-q} over [u0, u1] inside one piece, or +inf.
double inverse_piece_integral(const WeightPiece& pc, double u0, double u1, double q) {
    CellSign s = cell_sign(pc, u0, u1);
    if (s == CellSign::zero) return INFINITY;
    LocalBehaviour l0 = local_behaviour(pc, u0, Side::right);
    LocalBehaviour l1 = local_behaviour(pc, u1, Side::left);
    auto g = [&](double t) {
        double v = pc.form.value(t);
        return v > 0.0 ? std::pow(v, -q) : INFINITY;
    };
    double e0 = 0.0, e1 = 0.0;
    bool numeric = false;
    for (auto [lb, e, at, dir] : {std::tuple{l0, &e0, u0, 1.0}, std::tuple{l1, &e1, u1, -1.0}}) {
        if (lb.kind == LocalKind::zero) return INFINITY;
        if (lb.kind == LocalKind::power) {
            *e = -lb.exponent * q;
            if (*e <= -1.0) return INFINITY;
        } else {
            ProbeResult pr = probe_integrability(g, at, dir, 0.25 * (u1 - u0));
            if (pr.verdict == Integrability::infinite) return INFINITY;
            numeric = true;
        }
    }
    if (numeric) return integrate_adaptive(g, u0, u1, 1e-10, 8000).value;
    return integrate_singular(g, u0, u1, e0, e1, 1e-11).value;
}

// 1 / ess inf of v on [u0, u1] inside one piece.
double inverse_piece_sup(const WeightPiece& pc, double u0, double u1) {
    if (cell_sign(pc, u0, u1) == CellSign::zero) return INFINITY;
    for (auto [t, side] : {std::pair{u0, Side::right}, std::pair{u1, Side::left}}) {
        LocalBehaviour lb = local_behaviour(pc, t, side);
        if (lb.kind == LocalKind::zero || lb.kind == LocalKind::numeric) return INFINITY;
        if (lb.exponent > 0.0) return INFINITY;
    }
    double vmin = INFINITY;
    const int n = 32;
    for (int i = 0; i <= n; ++i) {
        double t = u0 + (u1 - u0) * i / n;
        double v = pc.form.value(t);
        if (std::isfinite(v)) vmin = std::min(vmin, v);
    }
    return vmin > 0.0 ? 1.0 / vmin : INFINITY;
}

double cell_value(const MeasureComponent& nu, double a, double b, double p) {
    double acc = 0.0;
    bool covered = false;
    double e = eps_of(b);
    for (auto& pc : nu.pieces) {
        double u0 = std::max(a, pc.arc.t0), u1 = std::min(b, pc.arc.t1);
        if (!(u1 > u0 + e)) continue;
        covered = true;
        if (p == 1.0) acc = std::max(acc, inverse_piece_sup(pc, u0, u1));
        else acc += inverse_piece_integral(pc, u0, u1, 1.0 / (p - 1.0));
        if (!std::isfinite(acc)) return INFINITY;
    }
    return covered ? acc : INFINITY;
}

MuckenhouptResult right_constant(const MeasureComponent& mu_a, const MeasureComponent& nu, double z0, double z1,
                                 double p, const MuckenhouptOptions& opt, bool mirrored) {
    // mirrored: inputs were reflected by t -> z0 + z1 - t; report original coordinates
    auto orig = [&](double t) { return mirrored ? z0 + z1 - t : t; };
    MuckenhouptResult res;
    double e = eps_of(z1);
    double base_mass = 0.0;
    std::vector<Atom> atoms;
    for (auto& a : mu_a.atoms) {
        if (a.mass <= 0.0) continue;
        if (std::abs(a.t - z0) <= e) base_mass += a.mass;
        else if (a.t > z0 && a.t < z1 - e) atoms.push_back(a);
    }
    if (!opt.include_base) base_mass = 0.0;
    std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) { return x.t < y.t; });

    // Endpoint balance at z0 for power-type behaviour.
    {
        const WeightPiece* pn = nu.piece_at(z0, Side::right);
        const WeightPiece* pa = mu_a.piece_at(z0, Side::right);
        LocalBehaviour ln = pn ? local_behaviour(*pn, z0, Side::right) : LocalBehaviour{};
        LocalBehaviour la = pa ? local_behaviour(*pa, z0, Side::right) : LocalBehaviour{};
        bool nu_blows = ln.kind == LocalKind::power && (p == 1.0 ? ln.exponent > 0.0 : ln.exponent >= p - 1.0);
        if (nu_blows && base_mass > 0.0) {
            res.infinite = true;
            res.value = INFINITY;
            res.witness = z0;
            res.certificate = "mass at the base point against a non-integrable inverse weight";
        } else if (ln.kind == LocalKind::power && la.kind == LocalKind::power) {
            double a = la.exponent, en = ln.exponent;
            bool diverges = p == 1.0 ? (en > 0.0 && a + 1.0 - en < 0.0) : (en > p - 1.0 && a + p - en < 0.0);
            if (diverges) {
                std::ostringstream os;
                os << "mu_a ~ s^" << a << ", dnu/ds ~ s^" << en << " at the base point; exponent balance "
                   << (p == 1.0 ? a + 1.0 - en : a + p - en) << " < 0";
                res.infinite = true;
                res.value = INFINITY;
                res.witness = z0;
                res.certificate = os.str();
            }
        }
    }

    std::vector<double> values;
    for (int d = 1; d <= opt.max_depth; ++d) {
        int n = 1 << d;
        std::vector<double> grid(n + 1);
        for (int i = 0; i <= n; ++i) grid[i] = z0 + (z1 - z0) * i / n;
        grid[n] = z1;
        for (auto& a : atoms) grid.push_back(a.t);
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end(), [&](double x, double y) { return std::abs(x - y) <= e; }),
                   grid.end());
        size_t nc = grid.size() - 1;
        std::vector<double> g = opt.parallel ? inverse_weight_cells(nu, grid, p)
                                             : inverse_weight_cells_serial(nu, grid, p);
        // suffix aggregate of the inverse weight
        std::vector<double> suffix(nc + 1, 0.0);
        for (size_t i = nc; i-- > 0;) suffix[i] = p == 1.0 ? std::max(suffix[i + 1], g[i]) : suffix[i + 1] + g[i];
        double F = base_mass, best = 0.0, witness = 0.5 * (z0 + z1);
        size_t ai = 0;
        for (size_t i = 1; i < nc; ++i) {
            F += ac_mass(mu_a, grid[i - 1], grid[i]);
            while (ai < atoms.size() && atoms[ai].t <= grid[i] + e) F += atoms[ai++].mass;
            if (F <= 0.0) continue;
            double G = p == 1.0 ? suffix[i] : std::pow(suffix[i], p - 1.0);
            double v = F * G;
            if (!std::isfinite(v)) {
                if (!res.infinite) {
                    std::ostringstream os;
                    os << "inverse weight not integrable beyond " << orig(grid[i]) << " while the mu_a mass up to "
                       << orig(grid[i]) << " is " << F << " > 0";
                    res.infinite = true;
                    res.certificate = os.str();
                    res.witness = grid[i];
                }
                best = INFINITY;
                witness = grid[i];
                break;
            }
            if (v > best) {
                best = v;
                witness = grid[i];
            }
        }
        res.history.push_back({static_cast<int>(nc), best});
        values.push_back(best);
        if (res.infinite) {
            res.value = INFINITY;
            if (d >= 4) return res;
            continue;
        }
        res.value = best;
        res.witness = witness;
        size_t L = values.size();
        if (L >= 5 && values[L - 5] > 0.0 && best >= 10.0 * values[L - 5]) {
            std::ostringstream os;
            os << "grid values grew " << best / values[L - 5] << "x over 4 refinements, witness near " << orig(witness);
            res.infinite = true;
            res.value = INFINITY;
            res.certificate = os.str();
            return res;
        }
        if (d >= opt.min_depth && L >= 3) {
            auto close = [&](double x, double y) { return std::abs(x - y) <= opt.rel_tol * std::max(std::abs(x), 1e-300); };
            if (close(values[L - 1], values[L - 2]) && close(values[L - 2], values[L - 3])) {
                res.converged = true;
                return res;
            }
        }
    }
    return res;
}

}  // namespace

std::vector<double> inverse_weight_cells_serial(const MeasureComponent& nu, const std::vector<double>& grid, double p) {
    std::vector<double> out(grid.size() - 1);
    for (size_t i = 0; i + 1 < grid.size(); ++i) out[i] = cell_value(nu, grid[i], grid[i + 1], p);
    return out;
}

std::vector<double> inverse_weight_cells(const MeasureComponent& nu, const std::vector<double>& grid, double p) {
    const long n = static_cast<long>(grid.size()) - 1;
    std::vector<double> out(static_cast<size_t>(n));
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < n; ++i) out[i] = cell_value(nu, grid[i], grid[i + 1], p);
    return out;
}

MuckenhouptResult muckenhoupt(const MeasureComponent& mu_a, const MeasureComponent& nu, double z0, double z1, double p,
                              Side side, const MuckenhouptOptions& opt) {
    if (!(z1 > z0)) throw std::invalid_argument("muckenhoupt: empty arc");
    if (!(p >= 1.0)) throw std::invalid_argument("muckenhoupt: p must be >= 1");
    if (side == Side::right) return right_constant(mu_a, nu, z0, z1, p, opt, false);
    double R = z0 + z1;
    MuckenhouptResult r = right_constant(reflect_component(mu_a, R), reflect_component(nu, R), z0, z1, p, opt, true);
    r.witness = R - r.witness;
    return r;
}

ConsistencyResult consistency(const MeasureComponent& w, double a, double b, double p, Side side) {
    ConsistencyResult r;
    if (!(ac_mass(w, a, b) > 0.0)) {
        r.consistent = Tri::yes;
        r.basis = "zero";
        return r;
    }
    const WeightPiece* pc = w.piece_at(0.5 * (a + b), Side::right);
    double e = eps_of(b);
    MuckenhouptOptions quick;
    quick.max_depth = 8;
    if (pc && pc->arc.t0 <= a + e && pc->arc.t1 >= b - e) {
        bool mono = side == Side::right ? comparable_nondecreasing(*pc, a, b) : comparable_nonincreasing(*pc, a, b);
        if (mono) {
            r.consistent = Tri::yes;
            r.basis = "monotone";
            MuckenhouptResult m = muckenhoupt(w, w, a, b, p, side, quick);
            r.value = m.value;
            return r;
        }
        auto terms = flatten_terms(pc->form);
        if (terms.size() == 1 && std::holds_alternative<PowerForm>(terms[0]->v)) {
            LocalBehaviour lb = side == Side::right ? local_behaviour(*pc, b, Side::left) : local_behaviour(*pc, a, Side::right);
            bool ok = p == 1.0 ? lb.exponent <= 0.0 : lb.exponent < p - 1.0;
            r.basis = "power";
            r.consistent = ok ? Tri::yes : Tri::no;
            r.value = ok ? muckenhoupt(w, w, a, b, p, side, quick).value : INFINITY;
            return r;
        }
    }
    MuckenhouptResult m = muckenhoupt(w, w, a, b, p, side);
    r.basis = "numeric";
    r.value = m.value;
    r.consistent = m.infinite ? Tri::no : (m.converged ? Tri::yes : Tri::unknown);
    return r;
}

MeasureComponent add_components(const MeasureComponent& a, const MeasureComponent& b, double L) {
    auto tiled = [&](const MeasureComponent& c) {
        MeasureComponent t = c;
        if (t.pieces.empty()) t.pieces.push_back({{0.0, L}, {ZeroForm{}}, "", ""});
        return t;
    };
    MeasureComponent ta = tiled(a), tb = tiled(b);
    std::vector<double> cuts;
    for (auto* c : {&ta, &tb})
        for (auto& p : c->pieces) cuts.push_back(p.arc.t0);
    std::sort(cuts.begin(), cuts.end());
    auto ra = refine_pieces(ta, cuts, L), rb = refine_pieces(tb, cuts, L);
    if (ra.size() != rb.size()) throw std::logic_error("add_components: mismatched tilings");
    MeasureComponent out;
    out.j = a.j;
    for (size_t i = 0; i < ra.size(); ++i) {
        WeightPiece q = ra[i];
        const WeightForm& fa = ra[i].form;
        const WeightForm& fb = rb[i].form;
        if (fa.is_zero()) q.form = fb;
        else if (!fb.is_zero()) {
            SumForm s;
            for (auto* t : flatten_terms(fa)) s.terms.push_back(*t);
            for (auto* t : flatten_terms(fb)) s.terms.push_back(*t);
            q.form = WeightForm{s};
        }
        out.pieces.push_back(q);
    }
    out.atoms = a.atoms;
    out.atoms.insert(out.atoms.end(), b.atoms.begin(), b.atoms.end());
    std::sort(out.atoms.begin(), out.atoms.end(), [](const Atom& x, const Atom& y) { return x.t < y.t; });
    return out;
}

CompletionCheck verify_completion(const VectorialMeasure& mu, const std::vector<MeasureComponent>& tilde, double z0,
                                  double z1, Side side) {
    CompletionCheck cc;
    if (tilde.size() != static_cast<size_t>(mu.k)) throw std::invalid_argument("need k candidate components");
    double L = mu.length(), e = eps_of(L);
    cc.lambdas.assign(static_cast<size_t>(mu.k), 0.0);
    MeasureComponent bar = mu.comp(mu.k);
    for (int j = mu.k - 1; j >= 0; --j) {
        const MeasureComponent& t = tilde[j];
        for (auto& a : t.atoms)
            if (a.mass > 0.0 && (a.t < z0 - e || a.t > z1 + e)) {
                cc.ok = false;
                cc.failing_j = j;
                cc.reason = "candidate not supported on the arc";
                return cc;
            }
        double mass = ac_mass(t, z0, z1) + t.atom_mass();
        if (!std::isfinite(mass)) {
            cc.ok = false;
            cc.failing_j = j;
            cc.reason = "candidate has infinite mass";
            return cc;
        }
        MuckenhouptOptions opt;
        opt.include_base = true;
        MuckenhouptResult m = muckenhoupt(t, bar, z0, z1, mu.p, side, opt);
        cc.lambdas[j] = m.value;
        if (m.infinite || !m.converged) {
            cc.ok = false;
            cc.failing_j = j;
            std::ostringstream os;
            os << (side == Side::right ? "Lambda^+" : "Lambda^-") << " at j = " << j
               << (m.infinite ? " is infinite: " + m.certificate : " did not converge");
            cc.reason = os.str();
            return cc;
        }
        bar = add_components(mu.comp(j), t, L);
    }
    return cc;
}

}  // namespace sobcurve
