#include "sobcurve/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sobcurve/quadrature.hpp"

namespace sobcurve {

namespace {

double eps_for(double L) { return 1e-12 * std::max(1.0, L); }

bool same(double a, double b, double L) { return std::abs(a - b) <= eps_for(L); }

void sort_unique(std::vector<double>& v, double L) {
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v)
        if (out.empty() || !same(out.back(), x, L)) out.push_back(x);
    v = out;
}

std::vector<WeightPiece> merge_zero_runs(const std::vector<WeightPiece>& in) {
    std::vector<WeightPiece> out;
    for (auto& p : in) {
        if (!out.empty() && out.back().form.is_zero() && p.form.is_zero()) {
            out.back().arc.t1 = p.arc.t1;
            out.back().exact_t1 = p.exact_t1;
            continue;
        }
        out.push_back(p);
    }
    return out;
}

double integrate_term(const WeightForm& f, double u0, double u1, const std::function<double(double)>& g,
                      double tol) {
    if (std::holds_alternative<ZeroForm>(f.v)) return 0.0;
    auto integrand = [&](double t) {
        double w = f.value(t);
        if (w == 0.0) return 0.0;
        return g(t) * w;
    };
    if (auto* p = std::get_if<PowerForm>(&f.v)) {
        double e0 = same(u0, p->anchor0, u1) ? p->alpha0 : 0.0;
        double e1 = same(u1, p->anchor1, u1) ? p->alpha1 : 0.0;
        return integrate_singular(integrand, u0, u1, e0, e1, tol).value;
    }
    std::vector<double> cuts{u0, u1};
    const Evaluator* ev = nullptr;
    if (auto* m = std::get_if<MonotoneForm>(&f.v)) ev = &m->eval;
    if (auto* gf = std::get_if<GeneralForm>(&f.v)) ev = &gf->eval;
    if (ev)
        for (double k : ev->kinks())
            if (k > u0 && k < u1) cuts.push_back(k);
    std::sort(cuts.begin(), cuts.end());
    double s = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) s += integrate_adaptive(integrand, cuts[i], cuts[i + 1], tol).value;
    return s;
}

}  // namespace

double MeasureComponent::weight_at(double t) const {
    for (auto& p : pieces)
        if (t >= p.arc.t0 && t <= p.arc.t1) return p.form.value(t);
    return 0.0;
}

const WeightPiece* MeasureComponent::piece_at(double t, Side side) const {
    for (auto& p : pieces) {
        double e = eps_for(p.arc.t1);
        if (side == Side::right && t >= p.arc.t0 - e && t < p.arc.t1 - e) return &p;
        if (side == Side::left && t > p.arc.t0 + e && t <= p.arc.t1 + e) return &p;
    }
    return nullptr;
}

bool MeasureComponent::ac_zero() const {
    for (auto& p : pieces)
        if (!p.form.is_zero()) return false;
    return true;
}

double MeasureComponent::atom_mass() const {
    double s = 0.0;
    for (auto& a : atoms) s += a.mass;
    return s;
}

std::vector<double> VectorialMeasure::breakpoints() const {
    double L = length();
    std::vector<double> pts{0.0, L}, found;
    for (auto& c : components) {
        for (auto& p : c.pieces) {
            pts.push_back(p.arc.t0);
            pts.push_back(p.arc.t1);
            for (double s : structural_points(p)) found.push_back(s);
        }
        for (auto& a : c.atoms) pts.push_back(a.t);
    }
    for (auto& t : tails) pts.push_back(t.t);
    // given points win over computed ones that coincide with them
    sort_unique(pts, L);
    std::vector<double> extra;
    for (double s : found) {
        auto it = std::lower_bound(pts.begin(), pts.end(), s);
        bool near = (it != pts.end() && same(*it, s, L)) || (it != pts.begin() && same(*(it - 1), s, L));
        if (!near) extra.push_back(s);
    }
    pts.insert(pts.end(), extra.begin(), extra.end());
    sort_unique(pts, L);
    return pts;
}

void VectorialMeasure::validate() const {
    std::ostringstream err;
    if (!(p >= 1.0) || !std::isfinite(p)) throw MeasureError("p must be >= 1");
    if (k < 0) throw MeasureError("k must be >= 0");
    if (components.size() != static_cast<size_t>(k + 1)) throw MeasureError("need exactly k+1 components");
    double L = length();
    for (size_t j = 0; j < components.size(); ++j) {
        auto& c = components[j];
        if (c.j != static_cast<int>(j)) throw MeasureError("component index mismatch");
        if (!c.pieces.empty()) {
            if (!same(c.pieces.front().arc.t0, 0.0, L) || !same(c.pieces.back().arc.t1, L, L)) {
                err << "component " << j << ": pieces must tile [0, " << L << "]";
                throw MeasureError(err.str());
            }
            for (size_t i = 0; i < c.pieces.size(); ++i) {
                auto& pc = c.pieces[i];
                if (!(pc.arc.t1 > pc.arc.t0)) {
                    err << "component " << j << ": empty or inverted piece " << i;
                    throw MeasureError(err.str());
                }
                if (i > 0 && !same(c.pieces[i - 1].arc.t1, pc.arc.t0, L)) {
                    err << "component " << j << ": gap or overlap before piece " << i;
                    throw MeasureError(err.str());
                }
                for (auto* f : flatten_terms(pc.form)) {
                    if (auto* pw = std::get_if<PowerForm>(&f->v)) {
                        if (!(pw->c > 0.0)) throw MeasureError("power piece needs c > 0");
                        bool a0 = same(pc.arc.t0, pw->anchor0, L), a1 = same(pc.arc.t1, pw->anchor1, L);
                        if ((a0 && pw->alpha0 <= -1.0) || (a1 && pw->alpha1 <= -1.0)) {
                            err << "component " << j << ": piece " << i
                                << " has a non-integrable singularity (infinite mass)";
                            throw MeasureError(err.str());
                        }
                        if (pw->anchor0 > pc.arc.t0 + eps_for(L) || pw->anchor1 < pc.arc.t1 - eps_for(L))
                            throw MeasureError("power anchors must lie outside the open piece");
                    }
                    const Evaluator* ev = nullptr;
                    if (auto* m = std::get_if<MonotoneForm>(&f->v)) ev = &m->eval;
                    if (auto* g = std::get_if<GeneralForm>(&f->v)) ev = &g->eval;
                    if (ev) {
                        double prev = 0.0;
                        for (int s = 0; s <= 64; ++s) {
                            double t = pc.arc.t0 + (pc.arc.t1 - pc.arc.t0) * s / 64.0;
                            double v = (*ev)(t);
                            if (!(v >= 0.0) || !std::isfinite(v)) {
                                err << "component " << j << ": negative or non-finite weight in piece " << i;
                                throw MeasureError(err.str());
                            }
                            auto* m = std::get_if<MonotoneForm>(&f->v);
                            if (m && !m->comparable && s > 0) {
                                double slack = 1e-12 * std::max(1.0, std::abs(v));
                                bool bad = m->direction == Monotone::nondecreasing ? v < prev - slack : v > prev + slack;
                                if (bad) {
                                    err << "component " << j << ": piece " << i << " is not monotone as annotated";
                                    throw MeasureError(err.str());
                                }
                            }
                            prev = v;
                        }
                    }
                }
            }
        }
        for (auto& a : c.atoms) {
            if (!(a.t >= -eps_for(L) && a.t <= L + eps_for(L))) throw MeasureError("atom outside the curve");
            if (!(a.mass >= 0.0) || !std::isfinite(a.mass)) throw MeasureError("atom mass must be finite and >= 0");
        }
    }
    for (auto& t : tails)
        if (t.order < 0 || t.order > k) throw MeasureError("tail constraint order out of range");
}

double integrate_weight(const MeasureComponent& c, double a, double b, const std::function<double(double)>& f,
                        double tol) {
    double s = 0.0;
    for (auto& p : c.pieces) {
        double u0 = std::max(a, p.arc.t0), u1 = std::min(b, p.arc.t1);
        if (!(u1 > u0)) continue;
        for (auto* term : flatten_terms(p.form)) s += integrate_term(*term, u0, u1, f, tol);
    }
    return s;
}

double ac_mass(const MeasureComponent& c, double a, double b) {
    double s = 0.0;
    for (auto& p : c.pieces) {
        double u0 = std::max(a, p.arc.t0), u1 = std::min(b, p.arc.t1);
        if (!(u1 > u0)) continue;
        for (auto* term : flatten_terms(p.form)) {
            auto* pw = std::get_if<PowerForm>(&term->v);
            if (pw && !pw->smooth && same(u0, pw->anchor0, u1) && same(u1, pw->anchor1, u1)) {
                double len = u1 - u0;
                s += pw->c * std::pow(len, pw->alpha0 + pw->alpha1 + 1.0) *
                     beta_fn(pw->alpha0 + 1.0, pw->alpha1 + 1.0);
                continue;
            }
            s += integrate_term(*term, u0, u1, [](double) { return 1.0; }, 1e-12);
        }
    }
    return s;
}

double total_mass(const MeasureComponent& c, double L) { return ac_mass(c, 0.0, L) + c.atom_mass(); }

std::vector<WeightPiece> refine_pieces(const MeasureComponent& c, const std::vector<double>& pts, double L) {
    std::vector<WeightPiece> out;
    for (auto& p : c.pieces) {
        std::vector<double> cuts{p.arc.t0, p.arc.t1};
        for (double t : pts)
            if (t > p.arc.t0 + eps_for(L) && t < p.arc.t1 - eps_for(L)) cuts.push_back(t);
        sort_unique(cuts, L);
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            WeightPiece q = p;
            q.arc = {cuts[i], cuts[i + 1]};
            if (i > 0) q.exact_t0.clear();
            if (i + 2 < cuts.size()) q.exact_t1.clear();
            out.push_back(q);
        }
    }
    return out;
}

Decomposition decompose(const MeasureComponent& c, const PointSet& omega, double L) {
    Decomposition d;
    d.ac_on_omega.j = d.star.j = c.j;
    for (auto& p : refine_pieces(c, omega.breaks(), L)) {
        bool in = omega.contains(0.5 * (p.arc.t0 + p.arc.t1), Side::right);
        WeightPiece zero = p;
        zero.form = WeightForm{ZeroForm{}};
        d.ac_on_omega.pieces.push_back(in ? p : zero);
        d.star.pieces.push_back(in ? zero : p);
    }
    d.ac_on_omega.pieces = merge_zero_runs(d.ac_on_omega.pieces);
    d.star.pieces = merge_zero_runs(d.star.pieces);
    d.star.atoms = c.atoms;
    d.ac_mass = ac_mass(d.ac_on_omega, 0.0, L);
    d.star_mass = ac_mass(d.star, 0.0, L) + c.atom_mass();
    return d;
}

MeasureComponent restrict_component(const MeasureComponent& c, const PointSet& region) {
    MeasureComponent out;
    out.j = c.j;
    double L = region.length();
    for (auto& p : refine_pieces(c, region.breaks(), L)) {
        WeightPiece q = p;
        if (!region.contains(0.5 * (p.arc.t0 + p.arc.t1), Side::right)) q.form = WeightForm{ZeroForm{}};
        out.pieces.push_back(q);
    }
    out.pieces = merge_zero_runs(out.pieces);
    for (auto& a : c.atoms)
        if (region.contains(a.t, Side::left) || region.contains(a.t, Side::right)) out.atoms.push_back(a);
    return out;
}

VectorialMeasure restrict_measure(const VectorialMeasure& mu, const PointSet& region) {
    VectorialMeasure out = mu;
    for (auto& c : out.components) c = restrict_component(c, region);
    out.tails.clear();
    for (auto& t : mu.tails)
        if (region.contains(t.t, t.side)) out.tails.push_back(t);
    return out;
}

VectorialMeasure reverse_measure(const VectorialMeasure& mu) {
    VectorialMeasure out = mu;
    out.curve = mu.curve.reversed();
    double L = mu.length();
    for (auto& c : out.components) {
        std::vector<WeightPiece> pieces;
        for (auto it = c.pieces.rbegin(); it != c.pieces.rend(); ++it) {
            WeightPiece q;
            q.arc = {L - it->arc.t1, L - it->arc.t0};
            q.form = reflect_form(it->form, L);
            pieces.push_back(q);
        }
        c.pieces = pieces;
        std::vector<Atom> atoms;
        for (auto it = c.atoms.rbegin(); it != c.atoms.rend(); ++it) atoms.push_back({L - it->t, it->mass, "", it->exact_mass});
        c.atoms = atoms;
    }
    for (auto& t : out.tails) {
        t.t = L - t.t;
        t.side = t.side == Side::left ? Side::right : Side::left;
    }
    return out;
}

VectorialMeasure scale_measure(const VectorialMeasure& mu, double c) {
    if (!(c > 0.0)) throw MeasureError("scale must be positive");
    VectorialMeasure out = mu;
    for (auto& comp : out.components) {
        for (auto& p : comp.pieces) p.form = scale_form(p.form, c);
        for (auto& a : comp.atoms) {
            a.mass *= c;
            a.exact_mass.clear();
        }
    }
    return out;
}

}  // namespace sobcurve
