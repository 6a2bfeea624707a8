#include "sobcurve/weight.hpp"

#include <algorithm>
#include <cmath>

namespace sobcurve {

namespace {

double near_tol(double t) { return 1e-12 * std::max(1.0, std::abs(t)); }
bool same_point(double a, double b) { return std::abs(a - b) <= near_tol(std::max(std::abs(a), std::abs(b))); }

std::vector<const WeightForm*> flatten(const WeightForm& f) { return flatten_terms(f); }

// tau such that a monotone evaluator vanishes on one side of it within [a, b]
double monotone_threshold(const MonotoneForm& m, double a, double b) {
    if (m.direction == Monotone::nondecreasing) {
        if (m.eval(a) > 0.0) return a;
        if (!(m.eval(b) > 0.0)) return b;
        double lo = a, hi = b;
        for (int i = 0; i < 200 && hi - lo > near_tol(hi) * 0.5; ++i) {
            double mid = 0.5 * (lo + hi);
            (m.eval(mid) > 0.0 ? hi : lo) = mid;
        }
        return hi;
    }
    if (m.eval(b) > 0.0) return b;
    if (!(m.eval(a) > 0.0)) return a;
    double lo = a, hi = b;
    for (int i = 0; i < 200 && hi - lo > near_tol(hi) * 0.5; ++i) {
        double mid = 0.5 * (lo + hi);
        (m.eval(mid) > 0.0 ? lo : hi) = mid;
    }
    return lo;
}

LocalBehaviour single_behaviour(const WeightForm& f, const Arc& arc, double t, Side side) {
    LocalBehaviour lb;
    if (std::holds_alternative<ZeroForm>(f.v)) return lb;
    if (auto* p = std::get_if<PowerForm>(&f.v)) {
        lb.kind = LocalKind::power;
        if (side == Side::right && same_point(t, p->anchor0)) lb.exponent = p->alpha0;
        else if (side == Side::left && same_point(t, p->anchor1)) lb.exponent = p->alpha1;
        return lb;
    }
    if (auto* m = std::get_if<MonotoneForm>(&f.v)) {
        double tau = monotone_threshold(*m, arc.t0, arc.t1);
        bool inc = m->direction == Monotone::nondecreasing;
        // nondecreasing: zero on [t0, tau), positive after; nonincreasing mirrored
        double eps = near_tol(t);
        if (inc) {
            if (side == Side::right) {
                if (t < tau - eps) return lb;
                if (t > tau + eps || m->eval(t) > 0.0) return {LocalKind::power, 0.0};
                return {LocalKind::numeric, 0.0};
            }
            if (t <= tau + eps) return lb;
            return {LocalKind::power, 0.0};
        }
        if (side == Side::left) {
            if (t > tau + eps) return lb;
            if (t < tau - eps || m->eval(t) > 0.0) return {LocalKind::power, 0.0};
            return {LocalKind::numeric, 0.0};
        }
        if (t >= tau - eps) return lb;
        return {LocalKind::power, 0.0};
    }
    if (auto* g = std::get_if<GeneralForm>(&f.v)) {
        if (g->eval(t) > 0.0) return {LocalKind::power, 0.0};
        // probe a little inside to separate "zero nearby" from "vanishing"
        double h = (arc.t1 - arc.t0) * 1e-3;
        double s = side == Side::right ? t + h : t - h;
        if (!(g->eval(s) > 0.0)) return lb;
        return {LocalKind::numeric, 0.0};
    }
    return lb;
}

}  // namespace

std::vector<const WeightForm*> flatten_terms(const WeightForm& f) {
    std::vector<const WeightForm*> out;
    if (auto* s = std::get_if<SumForm>(&f.v)) {
        for (auto& t : s->terms) {
            auto sub = flatten_terms(t);
            out.insert(out.end(), sub.begin(), sub.end());
        }
    } else {
        out.push_back(&f);
    }
    return out;
}

bool SumForm::operator==(const SumForm& o) const { return terms == o.terms; }

double Evaluator::operator()(double t) const {
    if (kind == Kind::polynomial) {
        double v = 0.0;
        for (size_t i = coeffs.size(); i-- > 0;) v = v * t + coeffs[i];
        return v;
    }
    if (table.empty()) return 0.0;
    if (t <= table.front().first) return table.front().second;
    if (t >= table.back().first) return table.back().second;
    auto it = std::upper_bound(table.begin(), table.end(), t,
                               [](double x, const std::pair<double, double>& e) { return x < e.first; });
    auto& hi = *it;
    auto& lo = *(it - 1);
    double s = (t - lo.first) / (hi.first - lo.first);
    return lo.second + s * (hi.second - lo.second);
}

Evaluator Evaluator::reflected(double L) const {
    Evaluator e = *this;
    if (kind == Kind::table) {
        e.table.clear();
        for (auto it = table.rbegin(); it != table.rend(); ++it) e.table.push_back({L - it->first, it->second});
        return e;
    }
    // p(L - t) by repeated Horner on polynomials in t
    std::vector<double> out(1, 0.0);
    for (size_t i = coeffs.size(); i-- > 0;) {
        std::vector<double> next(out.size() + 1, 0.0);
        for (size_t k = 0; k < out.size(); ++k) {
            next[k] += L * out[k];
            next[k + 1] -= out[k];
        }
        next[0] += coeffs[i];
        out = next;
    }
    while (out.size() > 1 && out.back() == 0.0) out.pop_back();
    e.coeffs = out;
    return e;
}

Evaluator Evaluator::scaled(double c) const {
    Evaluator e = *this;
    for (auto& x : e.coeffs) x *= c;
    for (auto& x : e.table) x.second *= c;
    return e;
}

std::vector<double> Evaluator::kinks() const {
    std::vector<double> out;
    for (auto& x : table) out.push_back(x.first);
    return out;
}

bool WeightForm::is_zero() const {
    for (auto* f : flatten(*this))
        if (!std::holds_alternative<ZeroForm>(f->v)) return false;
    return true;
}

bool WeightForm::has_general() const {
    for (auto* f : flatten(*this))
        if (std::holds_alternative<GeneralForm>(f->v)) return true;
    return false;
}

double WeightForm::value(double t) const {
    if (std::holds_alternative<ZeroForm>(v)) return 0.0;
    if (auto* p = std::get_if<PowerForm>(&v)) {
        double w = p->c;
        if (p->alpha0 != 0.0) w *= std::pow(std::abs(t - p->anchor0), p->alpha0);
        if (p->alpha1 != 0.0) w *= std::pow(std::abs(p->anchor1 - t), p->alpha1);
        if (p->smooth) w *= (*p->smooth)(t);
        return w;
    }
    if (auto* m = std::get_if<MonotoneForm>(&v)) return std::max(0.0, m->eval(t));
    if (auto* g = std::get_if<GeneralForm>(&v)) return std::max(0.0, g->eval(t));
    double s = 0.0;
    for (auto& term : std::get<SumForm>(v).terms) s += term.value(t);
    return s;
}

LocalBehaviour local_behaviour(const WeightPiece& piece, double t, Side side) {
    LocalBehaviour out;
    bool any_nonzero = false, any_numeric = false;
    double emin = INFINITY;
    for (auto* f : flatten(piece.form)) {
        LocalBehaviour lb = single_behaviour(*f, piece.arc, t, side);
        if (lb.kind == LocalKind::zero) continue;
        any_nonzero = true;
        if (lb.kind == LocalKind::numeric) any_numeric = true;
        else emin = std::min(emin, lb.exponent);
    }
    if (!any_nonzero) return out;
    // an unknown vanishing term only matters if nothing else dominates it
    if (any_numeric && !(emin <= 0.0)) return {LocalKind::numeric, 0.0};
    return {LocalKind::power, emin};
}

CellSign cell_sign(const WeightPiece& piece, double a, double b) {
    bool any_pos = false, any_unknown = false;
    for (auto* f : flatten(piece.form)) {
        if (std::holds_alternative<ZeroForm>(f->v)) continue;
        if (std::holds_alternative<PowerForm>(f->v)) {
            if (std::get<PowerForm>(f->v).c > 0.0) any_pos = true;
            continue;
        }
        if (auto* m = std::get_if<MonotoneForm>(&f->v)) {
            if (m->eval(0.5 * (a + b)) > 0.0) any_pos = true;
            continue;
        }
        auto& g = std::get<GeneralForm>(f->v);
        int pos = 0, n = 33;
        for (int i = 1; i <= n; ++i) {
            double t = a + (b - a) * i / (n + 1.0);
            if (g.eval(t) > 0.0) ++pos;
        }
        if (pos == n) any_pos = true;
        else if (pos > 0) any_unknown = true;
    }
    if (any_pos) return CellSign::positive;
    if (any_unknown) return CellSign::unknown;
    return CellSign::zero;
}

std::vector<double> zero_thresholds(const WeightPiece& piece) {
    std::vector<double> out;
    for (auto* f : flatten(piece.form)) {
        if (auto* m = std::get_if<MonotoneForm>(&f->v)) {
            double tau = monotone_threshold(*m, piece.arc.t0, piece.arc.t1);
            // the threshold is found by bisection; one that lands on an end is that end
            double snap = 1e-9 * std::max(1.0, piece.arc.t1 - piece.arc.t0);
            if (tau > piece.arc.t0 + snap && tau < piece.arc.t1 - snap) out.push_back(tau);
        }
    }
    return out;
}

std::vector<double> structural_points(const WeightPiece& piece) {
    std::vector<double> out = zero_thresholds(piece);
    for (auto* f : flatten(piece.form)) {
        if (auto* m = std::get_if<MonotoneForm>(&f->v))
            for (double k : m->eval.kinks())
                if (k > piece.arc.t0 && k < piece.arc.t1) out.push_back(k);
        if (auto* g = std::get_if<GeneralForm>(&f->v))
            for (double k : g->eval.kinks())
                if (k > piece.arc.t0 && k < piece.arc.t1) out.push_back(k);
        if (auto* p = std::get_if<PowerForm>(&f->v)) {
            bool left = same_point(piece.arc.t0, p->anchor0) && p->alpha0 != 0.0;
            bool right = same_point(piece.arc.t1, p->anchor1) && p->alpha1 != 0.0;
            if (left && right) out.push_back(0.5 * (piece.arc.t0 + piece.arc.t1));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

WeightForm reflect_form(const WeightForm& f, double L) {
    if (auto* p = std::get_if<PowerForm>(&f.v)) {
        PowerForm q = *p;
        q.anchor0 = L - p->anchor1;
        q.alpha0 = p->alpha1;
        q.anchor1 = L - p->anchor0;
        q.alpha1 = p->alpha0;
        if (p->smooth) q.smooth = p->smooth->reflected(L);
        return {q};
    }
    if (auto* m = std::get_if<MonotoneForm>(&f.v)) {
        MonotoneForm q = *m;
        q.eval = m->eval.reflected(L);
        q.direction = m->direction == Monotone::nondecreasing ? Monotone::nonincreasing : Monotone::nondecreasing;
        return {q};
    }
    if (auto* g = std::get_if<GeneralForm>(&f.v)) return {GeneralForm{g->eval.reflected(L)}};
    if (auto* s = std::get_if<SumForm>(&f.v)) {
        SumForm q;
        for (auto& t : s->terms) q.terms.push_back(reflect_form(t, L));
        return {q};
    }
    return f;
}

WeightForm scale_form(const WeightForm& f, double c) {
    if (auto* p = std::get_if<PowerForm>(&f.v)) {
        PowerForm q = *p;
        q.c *= c;
        return {q};
    }
    if (auto* m = std::get_if<MonotoneForm>(&f.v)) {
        MonotoneForm q = *m;
        q.eval = m->eval.scaled(c);
        return {q};
    }
    if (auto* g = std::get_if<GeneralForm>(&f.v)) return {GeneralForm{g->eval.scaled(c)}};
    if (auto* s = std::get_if<SumForm>(&f.v)) {
        SumForm q;
        for (auto& t : s->terms) q.terms.push_back(scale_form(t, c));
        return {q};
    }
    return f;
}

namespace {

bool single_nondecreasing(const WeightForm& f, double a, double b) {
    if (std::holds_alternative<ZeroForm>(f.v)) return true;
    if (auto* p = std::get_if<PowerForm>(&f.v)) {
        bool left_ok = !same_point(a, p->anchor0) || p->alpha0 >= 0.0;
        bool right_ok = !same_point(b, p->anchor1) || p->alpha1 <= 0.0;
        return left_ok && right_ok;
    }
    if (auto* m = std::get_if<MonotoneForm>(&f.v))
        return m->direction == Monotone::nondecreasing || m->eval(b) > 0.0;
    return false;
}

bool single_nonincreasing(const WeightForm& f, double a, double b) {
    if (std::holds_alternative<ZeroForm>(f.v)) return true;
    if (auto* p = std::get_if<PowerForm>(&f.v)) {
        bool left_ok = !same_point(a, p->anchor0) || p->alpha0 <= 0.0;
        bool right_ok = !same_point(b, p->anchor1) || p->alpha1 >= 0.0;
        return left_ok && right_ok;
    }
    if (auto* m = std::get_if<MonotoneForm>(&f.v))
        return m->direction == Monotone::nonincreasing || m->eval(a) > 0.0;
    return false;
}

}  // namespace

bool comparable_nondecreasing(const WeightPiece& piece, double a, double b) {
    for (auto* f : flatten(piece.form))
        if (!single_nondecreasing(*f, a, b)) return false;
    return true;
}

bool comparable_nonincreasing(const WeightPiece& piece, double a, double b) {
    for (auto* f : flatten(piece.form))
        if (!single_nonincreasing(*f, a, b)) return false;
    return true;
}

}  // namespace sobcurve
