#include "sobcurve/point_set.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sobcurve {

double SetComponent::length(double L) const {
    if (whole) return L;
    if (wraps) return (L - t0) + t1;
    return t1 - t0;
}

bool SetComponent::contains(double t, Side side, double L) const {
    double eps = 1e-12 * std::max(1.0, L);
    if (whole) return true;
    auto at = [&](double a) { return std::abs(t - a) <= eps; };
    bool a0 = at(t0), a1 = at(t1);
    if (a0 && a1) return side == Side::right ? has_left : has_right;
    if (a0) return side == Side::right && has_left;
    if (a1) return side == Side::left && has_right;
    if (wraps) return t > t0 || t < t1;
    return t > t0 && t < t1;
}

PointSet::PointSet(double L, bool closed) : L_(L), closed_(closed) {
    breaks_ = {0.0, L};
    cells_ = {0};
    left_ = {0, 0};
    right_ = {0, 0};
}

PointSet PointSet::whole(double L, bool closed) {
    PointSet s(L, closed);
    s.cells_[0] = 1;
    s.left_ = {1, 1};
    s.right_ = {1, 1};
    return s;
}

PointSet PointSet::open_arc(double L, bool closed, double a, double b) {
    PointSet s = PointSet(L, closed).refined({a, b});
    s.assign_open(a, b, true);
    return s;
}

PointSet PointSet::closed_arc(double L, bool closed, double a, double b) {
    PointSet s = open_arc(L, closed, a, b);
    s.assign_half(a, Side::right, true);
    s.assign_half(b, Side::left, true);
    s.normalize_ends();
    return s;
}

double PointSet::tol() const { return 1e-12 * std::max(1.0, L_); }

size_t PointSet::index_of(double t) const {
    auto it = std::lower_bound(breaks_.begin(), breaks_.end(), t - tol());
    if (it != breaks_.end() && std::abs(*it - t) <= tol()) return static_cast<size_t>(it - breaks_.begin());
    return npos;
}

void PointSet::normalize_ends() {
    size_t m = breaks_.size() - 1;
    if (closed_) {
        // 0 and L are one point: 0^- lives at index m, 0^+ at index 0
        left_[0] = left_[m];
        right_[m] = right_[0];
    } else {
        left_[0] = right_[0];
        right_[m] = left_[m];
    }
}

PointSet PointSet::refined(const std::vector<double>& pts) const {
    PointSet s = *this;
    for (double t : pts) {
        if (t < -tol() || t > L_ + tol()) throw std::out_of_range("PointSet: breakpoint outside curve");
        t = std::clamp(t, 0.0, L_);
        if (s.index_of(t) != npos) continue;
        auto it = std::upper_bound(s.breaks_.begin(), s.breaks_.end(), t);
        size_t i = static_cast<size_t>(it - s.breaks_.begin());  // new index, cell i-1 is split
        char c = s.cells_[i - 1];
        s.breaks_.insert(s.breaks_.begin() + i, t);
        s.cells_.insert(s.cells_.begin() + i, c);
        s.left_.insert(s.left_.begin() + i, c);
        s.right_.insert(s.right_.begin() + i, c);
    }
    return s;
}

void PointSet::set_point(size_t i, bool left, bool right) {
    size_t m = breaks_.size() - 1;
    left_[i] = left;
    right_[i] = right;
    if (closed_ && i == 0) left_[m] = left;
    if (closed_ && i == m) right_[0] = right;
    normalize_ends();
}

void PointSet::assign_open(double a, double b, bool in) {
    *this = refined({a, b});
    size_t ia = index_of(a), ib = index_of(b);
    if (ib < ia) throw std::invalid_argument("assign_open: b < a");
    for (size_t i = ia; i < ib; ++i) cells_[i] = in;
    for (size_t i = ia + 1; i < ib; ++i) left_[i] = right_[i] = in;
    normalize_ends();
}

void PointSet::assign_half(double t, Side side, bool in) {
    *this = refined({t});
    size_t i = index_of(t);
    size_t m = breaks_.size() - 1;
    if (side == Side::left) {
        left_[i] = in;
        if (closed_ && i == 0) left_[m] = in;
        if (closed_ && i == m) left_[0] = in;
    } else {
        right_[i] = in;
        if (closed_ && i == 0) right_[m] = in;
        if (closed_ && i == m) right_[0] = in;
    }
    if (!closed_ && i == 0) left_[0] = right_[0];
    if (!closed_ && i == m) right_[m] = left_[m];
}

bool PointSet::contains(double t, Side side) const {
    size_t i = index_of(t);
    if (i != npos) {
        size_t m = breaks_.size() - 1;
        if (closed_ && i == m) i = side == Side::left ? m : 0;
        if (closed_ && i == 0) return side == Side::left ? left_[m] != 0 : right_[0] != 0;
        return side == Side::left ? left_[i] != 0 : right_[i] != 0;
    }
    if (t < 0.0 || t > L_) return false;
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
    size_t c = static_cast<size_t>(it - breaks_.begin()) - 1;
    return cells_[std::min(c, cells_.size() - 1)] != 0;
}

bool PointSet::contains_point(double t) const { return contains(t, Side::left) && contains(t, Side::right); }

bool PointSet::contains_open(double a, double b) const {
    PointSet s = refined({a, b});
    size_t ia = s.index_of(a), ib = s.index_of(b);
    for (size_t i = ia; i < ib; ++i)
        if (!s.cells_[i]) return false;
    for (size_t i = ia + 1; i < ib; ++i)
        if (!s.left_[i] || !s.right_[i]) return false;
    return true;
}

bool PointSet::contains_closed(double a, double b) const {
    return contains_open(a, b) && contains(a, Side::right) && contains(b, Side::left);
}

bool PointSet::empty() const {
    for (char c : cells_)
        if (c) return false;
    for (size_t i = 0; i < breaks_.size(); ++i)
        if (left_[i] || right_[i]) return false;
    return true;
}

double PointSet::measure() const {
    double s = 0.0;
    for (size_t i = 0; i < cells_.size(); ++i)
        if (cells_[i]) s += breaks_[i + 1] - breaks_[i];
    return s;
}

namespace {

template <class Op>
PointSet combine(const PointSet& a, const PointSet& b, Op op) {
    PointSet ra = a.refined(b.breaks());
    PointSet rb = b.refined(ra.breaks());
    PointSet out = ra;
    for (size_t i = 0; i + 1 < ra.breaks().size(); ++i) out.set_cell(i, op(ra.cell_in(i), rb.cell_in(i)));
    for (size_t i = 0; i < ra.breaks().size(); ++i) {
        bool l = op(ra.left_in(i), rb.left_in(i));
        bool r = op(ra.right_in(i), rb.right_in(i));
        out.set_point(i, l, r);
    }
    return out.simplified();
}

}  // namespace

PointSet PointSet::unite(const PointSet& o) const { return combine(*this, o, [](bool x, bool y) { return x || y; }); }

PointSet PointSet::intersect(const PointSet& o) const {
    return combine(*this, o, [](bool x, bool y) { return x && y; });
}

PointSet PointSet::complement() const {
    PointSet s = *this;
    for (auto& c : s.cells_) c = !c;
    for (auto& c : s.left_) c = !c;
    for (auto& c : s.right_) c = !c;
    return s;
}

std::vector<SetComponent> PointSet::components() const {
    // Walk p0+, c0, p1-, p1+, ..., c_{m-1}, pm-. kind 0: p-, 1: p+, 2: cell
    struct El {
        int kind;
        size_t i;
        bool in;
    };
    size_t m = breaks_.size() - 1;
    std::vector<El> seq;
    seq.push_back({1, 0, right_[0] != 0});
    for (size_t i = 0; i < m; ++i) {
        seq.push_back({2, i, cells_[i] != 0});
        seq.push_back({0, i + 1, left_[i + 1] != 0});
        if (i + 1 < m) seq.push_back({1, i + 1, right_[i + 1] != 0});
    }
    struct Run {
        size_t a, b;
    };
    std::vector<Run> runs;
    for (size_t k = 0; k < seq.size();) {
        if (!seq[k].in) {
            ++k;
            continue;
        }
        size_t s = k;
        while (k < seq.size() && seq[k].in) ++k;
        runs.push_back({s, k - 1});
    }
    std::vector<SetComponent> out;
    if (runs.empty()) return out;
    if (closed_ && runs.size() == 1 && runs[0].a == 0 && runs[0].b == seq.size() - 1) {
        SetComponent c;
        c.t0 = 0;
        c.t1 = L_;
        c.whole = c.wraps = true;
        c.has_left = c.has_right = true;
        out.push_back(c);
        return out;
    }
    auto make = [&](size_t a, size_t b) {
        SetComponent c;
        const El& ea = seq[a];
        const El& eb = seq[b];
        if (ea.kind == 2) {
            c.t0 = breaks_[ea.i];
            c.has_left = false;
        } else {
            c.t0 = breaks_[ea.i];
            c.has_left = ea.kind == 1 || (a + 1 <= b && seq[a + 1].kind == 1 && seq[a + 1].i == ea.i);
        }
        if (eb.kind == 2) {
            c.t1 = breaks_[eb.i + 1];
            c.has_right = false;
        } else {
            c.t1 = breaks_[eb.i];
            c.has_right = eb.kind == 0 || (b >= a + 1 && seq[b - 1].kind == 0 && seq[b - 1].i == eb.i);
        }
        return c;
    };
    bool merge_wrap = closed_ && runs.size() >= 2 && runs.front().a == 0 && runs.back().b == seq.size() - 1;
    size_t first = merge_wrap ? 1 : 0;
    size_t last = merge_wrap ? runs.size() - 1 : runs.size();
    for (size_t r = first; r < last; ++r) out.push_back(make(runs[r].a, runs[r].b));
    if (merge_wrap) {
        SetComponent tail = make(runs.back().a, runs.back().b);
        SetComponent head = make(runs.front().a, runs.front().b);
        SetComponent c;
        c.t0 = tail.t0;
        c.has_left = tail.has_left;
        c.t1 = head.t1;
        c.has_right = head.has_right;
        c.wraps = true;
        out.push_back(c);
    }
    return out;
}

std::vector<Arc> PointSet::open_arcs() const {
    std::vector<Arc> out;
    size_t m = breaks_.size() - 1;
    size_t i = 0;
    while (i < m) {
        if (!cells_[i]) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j + 1 < m && cells_[j + 1] && left_[j + 1] && right_[j + 1]) ++j;
        out.push_back({breaks_[i], breaks_[j + 1]});
        i = j + 1;
    }
    if (closed_ && out.size() >= 2 && out.front().t0 == 0.0 && out.back().t1 == L_ && left_[m] && right_[0]) {
        Arc w{out.back().t0, out.front().t1};
        out.pop_back();
        out.erase(out.begin());
        out.push_back(w);
    }
    return out;
}

PointSet PointSet::simplified() const {
    PointSet s(L_, closed_);
    s.breaks_ = {breaks_[0]};
    s.left_ = {left_[0]};
    s.right_ = {right_[0]};
    s.cells_.clear();
    size_t m = breaks_.size() - 1;
    for (size_t i = 0; i < m; ++i) {
        bool last = i + 1 == m;
        if (!last) {
            char c = cells_[i];
            if (cells_[i + 1] == c && left_[i + 1] == c && right_[i + 1] == c) continue;
        }
        s.cells_.push_back(cells_[i]);
        s.breaks_.push_back(breaks_[i + 1]);
        s.left_.push_back(left_[i + 1]);
        s.right_.push_back(right_[i + 1]);
    }
    s.normalize_ends();
    return s;
}

bool PointSet::operator==(const PointSet& o) const {
    PointSet a = simplified(), b = o.simplified();
    if (a.breaks_.size() != b.breaks_.size() || a.closed_ != b.closed_) return false;
    for (size_t i = 0; i < a.breaks_.size(); ++i)
        if (std::abs(a.breaks_[i] - b.breaks_[i]) > tol()) return false;
    return a.cells_ == b.cells_ && a.left_ == b.left_ && a.right_ == b.right_;
}

}  // namespace sobcurve
