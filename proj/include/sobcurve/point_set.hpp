#pragma once

#include <vector>

#include "sobcurve/curve.hpp"

namespace sobcurve {

// Maximal connected piece of a PointSet. [t0, t1] in parameter space, or a
// wrap-around run t0 -> L == 0 -> t1 on closed curves (wraps, t1 < t0 allowed).
// has_left means the half-point t0^+ belongs to the set, has_right means t1^-.
struct SetComponent {
    double t0 = 0.0, t1 = 0.0;
    bool has_left = false, has_right = false;
    bool wraps = false;
    bool whole = false;  // entire closed curve

    double length(double L) const;
    bool contains(double t, Side side, double L) const;
};

// Subset of a curve built from open cells and half-points.
//
// The parameter range [0, L] is cut at sorted breakpoints. Each open cell
// between consecutive breakpoints is either in or out, and each breakpoint
// carries two flags: t^- (approached from the left) and t^+. A full point is
// in the set when both flags are set. On open curves the endpoints only have
// one side, which is mirrored into the other flag. On closed curves 0 and L
// are the same point.
class PointSet {
public:
    PointSet() = default;
    PointSet(double L, bool closed);

    static PointSet whole(double L, bool closed);
    static PointSet open_arc(double L, bool closed, double a, double b);
    // [a, b] with both end half-points that face the arc
    static PointSet closed_arc(double L, bool closed, double a, double b);

    double length() const { return L_; }
    bool closed() const { return closed_; }
    const std::vector<double>& breaks() const { return breaks_; }
    bool cell_in(size_t i) const { return cells_[i] != 0; }
    bool left_in(size_t i) const { return left_[i] != 0; }
    bool right_in(size_t i) const { return right_[i] != 0; }

    // Insert breakpoints without changing the set.
    PointSet refined(const std::vector<double>& pts) const;

    void set_cell(size_t i, bool in) { cells_[i] = in; }
    void set_point(size_t i, bool left, bool right);
    // Adds/removes a half-open range of cells covering (a, b) after refinement.
    void assign_open(double a, double b, bool in);
    void assign_half(double t, Side side, bool in);

    bool contains(double t, Side side) const;
    bool contains_point(double t) const;
    // (a, b) open, all interior breakpoints full
    bool contains_open(double a, double b) const;
    // [a^+, b^-]
    bool contains_closed(double a, double b) const;
    bool empty() const;
    double measure() const;

    PointSet unite(const PointSet& o) const;
    PointSet intersect(const PointSet& o) const;
    PointSet complement() const;

    std::vector<SetComponent> components() const;
    // Maximal open arcs of the interior, ignoring half-point decorations.
    std::vector<Arc> open_arcs() const;

    // Merge breakpoints that carry no information.
    PointSet simplified() const;

    bool operator==(const PointSet& o) const;

    size_t index_of(double t) const;  // breakpoint index or npos
    static constexpr size_t npos = static_cast<size_t>(-1);

private:
    void normalize_ends();
    double tol() const;

    double L_ = 0.0;
    bool closed_ = false;
    std::vector<double> breaks_;
    std::vector<char> cells_, left_, right_;
};

}  // namespace sobcurve
