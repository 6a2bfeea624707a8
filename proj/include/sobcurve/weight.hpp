#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sobcurve/curve.hpp"

namespace sobcurve {

// Scalar function of the global arc-length parameter: a polynomial in t or a
// piecewise-linear table.
struct Evaluator {
    enum class Kind { polynomial, table };
    Kind kind = Kind::polynomial;
    std::vector<double> coeffs;                      // c0 + c1 t + ...
    std::vector<std::pair<double, double>> table;   // sorted (t, value)

    double operator()(double t) const;
    Evaluator reflected(double L) const;  // t -> L - t
    Evaluator scaled(double c) const;
    std::vector<double> kinks() const;    // table nodes
    bool operator==(const Evaluator&) const = default;

    static Evaluator constant(double c) { return Evaluator{Kind::polynomial, {c}, {}}; }
};

struct ZeroForm {
    bool operator==(const ZeroForm&) const = default;
};

// c |t - anchor0|^alpha0 |anchor1 - t|^alpha1 smooth(t). The anchors default to
// the piece ends and survive restriction to sub-arcs.
struct PowerForm {
    double c = 1.0;
    double anchor0 = 0.0, alpha0 = 0.0;
    double anchor1 = 0.0, alpha1 = 0.0;
    std::optional<Evaluator> smooth;
    bool operator==(const PowerForm&) const = default;
};

enum class Monotone { nondecreasing, nonincreasing };

struct MonotoneForm {
    Evaluator eval;
    Monotone direction = Monotone::nondecreasing;
    bool comparable = false;  // only comparable to a monotone function
    bool operator==(const MonotoneForm&) const = default;
};

struct GeneralForm {
    Evaluator eval;
    bool operator==(const GeneralForm&) const = default;
};

struct WeightForm;
struct SumForm {
    std::vector<WeightForm> terms;
    bool operator==(const SumForm&) const;
};

struct WeightForm {
    std::variant<ZeroForm, PowerForm, MonotoneForm, GeneralForm, SumForm> v;
    bool operator==(const WeightForm& o) const { return v == o.v; }

    bool is_zero() const;
    bool has_general() const;
    double value(double t) const;
};

struct WeightPiece {
    Arc arc;
    WeightForm form;
    std::string exact_t0, exact_t1;  // optional decimal/rational spellings
    bool operator==(const WeightPiece&) const = default;
};

// Summands of a (possibly nested) sum form.
std::vector<const WeightForm*> flatten_terms(const WeightForm& f);

// Behaviour of a weight on a one-sided neighbourhood of a point.
//   zero:    w = 0 a.e. nearby
//   power:   w ~ |s - t|^exponent (exponent 0: bounded above and below)
//   numeric: w -> 0 at an unknown rate, decided by probing
enum class LocalKind { zero, power, numeric };
struct LocalBehaviour {
    LocalKind kind = LocalKind::zero;
    double exponent = 0.0;
};

// t must lie in the closure of the piece and `side` must point into it.
LocalBehaviour local_behaviour(const WeightPiece& piece, double t, Side side);

enum class CellSign { zero, positive, unknown };
// Sign of the weight on the open sub-arc (a, b) of the piece.
CellSign cell_sign(const WeightPiece& piece, double a, double b);

// Points inside the piece where the local structure changes (monotone
// thresholds, table kinks, midpoints of power pieces vanishing at both ends).
std::vector<double> structural_points(const WeightPiece& piece);
// Points where a monotone piece switches between zero and positive values.
std::vector<double> zero_thresholds(const WeightPiece& piece);

WeightForm reflect_form(const WeightForm& f, double L);
WeightForm scale_form(const WeightForm& f, double c);

// Comparable to a nondecreasing (right) or nonincreasing (left) function on
// the sub-arc [a, b] of the piece, from annotations alone.
bool comparable_nondecreasing(const WeightPiece& piece, double a, double b);
bool comparable_nonincreasing(const WeightPiece& piece, double a, double b);

}  // namespace sobcurve
