#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sobcurve/curve.hpp"
#include "sobcurve/point_set.hpp"
#include "sobcurve/weight.hpp"

namespace sobcurve {

class MeasureError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Atom {
    double t = 0.0;
    double mass = 0.0;
    std::string exact_t, exact_mass;
    bool operator==(const Atom&) const = default;
};

// One scalar measure w ds + sum of atoms. Pieces tile [0, L]; an empty piece
// list means w = 0.
struct MeasureComponent {
    int j = 0;
    std::vector<WeightPiece> pieces;
    std::vector<Atom> atoms;

    bool operator==(const MeasureComponent&) const = default;

    double weight_at(double t) const;
    // Piece whose closure contains t on the given side, or nullptr.
    const WeightPiece* piece_at(double t, Side side) const;
    bool ac_zero() const;
    double atom_mass() const;
};

// Kernel condition contributed by the part of an infinite family that was cut
// off: f^(order)(t) = 0 from the side opposite to `side`, where `side` is the
// side of t on which the omitted mass lives.
struct TailConstraint {
    double t = 0.0;
    int order = 0;
    Side side = Side::left;
    bool operator==(const TailConstraint&) const = default;
};

struct FamilyInfo {
    std::string name;
    int depth = 0;
    bool infinite = false;  // finite truncation of an infinite family
    std::string tail;       // "open" or "closed"
    bool operator==(const FamilyInfo&) const = default;
};

struct VectorialMeasure {
    Curve curve = Curve::segment({0, 0}, {1, 0});
    double p = 2.0;
    int k = 0;
    std::vector<MeasureComponent> components;  // index j = 0..k
    std::vector<TailConstraint> tails;
    std::optional<FamilyInfo> family;

    bool operator==(const VectorialMeasure&) const = default;

    const MeasureComponent& comp(int j) const { return components.at(static_cast<size_t>(j)); }
    double length() const { return curve.length(); }
    bool closed() const { return curve.closed(); }

    // All piece boundaries, atoms, structural points and curve ends.
    std::vector<double> breakpoints() const;
    void validate() const;
};

// int_a f(t) w(t) dt over the absolutely continuous part of one component.
double integrate_weight(const MeasureComponent& c, double a, double b, const std::function<double(double)>& f,
                        double tol = 1e-10);
double ac_mass(const MeasureComponent& c, double a, double b);
double total_mass(const MeasureComponent& c, double L);

// Absolutely continuous part on Omega and the remainder mu* (atoms and weight
// off Omega), both returned as components on the same curve.
struct Decomposition {
    MeasureComponent ac_on_omega;
    MeasureComponent star;
    double ac_mass = 0.0;
    double star_mass = 0.0;
};
Decomposition decompose(const MeasureComponent& c, const PointSet& omega, double L);

// Keep weights and atoms inside the region, zero elsewhere.
MeasureComponent restrict_component(const MeasureComponent& c, const PointSet& region);
VectorialMeasure restrict_measure(const VectorialMeasure& mu, const PointSet& region);

// Orientation reversal (open curves) and positive scaling.
VectorialMeasure reverse_measure(const VectorialMeasure& mu);
VectorialMeasure scale_measure(const VectorialMeasure& mu, double c);

// Pieces of the component cut at the given sorted points.
std::vector<WeightPiece> refine_pieces(const MeasureComponent& c, const std::vector<double>& pts, double L);

}  // namespace sobcurve
