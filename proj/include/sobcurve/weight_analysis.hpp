#pragma once

#include <string>
#include <vector>

#include "sobcurve/measure.hpp"
#include "sobcurve/point_set.hpp"

namespace sobcurve {

enum class Tri { no, yes, unknown };
std::string to_string(Tri t);

struct BpResult {
    Tri verdict = Tri::unknown;
    std::string reason;
};

// w in B_p on the arc [a, b]: w^{-1} in L^{1/(p-1)} on every compact subarc
// (essential supremum for p = 1). Closed ends are part of the arc, open ends
// only need local integrability away from them.
BpResult bp_membership(const MeasureComponent& w, double a, double b, double p, const Curve& curve,
                       bool closed_left = true, bool closed_right = true);

// Local B_p on the one-sided neighbourhood of t.
Tri local_bp(const MeasureComponent& w, double t, Side side, double p, const Curve& curve);

// Right (side = right) or left j-regularity of t from the sufficient
// conditions: some w_i, i > j, is B_p on that side of t, or is bounded below
// by |s - t|^delta with delta < (i - j) p - 1.
Tri half_regular(const VectorialMeasure& mu, int j, double t, Side side);

struct MeasureAnalysis {
    std::vector<double> breaks;
    std::vector<PointSet> omega;    // Omega_j, j = 0..k
    std::vector<PointSet> regular;  // Omega^(j), j = 0..k (Omega^(k) empty)
    PointSet omega_union;           // Omega_1 u ... u Omega_k
    std::vector<std::string> warnings;
};

MeasureAnalysis analyze_measure(const VectorialMeasure& mu);
PointSet compute_omega(const VectorialMeasure& mu, int j);

struct Violation {
    int j = 0;
    double t = 0.0;
    std::string what;
};

struct AdmissibilityReport {
    bool admissible = true;
    bool strongly = true;
    std::vector<Violation> violations;
};

AdmissibilityReport admissibility(const VectorialMeasure& mu, const MeasureAnalysis& an);
AdmissibilityReport admissibility(const VectorialMeasure& mu);

// Open Omega_j arcs with the one-sided endpoint convention made explicit.
struct OmegaReport {
    std::vector<Arc> arcs;
    bool contains_start = false;  // open curves only
    bool contains_end = false;
};
OmegaReport omega_report(const PointSet& omega, const Curve& curve);

}  // namespace sobcurve
