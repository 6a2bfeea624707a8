#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sobcurve/measure.hpp"
#include "sobcurve/weight_analysis.hpp"

namespace sobcurve {

struct MuckenhouptOptions {
    int max_depth = 12;
    int min_depth = 3;
    double rel_tol = 1e-6;
    // count mass sitting exactly at the base point z0 (as if at z0^+)
    bool include_base = false;
    bool parallel = true;
};

struct MuckenhouptResult {
    double value = 0.0;
    bool infinite = false;
    bool converged = false;
    double witness = 0.0;
    std::string certificate;                         // set when infinite
    std::vector<std::pair<int, double>> history;     // (grid size, value)
};

// Lambda^+ (side = right) or Lambda^- (side = left) of (mu_a, nu) on [z0, z1]:
//   sup_{z0<z<z1} mu_a((z0, z]) || (dnu/ds)^{-1} ||_{L^{1/(p-1)}([z, z1])}
// and its mirror image. Only the absolutely continuous part of nu is used.
MuckenhouptResult muckenhoupt(const MeasureComponent& mu_a, const MeasureComponent& nu, double z0, double z1, double p,
                              Side side, const MuckenhouptOptions& opt = {});

// Per-cell integrals of (dnu/ds)^{-1/(p-1)} (or 1/ess inf for p = 1) on the
// given grid; +inf marks a non-integrable cell. Serial and OpenMP variants
// produce identical output.
std::vector<double> inverse_weight_cells(const MeasureComponent& nu, const std::vector<double>& grid, double p);
std::vector<double> inverse_weight_cells_serial(const MeasureComponent& nu, const std::vector<double>& grid, double p);

struct ConsistencyResult {
    Tri consistent = Tri::unknown;
    double value = 0.0;
    std::string basis;  // "zero", "monotone", "power", "numeric"
};

// Right (side = right) or left consistency of w on [a, b]: Lambda^{+/-}(w, w) finite.
ConsistencyResult consistency(const MeasureComponent& w, double a, double b, double p, Side side);

// Pointwise sum of two components (pieces become sum forms where both are nonzero).
MeasureComponent add_components(const MeasureComponent& a, const MeasureComponent& b, double L);

struct CompletionCheck {
    bool ok = true;
    int failing_j = -1;
    std::string reason;
    std::vector<double> lambdas;  // index j
};

// Checks that tilde[j] (j = 0..k-1) is a right (side = right) or left
// completion of mu on the arc [z0, z1], top-down from j = k - 1.
CompletionCheck verify_completion(const VectorialMeasure& mu, const std::vector<MeasureComponent>& tilde, double z0,
                                  double z1, Side side);

}  // namespace sobcurve
