#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sobcurve/piecewise.hpp"
#include "sobcurve/weight_analysis.hpp"

namespace sobcurve {

// Atom condition f^(order)(t) = 0, evaluated from inside the component.
struct ConstraintAtom {
    double t = 0.0;
    int order = 0;
    Side side = Side::right;  // the half-point of t that faces the component
    bool interior = false;
    double mass = 0.0;
    std::string source;       // "atom" or "tail"
};

struct KernelComponent {
    SetComponent arc;  // component of Omega_1 u ... u Omega_k
    double t0 = 0.0, t1 = 0.0;  // unwrapped parameter range
    int j_upper = 0;   // least m > 0 with Omega_m meeting the component
    int j_lower = 0;   // kernel elements are polynomials of degree < j_lower here
    cplx center{0.0, 0.0};
    double scale = 1.0;
    std::vector<int> counts;  // qualifying atoms of mu_m, -1 for infinite
    std::vector<ConstraintAtom> atoms;
};

struct PastingPoint {
    double t = 0.0;
    size_t left = 0, right = 0;  // component indices
    std::vector<int> orders;     // j with t in Omega^(j)
};

struct ComponentDecomposition {
    std::vector<KernelComponent> comps;
    std::vector<PastingPoint> betas;
    PointSet omega0;  // Omega^(0)
};

ComponentDecomposition decompose_components(const VectorialMeasure& mu, const MeasureAnalysis& an);
ComponentDecomposition decompose_components(const VectorialMeasure& mu);

struct KernelRow {
    std::vector<cplx> coeffs;
    std::string label;
};

struct KernelSystem {
    VectorialMeasure measure;  // restricted to the region
    PointSet region;
    MeasureAnalysis analysis;
    ComponentDecomposition dec;
    std::vector<size_t> offset;  // first unknown of each component
    size_t unknowns = 0;
    std::vector<KernelRow> rows;
};

// Throws std::invalid_argument when the region does not live on the measure's
// curve or misses Omega^(0) entirely while the measure has mass there.
KernelSystem assemble_kernel_system(const VectorialMeasure& mu, const PointSet& region);
KernelSystem assemble_kernel_system(const VectorialMeasure& mu);

struct KernelReport {
    int dim = 0;
    std::vector<PiecewisePolynomial> basis;
    std::vector<Eigen::VectorXcd> vectors;  // null vectors in the scaled basis
    std::vector<double> singular_values;
    double residual = 0.0;
    bool low_confidence = false;
    bool real = true;
};

KernelReport solve_kernel(const KernelSystem& sys, double p);
KernelReport solve_kernel(const VectorialMeasure& mu);

PiecewisePolynomial to_piecewise(const KernelSystem& sys, const Eigen::VectorXcd& x);

// Values of each basis element at j_lower distinct points of every component:
// two bases of the same space give matrices with equal column spans.
Eigen::MatrixXcd sample_basis(const KernelSystem& sys, const std::vector<PiecewisePolynomial>& basis);
// Largest relative residual of projecting the columns of A on span(B) and
// vice versa.
double span_residual(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

struct C0Report {
    Tri in_c0 = Tri::unknown;
    std::string justification;  // descriptive tag
    int kernel_dim = 0;
};

C0Report check_c0(const KernelSystem& sys, const KernelReport& ker);

// h in K with |h| = 0 and |z h| > 0.
struct Certificate {
    bool found = false;
    PiecewisePolynomial h;
    double norm_h = 0.0, norm_zh = 0.0, scale = 0.0;
};
Certificate unboundedness_certificate(const KernelSystem& sys, const KernelReport& ker);

}  // namespace sobcurve
