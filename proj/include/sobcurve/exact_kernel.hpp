#pragma once

#include <string>
#include <vector>

#include "sobcurve/kernel.hpp"

namespace sobcurve {

// Null space of the kernel system in exact rational arithmetic. Supported for
// segments on the real axis; coordinates come from the exact spellings in the
// measure document when present, otherwise from the binary value of each
// double (which is itself rational).
struct ExactKernelReport {
    bool supported = false;
    std::string reason;
    int dim = 0;
    int rank = 0;
    std::vector<PiecewisePolynomial> basis;  // monomial basis (z - center)^i per component
};

ExactKernelReport solve_kernel_exact(const KernelSystem& sys);

}  // namespace sobcurve
