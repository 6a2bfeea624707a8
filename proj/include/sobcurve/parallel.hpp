#pragma once

namespace sobcurve {

// Caps the OpenMP team size at SOBOLEV_CURVE_THREADS when that variable holds
// a positive integer. Returns the resulting thread limit.
int configure_threads();

}  // namespace sobcurve
