#include "sobcurve/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include <omp.h>

namespace sobcurve {

int configure_threads() {
    const char* env = std::getenv("SOBOLEV_CURVE_THREADS");
    if (env != nullptr) {
        try {
            int n = std::stoi(env);
            if (n > 0) omp_set_num_threads(std::min(n, omp_get_num_procs()));
        } catch (const std::exception&) {
            // ignored: malformed values leave the default
        }
    }
    return omp_get_max_threads();
}

}  // namespace sobcurve
