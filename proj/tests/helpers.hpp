#pragma once

#include <string>

#include "sobcurve/measure_io.hpp"

#ifndef SOBCURVE_DATA_DIR
#define SOBCURVE_DATA_DIR "data"
#endif

namespace testing {

inline std::string data_path(const std::string& name) { return std::string(SOBCURVE_DATA_DIR) + "/" + name; }

inline sobcurve::VectorialMeasure corpus(const std::string& name) {
    return sobcurve::load_measure(data_path(name + ".json"));
}

// Measure on the segment [a, b] of the real axis from a components array.
inline sobcurve::VectorialMeasure on_segment(double a, double b, int k, const std::string& components, double p = 2.0) {
    std::string doc = R"({"curve": {"kind": "segment", "params": {"a": [)" + std::to_string(a) + R"(, 0], "b": [)" +
                      std::to_string(b) + R"(, 0]}}, "p": )" + std::to_string(p) + R"(, "k": )" + std::to_string(k) +
                      R"(, "components": )" + components + "}";
    return sobcurve::parse_measure_text(doc);
}

}  // namespace testing
