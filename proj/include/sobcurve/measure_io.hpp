#pragma once

#include "json.hpp"
#include <string>

#include "sobcurve/measure.hpp"

namespace sobcurve {

using json = nlohmann::json;

// Reads the measure document, or a generator block
// {"family": "dyadic_counterexample", "depth": d, "p": p, "tail": "closed"|"open"}.
VectorialMeasure parse_measure(const json& doc);
VectorialMeasure parse_measure_text(const std::string& text);
VectorialMeasure load_measure(const std::string& path);

json serialize_measure(const VectorialMeasure& mu);

json curve_to_json(const Curve& c);
Curve curve_from_json(const json& j);

// Number given as JSON number or as a decimal / "a/b" string.
double parse_number(const json& j, std::string* exact = nullptr);

// Truncation at depth d of the three-level counterexample on [0, 1]:
//   mu0 = sum 2^-m delta(2^(-2m-1)), mu1 = sum 2^-m delta(3 2^(-2m-2)), mu2 = 0,
//   w3 = (2^(-2m) - x)^(2p-1) (x - 2^(-2m-2))^(2p-1) on each [2^(-2m-2), 2^(-2m)], m <= d.
// With closed_tail the pasting that the omitted bumps would impose at
// 2^(-2d-2) is kept as a tail constraint.
VectorialMeasure dyadic_counterexample(int depth, double p = 2.0, bool closed_tail = true);

}  // namespace sobcurve
