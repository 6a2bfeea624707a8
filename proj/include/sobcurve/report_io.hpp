#pragma once

#include <string>

#include "json.hpp"

#include "sobcurve/classifier.hpp"
#include "sobcurve/exact_kernel.hpp"
#include "sobcurve/kernel.hpp"
#include "sobcurve/muckenhoupt.hpp"
#include "sobcurve/numerics.hpp"

namespace sobcurve {

using json = nlohmann::json;

// Non-finite doubles become the strings "inf", "-inf", "nan".
json num(double x);
json to_json(cplx z);  // [re, im]
json to_json(const PointSet& s);
json to_json(const PiecewisePolynomial& f);

json analysis_payload(const VectorialMeasure& mu);
json kernel_payload(const KernelSystem& sys, const KernelReport& rep, const C0Report& c0, const Certificate& cert,
                    const ExactKernelReport* exact);
json classify_payload(const VectorialMeasure& mu, const Classification& cls, const EsdReport& e);
json verdict_payload(const BoundednessVerdict& v);
json orthopoly_payload(const ArnoldiResult& ar, int N);
json zeros_payload(const MultOpReport& rep);
json bound_payload(const MultOpReport& rep);
json muckenhoupt_payload(const MuckenhouptResult& r, int j, Side side, double z0, double z1);

// Plot-ready tables: "degree,re,im" rows and "N,sigma_max" rows.
std::string zeros_csv(const MultOpReport& rep);
std::string sigma_csv(const MultOpReport& rep);

}  // namespace sobcurve
