#pragma once

#include <string>
#include <vector>

#include "sobcurve/kernel.hpp"
#include "sobcurve/muckenhoupt.hpp"

namespace sobcurve {

struct ArcCase {
    double a = 0.0, b = 0.0;
    int k1 = 0, k2 = 0;
    std::string rule;  // "1", "2", "3", "4", "5", "5'", "5''"
};

struct TypeAReport {
    bool is_type = false;
    std::vector<double> partition;
    std::vector<ArcCase> arcs;
    std::vector<std::string> failures;
    bool undecided = false;  // some consistency test was inconclusive
};

struct TypeBReport {
    bool is_type = false;
    bool absolutely_continuous = false;  // no atoms in mu_1..mu_k
    std::vector<std::string> evidence;
    std::vector<std::string> failures;
};

struct EndLabel {
    int j = 0;
    std::string label;  // "2.1".."2.4" or "3.1".."3.4"
    double exponent = 0.0;
};

struct TypeCReport {
    bool is_type = false;
    double a2 = 0.0, a3 = 0.0;
    std::vector<EndLabel> start, end;
    std::vector<std::string> failures;
};

struct EsdReport {
    bool is_esd = false;
    double c = 0.0;  // +inf when no constant works
    VectorialMeasure closure;
    std::vector<std::string> notes;
};

struct Classification {
    MeasureAnalysis analysis;
    AdmissibilityReport admissibility;
    TypeAReport a;
    TypeBReport b;
    TypeCReport c;
};

TypeAReport classify_type_a(const VectorialMeasure& mu, const MeasureAnalysis& an, const AdmissibilityReport& adm);
TypeBReport classify_type_b(const VectorialMeasure& mu, const AdmissibilityReport& adm);
TypeCReport classify_type_c(const VectorialMeasure& mu, const AdmissibilityReport& adm);
Classification classify(const VectorialMeasure& mu);

EsdReport esd(const VectorialMeasure& mu);
// mu_j' = mu_j + ... + mu_k
VectorialMeasure esd_closure(const VectorialMeasure& mu);

struct BoundednessVerdict {
    std::string verdict;  // "bounded", "unbounded", "unknown"
    std::string theorem;  // descriptive tag, empty when unknown
    std::vector<std::string> supporting;
    int kernel_dim = 0;
    bool low_confidence = false;
    std::vector<std::string> notes;
    Classification classes;
    Certificate certificate;  // when unbounded
};

BoundednessVerdict boundedness_verdict(const VectorialMeasure& mu);

}  // namespace sobcurve
