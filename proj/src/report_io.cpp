#include "sobcurve/report_io.hpp"

#include <cmath>
#include <sstream>

#include "sobcurve/measure_io.hpp"

namespace sobcurve {

json num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

json to_json(cplx z) { return json::array({num(z.real()), num(z.imag())}); }

json to_json(const PointSet& s) {
    json arr = json::array();
    for (auto& c : s.components())
        arr.push_back({{"t0", num(c.t0)},
                       {"t1", num(c.t1)},
                       {"hasLeft", c.has_left},
                       {"hasRight", c.has_right},
                       {"wraps", c.wraps},
                       {"whole", c.whole}});
    return arr;
}

json to_json(const PiecewisePolynomial& f) {
    json arr = json::array();
    for (auto& p : f.parts) {
        json co = json::array();
        for (auto c : p.coeffs) co.push_back(to_json(c));
        arr.push_back({{"t0", num(p.t0)}, {"t1", num(p.t1)}, {"center", to_json(p.center)}, {"scale", num(p.scale)},
                       {"coeffs", co}});
    }
    return arr;
}

namespace {

json strings(const std::vector<std::string>& v) {
    json a = json::array();
    for (auto& s : v) a.push_back(s);
    return a;
}

json zero_list(const std::vector<cplx>& z) {
    json a = json::array();
    for (auto v : z) a.push_back(to_json(v));
    return a;
}

json history(const std::vector<std::pair<int, double>>& h) {
    json a = json::array();
    for (auto [n, v] : h) a.push_back(json::array({n, num(v)}));
    return a;
}

}  // namespace

json analysis_payload(const VectorialMeasure& mu) {
    MeasureAnalysis an = analyze_measure(mu);
    AdmissibilityReport adm = admissibility(mu, an);
    json omega = json::array(), regular = json::array();
    for (int j = 0; j <= mu.k; ++j) {
        OmegaReport r = omega_report(an.omega[j], mu.curve);
        json arcs = json::array();
        for (auto& a : r.arcs) arcs.push_back(json::array({num(a.t0), num(a.t1)}));
        omega.push_back({{"j", j}, {"arcs", arcs}, {"set", to_json(an.omega[j])}});
        regular.push_back({{"j", j}, {"set", to_json(an.regular[j])}});
    }
    json viol = json::array();
    for (auto& v : adm.violations) viol.push_back({{"j", v.j}, {"t", num(v.t)}, {"what", v.what}});
    json breaks = json::array();
    for (double b : an.breaks) breaks.push_back(num(b));
    return {{"curve", curve_to_json(mu.curve)},
            {"p", num(mu.p)},
            {"k", mu.k},
            {"length", num(mu.length())},
            {"breaks", breaks},
            {"omega", omega},
            {"regular", regular},
            {"omegaUnion", to_json(an.omega_union)},
            {"admissible", adm.admissible},
            {"stronglyAdmissible", adm.strongly},
            {"violations", viol},
            {"warnings", strings(an.warnings)}};
}

json kernel_payload(const KernelSystem& sys, const KernelReport& rep, const C0Report& c0, const Certificate& cert,
                    const ExactKernelReport* exact) {
    json comps = json::array();
    for (auto& c : sys.dec.comps) {
        json atoms = json::array();
        for (auto& a : c.atoms)
            atoms.push_back({{"t", num(a.t)}, {"order", a.order}, {"side", a.side == Side::left ? "left" : "right"},
                             {"source", a.source}});
        comps.push_back({{"t0", num(c.t0)}, {"t1", num(c.t1)}, {"jUpper", c.j_upper}, {"jLower", c.j_lower},
                         {"constraints", atoms}});
    }
    json basis = json::array();
    for (auto& b : rep.basis) basis.push_back(to_json(b));
    json sv = json::array();
    for (double s : rep.singular_values) sv.push_back(num(s));
    json rows = json::array();
    for (auto& r : sys.rows) rows.push_back(r.label);
    json out = {{"dim", rep.dim},
                {"basis", basis},
                {"components", comps},
                {"rows", rows},
                {"unknowns", sys.unknowns},
                {"singularValues", sv},
                {"residual", num(rep.residual)},
                {"lowConfidence", rep.low_confidence},
                {"real", rep.real},
                {"c0", {{"inC0", to_string(c0.in_c0)}, {"justification", c0.justification}}}};
    if (rep.dim > 0)
        out["certificate"] = {{"found", cert.found},
                              {"h", to_json(cert.h)},
                              {"normH", num(cert.norm_h)},
                              {"normZH", num(cert.norm_zh)},
                              {"scale", num(cert.scale)}};
    if (exact != nullptr) {
        json e = {{"supported", exact->supported}, {"reason", exact->reason}};
        if (exact->supported) {
            e["dim"] = exact->dim;
            e["rank"] = exact->rank;
        }
        out["exact"] = e;
    }
    return out;
}

json classify_payload(const VectorialMeasure& mu, const Classification& cls, const EsdReport& e) {
    json arcs = json::array();
    for (auto& a : cls.a.arcs)
        arcs.push_back({{"a", num(a.a)}, {"b", num(a.b)}, {"k1", a.k1}, {"k2", a.k2}, {"rule", a.rule}});
    json part = json::array();
    for (double t : cls.a.partition) part.push_back(num(t));
    auto labels = [](const std::vector<EndLabel>& v) {
        json a = json::array();
        for (auto& l : v) a.push_back({{"j", l.j}, {"label", l.label}, {"exponent", num(l.exponent)}});
        return a;
    };
    json c = {{"isType", cls.c.is_type}, {"failures", strings(cls.c.failures)}};
    if (!mu.closed()) {
        c["a2"] = num(cls.c.a2);
        c["a3"] = num(cls.c.a3);
        c["start"] = labels(cls.c.start);
        c["end"] = labels(cls.c.end);
    }
    return {{"admissible", cls.admissibility.admissible},
            {"stronglyAdmissible", cls.admissibility.strongly},
            {"typeA",
             {{"isType", cls.a.is_type},
              {"partition", part},
              {"arcs", arcs},
              {"undecided", cls.a.undecided},
              {"failures", strings(cls.a.failures)}}},
            {"typeB",
             {{"isType", cls.b.is_type},
              {"absolutelyContinuous", cls.b.absolutely_continuous},
              {"evidence", strings(cls.b.evidence)},
              {"failures", strings(cls.b.failures)}}},
            {"typeC", c},
            {"esd", {{"isEsd", e.is_esd}, {"c", num(e.c)}, {"notes", strings(e.notes)}}}};
}

json verdict_payload(const BoundednessVerdict& v) {
    json out = {{"verdict", v.verdict},
                {"theorem", v.theorem},
                {"supporting", strings(v.supporting)},
                {"kernelDim", v.kernel_dim},
                {"lowConfidence", v.low_confidence},
                {"types",
                 {{"A", v.classes.a.is_type}, {"B", v.classes.b.is_type}, {"C", v.classes.c.is_type}}},
                {"notes", strings(v.notes)}};
    if (v.verdict == "unbounded" && v.kernel_dim > 0)
        out["certificate"] = {{"found", v.certificate.found},
                              {"h", to_json(v.certificate.h)},
                              {"normH", num(v.certificate.norm_h)},
                              {"normZH", num(v.certificate.norm_zh)},
                              {"scale", num(v.certificate.scale)}};
    return out;
}

json orthopoly_payload(const ArnoldiResult& ar, int N) {
    json polys = json::array();
    for (int n = 0; n <= N; ++n) {
        json co = json::array();
        for (int i = 0; i <= n; ++i) co.push_back(to_json(ar.basis.C(i, n)));
        polys.push_back({{"degree", n}, {"coeffs", co}});
    }
    json rec = json::array();
    for (int n = 0; n <= N; ++n) {
        json col = json::array();
        for (int m = 0; m <= n + 1; ++m) col.push_back(to_json(ar.H(m, n)));
        rec.push_back(col);
    }
    return {{"basis", ar.basis.basis.name()},
            {"center", to_json(ar.basis.basis.center)},
            {"scale", to_json(ar.basis.basis.scale)},
            {"N", N},
            {"polynomials", polys},
            {"hessenbergColumns", rec}};
}

json zeros_payload(const MultOpReport& rep) {
    json z = json::array();
    for (size_t n = 0; n < rep.zeros.size(); ++n) z.push_back({{"degree", n + 1}, {"zeros", zero_list(rep.zeros[n])}});
    return {{"N", rep.N}, {"zeros", z}, {"maxZero", num(rep.max_zero)}, {"zeroCrosscheck", num(rep.zero_crosscheck)}};
}

json bound_payload(const MultOpReport& rep) {
    return {{"N", rep.N},
            {"nMax", rep.zeros.size()},
            {"sigmaMax", num(rep.sigma_max)},
            {"sigmaHistory", history(rep.sigma_history)},
            {"maxZero", num(rep.max_zero)},
            {"factor", num(1.0 + rep.tol)},
            {"bound_ok", rep.bound_ok},
            {"orthoResidual", num(rep.ortho_residual)},
            {"zeroCrosscheck", num(rep.zero_crosscheck)}};
}

json muckenhoupt_payload(const MuckenhouptResult& r, int j, Side side, double z0, double z1) {
    return {{"j", j},
            {"side", side == Side::right ? "right" : "left"},
            {"z0", num(z0)},
            {"z1", num(z1)},
            {"value", num(r.infinite ? INFINITY : r.value)},
            {"infinite", r.infinite},
            {"converged", r.converged},
            {"witness", num(r.witness)},
            {"certificate", r.certificate},
            {"history", history(r.history)}};
}

std::string zeros_csv(const MultOpReport& rep) {
    std::ostringstream os;
    os.precision(17);
    os << "degree,re,im\n";
    for (size_t n = 0; n < rep.zeros.size(); ++n)
        for (auto z : rep.zeros[n]) os << n + 1 << ',' << z.real() << ',' << z.imag() << '\n';
    return os.str();
}

std::string sigma_csv(const MultOpReport& rep) {
    std::ostringstream os;
    os.precision(17);
    os << "N,sigma_max\n";
    for (auto [n, s] : rep.sigma_history) os << n << ',' << s << '\n';
    return os.str();
}

}  // namespace sobcurve
