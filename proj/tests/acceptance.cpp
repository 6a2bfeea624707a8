// Acceptance checks: one PASS/FAIL line per criterion. `acceptance N` runs
// only criterion N.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "helpers.hpp"
#include "sobcurve/classifier.hpp"
#include "sobcurve/exact_kernel.hpp"
#include "sobcurve/kernel.hpp"
#include "sobcurve/muckenhoupt.hpp"
#include "sobcurve/numerics.hpp"

using namespace sobcurve;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void fail(const std::string& why) {
        if (pass) detail.str("");
        if (!pass) detail << "; ";
        pass = false;
        detail << why;
    }
};

std::vector<std::string> corpus_names() {
    std::vector<std::string> out;
    for (auto& e : std::filesystem::directory_iterator(SOBCURVE_DATA_DIR))
        if (e.path().extension() == ".json") out.push_back(e.path().stem().string());
    std::sort(out.begin(), out.end());
    return out;
}

// Relative residual of projecting the columns of a onto span(b).
double projection_residual(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(b);
    Eigen::MatrixXcd r = a - b * qr.solve(a);
    return r.norm() / std::max(a.norm(), 1e-300);
}

PolyPart part(double t0, double t1, std::vector<cplx> c) {
    PolyPart p;
    p.t0 = t0;
    p.t1 = t1;
    p.coeffs = std::move(c);
    return p;
}

// ---------------------------------------------------------------------------

void kernel_golden(Outcome& o) {
    auto t0 = Clock::now();
    VectorialMeasure mu = testing::corpus("heuristic_example");
    KernelSystem sys = assemble_kernel_system(mu);
    KernelReport rep = solve_kernel(sys, mu.p);
    double dt = seconds_since(t0);
    PiecewisePolynomial x, x2;
    x.parts = {part(0, 1, {0.0, 1.0}), part(1, 2, {0.0, 1.0})};  // t = x + 1
    x2.parts = {part(1, 2, {0.0, 0.0, 1.0})};
    double res = rep.dim > 0 ? span_residual(sample_basis(sys, rep.basis), sample_basis(sys, {x, x2})) : INFINITY;
    o.detail << "dim=" << rep.dim << " span_residual=" << res << " time=" << dt << "s";
    if (rep.dim != 2) o.fail("dim " + std::to_string(rep.dim) + " != 2");
    if (!(res < 1e-8)) o.fail("span residual " + std::to_string(res));
    if (!(dt < 1.0)) o.fail("runtime " + std::to_string(dt) + "s");
}

void dyadic(Outcome& o) {
    // g1 = (x - 1/4)(x - 1/8) on [1/16, 1/4]
    PiecewisePolynomial g1;
    g1.parts = {part(1.0 / 16, 0.25, {1.0 / 32, -3.0 / 8, 1.0})};
    double worst = 0.0;
    for (int d = 1; d <= 4; ++d) {
        VectorialMeasure mu = dyadic_counterexample(d);
        PointSet m1 = PointSet::closed_arc(1.0, false, 1.0 / 16, 1.0);
        KernelSystem sys = assemble_kernel_system(mu, m1);
        KernelReport rep = solve_kernel(sys, mu.p);
        double res = rep.dim > 0 ? projection_residual(sample_basis(sys, {g1}), sample_basis(sys, rep.basis)) : 1.0;
        worst = std::max(worst, res);
        if (!(res < 1e-8)) o.fail("depth " + std::to_string(d) + ": g1 not in the restricted kernel (" + std::to_string(res) + ")");
        int full = solve_kernel(mu).dim;
        if (full != 0) o.fail("depth " + std::to_string(d) + ": full kernel dim " + std::to_string(full));
    }
    if (o.pass) o.detail << "depths 1..4: g1 projection residual <= " << worst << ", full-curve dim 0";
}

// Random k = 1 measure on [0, 1] whose regularity structure is known by construction.
struct RandomK1 {
    VectorialMeasure mu;
    int expected_dim = 0;
};

RandomK1 random_k1(std::mt19937_64& rng) {
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<uint64_t>(n)); };
    double p = pick(2) == 0 ? 2.0 : 3.0;
    int npieces = 1 + pick(5);
    std::vector<int> cut;
    while (static_cast<int>(cut.size()) < npieces - 1) {
        int c = 1 + pick(15);
        if (std::find(cut.begin(), cut.end(), c) == cut.end()) cut.push_back(c);
    }
    std::sort(cut.begin(), cut.end());
    std::vector<double> br = {0.0};
    for (int c : cut) br.push_back(c / 16.0);
    br.push_back(1.0);

    struct Piece {
        double a, b;
        bool positive, bp_left, bp_right, mass0;
        std::string w1, w0;
    };
    std::vector<Piece> pieces;
    const double exps[3] = {0.5 * (p - 1), p - 1, p};
    for (int i = 0; i < npieces; ++i) {
        Piece pc{br[i], br[i + 1], true, true, true, false, "", ""};
        std::string arc = "[" + std::to_string(pc.a) + ", " + std::to_string(pc.b) + "]";
        int kind = pick(6);
        if (kind == 0) {
            pc.positive = pc.bp_left = pc.bp_right = false;
            pc.w1 = R"({"arc": )" + arc + R"(, "form": {"type": "zero"}})";
        } else if (kind == 1) {
            pc.w1 = R"({"arc": )" + arc + R"(, "form": {"type": "power", "c": )" + std::to_string(0.5 + pick(3)) + "}}";
        } else if (kind == 2 || kind == 3) {
            double e = exps[pick(3)];
            bool left = kind == 2;
            (left ? pc.bp_left : pc.bp_right) = e < p - 1;
            pc.w1 = R"({"arc": )" + arc + R"(, "form": {"type": "power", ")" + (left ? "alpha_left" : "alpha_right") +
                    R"(": )" + std::to_string(e) + "}}";
        } else {
            // c |t - end| + d, monotone; a linear zero is B_p iff 1 < p - 1
            double c = 1.0 + pick(2), d = pick(2) == 0 ? 0.0 : 0.5;
            bool up = kind == 4;
            bool ok = d > 0.0 || 1.0 < p - 1;
            (up ? pc.bp_left : pc.bp_right) = ok;
            double c0 = up ? d - c * pc.a : d + c * pc.b, c1 = up ? c : -c;
            pc.w1 = R"({"arc": )" + arc + R"(, "form": {"type": "monotone", "direction": ")" +
                    (up ? "nondecreasing" : "nonincreasing") + R"(", "evaluator": {"poly": [)" + std::to_string(c0) +
                    ", " + std::to_string(c1) + "]}}}";
        }
        pc.mass0 = pick(10) < 3;
        pc.w0 = R"({"arc": )" + arc + R"(, "form": )" +
                (pc.mass0 ? std::string(R"({"type": "power", "c": 1})") : std::string(R"({"type": "zero"})")) + "}";
        pieces.push_back(pc);
    }
    std::vector<int> atom_pos;
    int natoms = pick(4);
    while (static_cast<int>(atom_pos.size()) < natoms) {
        int a = pick(17);
        if (std::find(atom_pos.begin(), atom_pos.end(), a) == atom_pos.end()) atom_pos.push_back(a);
    }
    std::sort(atom_pos.begin(), atom_pos.end());

    std::string w0 = "[", w1 = "[", atoms = "[";
    for (int i = 0; i < npieces; ++i) {
        w0 += (i ? ", " : "") + pieces[i].w0;
        w1 += (i ? ", " : "") + pieces[i].w1;
    }
    for (size_t i = 0; i < atom_pos.size(); ++i)
        atoms += (i ? ", " : "") + std::string(R"({"t": )") + std::to_string(atom_pos[i] / 16.0) + R"(, "mass": 1})";
    std::string comps = R"([{"j": 0, "pieces": )" + w0 + "], \"atoms\": " + atoms + R"(]}, {"j": 1, "pieces": )" + w1 + "]}]";
    RandomK1 out;
    out.mu = testing::on_segment(0, 1, 1, comps, p);

    // Oracle: components of the regular set as runs of positive pieces glued
    // at breakpoints regular from both sides; a component needs mu_0 mass
    // (a.c. on a piece, an interior atom, or an atom on an included end half).
    struct Run {
        double a, b;
        bool left_in, right_in, mass;
    };
    std::vector<Run> runs;
    for (int i = 0; i < npieces; ++i) {
        const Piece& pc = pieces[i];
        if (!pc.positive) continue;
        bool glue = !runs.empty() && runs.back().b == pc.a && runs.back().right_in && pc.bp_left;
        if (glue) {
            runs.back().b = pc.b;
            runs.back().right_in = pc.bp_right;
            runs.back().mass = runs.back().mass || pc.mass0;
        } else {
            runs.push_back({pc.a, pc.b, pc.bp_left, pc.bp_right, pc.mass0});
        }
    }
    for (auto& r : runs) {
        for (int a : atom_pos) {
            double t = a / 16.0;
            if ((t > r.a && t < r.b) || (t == r.a && r.left_in) || (t == r.b && r.right_in)) r.mass = true;
        }
        if (!r.mass) ++out.expected_dim;
    }
    return out;
}

void first_order(Outcome& o) {
    std::mt19937_64 rng(20261017);
    int agree = 0, exact_agree = 0, nonzero = 0;
    for (int i = 0; i < 100; ++i) {
        RandomK1 r = random_k1(rng);
        KernelSystem sys = assemble_kernel_system(r.mu);
        KernelReport rep = solve_kernel(sys, r.mu.p);
        ExactKernelReport ex = solve_kernel_exact(sys);
        if (r.expected_dim > 0) ++nonzero;
        if (rep.dim == r.expected_dim) ++agree;
        else if (o.pass || o.detail.str().size() < 400)
            o.fail("case " + std::to_string(i) + ": dim " + std::to_string(rep.dim) + " expected " +
                   std::to_string(r.expected_dim));
        if (ex.supported && ex.dim == r.expected_dim) ++exact_agree;
        else if (o.pass || o.detail.str().size() < 400)
            o.fail("case " + std::to_string(i) + ": rational dim " + std::to_string(ex.dim) +
                   (ex.supported ? "" : " (unsupported: " + ex.reason + ")"));
    }
    if (o.pass)
        o.detail << "100/100 float and rational dims match the component count (" << nonzero << " with nonzero kernel)";
    else
        o.detail << " [float " << agree << "/100, rational " << exact_agree << "/100]";
}

// Piecewise polynomial on [0, 1] in monomials of x, one per cell.
struct PwPoly {
    std::vector<double> br;
    std::vector<std::vector<double>> c;
};

double poly_integral(const std::vector<double>& c, double a, double b) {
    double s = 0.0;
    for (size_t i = 0; i < c.size(); ++i) s += c[i] * (std::pow(b, i + 1) - std::pow(a, i + 1)) / (i + 1);
    return s;
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> r(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// ||int_x^1 g||_{L^2(dx)} / ||g||_{L^2(dx)}, exactly for piecewise polynomials
double hardy_ratio(const PwPoly& g) {
    size_t n = g.c.size();
    double num = 0.0, den = 0.0, tail = 0.0;
    for (size_t i = n; i-- > 0;) {
        double a = g.br[i], b = g.br[i + 1];
        // G(x) = tail + P(b) - P(x), P antiderivative of g_i
        std::vector<double> P(g.c[i].size() + 1, 0.0);
        for (size_t k = 0; k < g.c[i].size(); ++k) P[k + 1] = g.c[i][k] / (k + 1);
        double Pb = 0.0;
        for (size_t k = 0; k < P.size(); ++k) Pb += P[k] * std::pow(b, k);
        std::vector<double> G(P.size());
        for (size_t k = 0; k < P.size(); ++k) G[k] = -P[k];
        G[0] += tail + Pb;
        num += poly_integral(poly_mul(G, G), a, b);
        den += poly_integral(poly_mul(g.c[i], g.c[i]), a, b);
        tail += Pb - P[0];
        for (size_t k = 1; k < P.size(); ++k) tail -= P[k] * std::pow(a, k);
    }
    return std::sqrt(num / den);
}

void muckenhoupt_numerics(Outcome& o) {
    auto t0 = Clock::now();
    VectorialMeasure leb = testing::on_segment(
        0, 1, 1, R"([{"j": 0, "pieces": [{"arc": [0, 1], "form": {"type": "power"}}]}, {"j": 1, "pieces": [{"arc": [0, 1], "form": {"type": "power", "alpha_left": 3}}]}])");
    MuckenhouptOptions opt;
    opt.max_depth = 12;
    opt.min_depth = 12;
    MuckenhouptResult fin = muckenhoupt(leb.comp(0), leb.comp(0), 0, 1, 2.0, Side::right, opt);
    if (!(std::abs(fin.value - 0.25) <= 1e-4)) o.fail("Lambda(Lebesgue, Lebesgue) = " + std::to_string(fin.value));
    MuckenhouptResult inf = muckenhoupt(leb.comp(0), leb.comp(1), 0, 1, 2.0, Side::right);
    if (!inf.infinite || inf.certificate.empty()) o.fail("x^3 weight not certified infinite");

    // Hardy inequality with C = p^(1/p) p'^(1/p') Lambda^(1/p)
    const double p = 2.0, q = p / (p - 1);
    const double C = std::pow(p, 1 / p) * std::pow(q, 1 / q) * std::pow(fin.value, 1 / p);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        PwPoly g;
        int cells = 1 + static_cast<int>(rng() % 6);
        g.br = {0.0};
        for (int i = 1; i < cells; ++i) g.br.push_back(0.0);
        for (int i = 1; i < cells; ++i) g.br[i] = 0.5 * (U(rng) + 1.0);
        g.br.push_back(1.0);
        std::sort(g.br.begin(), g.br.end());
        for (int i = 0; i < cells; ++i) {
            std::vector<double> c(1 + rng() % 5);
            for (auto& v : c) v = U(rng);
            g.c.push_back(c);
        }
        double r = hardy_ratio(g);
        if (std::isfinite(r)) worst = std::max(worst, r);
        if (r > C * (1 + 1e-12)) o.fail("Hardy ratio " + std::to_string(r) + " > " + std::to_string(C));
    }
    // extremal family for the divergent pair: g = x^-3 on [eps, 1]
    //   ||int_x^1 g||^2 = int_0^1 ((max(x, eps)^-2 - 1) / 2)^2 dx,  ||g||^2_{x^3} = int_eps^1 x^-3
    double eps = 1e-8;
    double num = eps * std::pow((1 / (eps * eps) - 1) / 2, 2) +
                 0.25 * ((1 / (3 * eps * eps * eps) - 1.0 / 3) - 2 * (1 / eps - 1) + (1 - eps));
    double den = (1 / (eps * eps) - 1) / 2;
    double div_ratio = std::sqrt(num / den);
    if (!(div_ratio > 1e3)) o.fail("divergent ratio only " + std::to_string(div_ratio));
    double dt = seconds_since(t0);
    if (!(dt < 5.0)) o.fail("runtime " + std::to_string(dt) + "s");
    if (o.pass)
        o.detail << "Lambda=" << fin.value << " (history " << fin.history.size() << " levels), x^3: " << inf.certificate
                 << "; Hardy worst ratio " << worst << " <= C=" << C << "; divergent ratio " << div_ratio
                 << "; time=" << dt << "s";
}

VectorialMeasure lebesgue_segment() {
    return testing::on_segment(-1, 1, 0, R"([{"j": 0, "pieces": [{"arc": [0, 2], "form": {"type": "power"}}]}])");
}

void legendre(Outcome& o) {
    MultOpReport r = verify_zero_bound(lebesgue_segment(), 20, 64);
    const double s = std::sqrt(0.6);
    const std::vector<double> expect = {-s, 0.0, s};
    double zerr = 0.0;
    for (int i = 0; i < 3; ++i) zerr = std::max(zerr, std::abs(r.zeros[2][i] - expect[i]));
    if (!(zerr < 1e-8)) o.fail("q3 zero error " + std::to_string(zerr));
    if (!(r.sigma_max >= 0.995 && r.sigma_max <= 1.0 + 1e-10)) o.fail("sigma_max " + std::to_string(r.sigma_max));
    double worst_im = 0.0, worst_re = 0.0;
    for (auto& zs : r.zeros)
        for (auto z : zs) {
            worst_im = std::max(worst_im, std::abs(z.imag()));
            worst_re = std::max(worst_re, std::abs(z.real()));
        }
    if (!(worst_im < 1e-10 && worst_re <= 1.0)) o.fail("zeros leave [-1, 1]");
    if (o.pass)
        o.detail << "q3 zero error " << zerr << ", sigma_max(M64)=" << r.sigma_max << ", max |Re z|=" << worst_re
                 << ", max |Im z|=" << worst_im;
}

void zero_containment(Outcome& o) {
    auto t0 = Clock::now();
    int used = 0;
    double worst = 0.0;
    for (auto& name : corpus_names()) {
        VectorialMeasure mu = testing::corpus(name);
        CurveKind kind = mu.curve.kind();
        if (mu.p != 2.0 || mu.k > 3 || !(kind == CurveKind::segment || kind == CurveKind::full_circle)) continue;
        if (boundedness_verdict(mu).verdict != "bounded") continue;
        ++used;
        try {
            MultOpReport r = verify_zero_bound(mu, 20, 64);
            for (auto& zs : r.zeros)
                for (auto z : zs) {
                    worst = std::max(worst, std::abs(z) / r.sigma_max);
                    if (std::abs(z) > r.sigma_max * 1.05) {
                        o.fail(name + ": |z|=" + std::to_string(std::abs(z)) + " > 1.05 sigma_max");
                        break;
                    }
                }
        } catch (const GramSingular& e) {
            o.fail(name + ": " + e.what());
        }
    }
    double dt = seconds_since(t0);
    if (used < 10) o.fail("only " + std::to_string(used) + " bounded measures");
    if (!(dt < 60.0)) o.fail("runtime " + std::to_string(dt) + "s");
    if (o.pass) o.detail << used << " bounded measures, max |z|/sigma_max = " << worst << ", time=" << dt << "s";
}

void certificates(Outcome& o) {
    int n = 0;
    for (auto& name : corpus_names()) {
        VectorialMeasure mu = testing::corpus(name);
        KernelSystem sys = assemble_kernel_system(mu);
        KernelReport rep = solve_kernel(sys, mu.p);
        if (rep.dim == 0) continue;
        ++n;
        Certificate c = unboundedness_certificate(sys, rep);
        // recompute both norms on the unrestricted measure
        double nh = sobolev_norm(mu, c.h, PointSet::whole(mu.length(), mu.closed()), mu.p);
        double nzh = sobolev_norm(mu, c.h.times_z(), PointSet::whole(mu.length(), mu.closed()), mu.p);
        if (!c.found || !(nh < 1e-8 * c.scale) || !(nzh > 1e-6 * c.scale))
            o.fail(name + ": |h|=" + std::to_string(nh) + " |zh|=" + std::to_string(nzh) + " scale=" + std::to_string(c.scale));
    }
    if (n == 0) o.fail("no corpus measure with a nonzero kernel");
    if (o.pass) o.detail << n << " measures with nonzero kernel, all certified";
}

void implications(Outcome& o) {
    int b_count = 0, c_count = 0, inv = 0;
    for (auto& name : corpus_names()) {
        VectorialMeasure mu = testing::corpus(name);
        BoundednessVerdict v = boundedness_verdict(mu);
        if (v.classes.b.is_type) {
            ++b_count;
            if (!v.classes.a.is_type) o.fail(name + ": type B but not type A");
        }
        if (v.classes.c.is_type && mu.k >= 1 && ac_mass(mu.comp(1), 0.0, mu.length()) > 0.0) {
            ++c_count;
            bool mass0 = total_mass(mu.comp(0), mu.length()) > 0.0;
            if ((v.verdict == "bounded") != mass0) o.fail(name + ": verdict " + v.verdict + " with mu_0 mass " + (mass0 ? ">0" : "=0"));
        }
        for (double c : {0.5, 3.0}) {
            ++inv;
            if (boundedness_verdict(scale_measure(mu, c)).verdict != v.verdict) o.fail(name + ": scaling changes the verdict");
        }
        if (!mu.closed()) {
            ++inv;
            if (boundedness_verdict(reverse_measure(mu)).verdict != v.verdict) o.fail(name + ": reversal changes the verdict");
        }
    }
    if (o.pass)
        o.detail << b_count << " type B members all type A; " << c_count << " type C members with int w1 > 0 consistent; "
                 << inv << " invariance checks";
}

void rational_oracle(Outcome& o) {
    int n = 0;
    double worst = 0.0;
    for (auto& name : corpus_names()) {
        VectorialMeasure mu = testing::corpus(name);
        if (mu.curve.kind() != CurveKind::segment) continue;
        KernelSystem sys = assemble_kernel_system(mu);
        int jmax = 0;
        for (auto& c : sys.dec.comps) jmax = std::max(jmax, c.j_lower);
        if (sys.dec.comps.size() > 3 || jmax > 3) continue;
        ++n;
        KernelReport rep = solve_kernel(sys, mu.p);
        ExactKernelReport ex = solve_kernel_exact(sys);
        if (!ex.supported) {
            o.fail(name + ": rational solver unsupported (" + ex.reason + ")");
            continue;
        }
        if (ex.dim != rep.dim) o.fail(name + ": dims " + std::to_string(rep.dim) + " vs " + std::to_string(ex.dim));
        else if (rep.dim > 0) {
            double r = span_residual(sample_basis(sys, rep.basis), sample_basis(sys, ex.basis));
            worst = std::max(worst, r);
            if (!(r < 1e-8)) o.fail(name + ": span residual " + std::to_string(r));
        }
    }
    if (o.pass) o.detail << n << " segment measures, dims equal, worst span residual " << worst;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
        {"kernel_golden", kernel_golden},
        {"dyadic_counterexample", dyadic},
        {"first_order_kernel_count", first_order},
        {"muckenhoupt_numerics", muckenhoupt_numerics},
        {"legendre_reduction", legendre},
        {"zero_containment", zero_containment},
        {"unboundedness_certificate", certificates},
        {"implication_suite", implications},
        {"rational_oracle", rational_oracle}};
    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        if (only != 0 && only != static_cast<int>(i + 1)) continue;
        Outcome o;
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::printf("criterion %zu %-26s %s  %s\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                    o.detail.str().c_str());
        if (!o.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
