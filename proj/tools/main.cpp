// sobcurve: command-line front end for the Sobolev-on-curves library.
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "sobcurve/classifier.hpp"
#include "sobcurve/exact_kernel.hpp"
#include "sobcurve/kernel.hpp"
#include "sobcurve/measure_io.hpp"
#include "sobcurve/muckenhoupt.hpp"
#include "sobcurve/numerics.hpp"
#include "sobcurve/parallel.hpp"
#include "sobcurve/report_io.hpp"

#ifndef SOBCURVE_VERSION
#define SOBCURVE_VERSION "0.0.0"
#endif

using namespace sobcurve;

namespace {

struct Flags {
    std::string input, output, format = "json";
    double tol = -1.0;
    int N = 64, n_max = 20, depth = -1, levels = 12, j = 0;
    bool strict = false, exact = false;
    std::string side = "right";
    std::vector<double> region;
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

VectorialMeasure read_input(const Flags& f) {
    std::ifstream in(f.input);
    if (!in) throw InputError("cannot open " + f.input);
    std::stringstream ss;
    ss << in.rdbuf();
    json doc;
    try {
        doc = json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw InputError(f.input + ": " + e.what());
    }
    if (f.depth >= 0) {
        if (!doc.contains("family")) throw InputError("--depth needs a generator document");
        doc["depth"] = f.depth;
    }
    try {
        return parse_measure(doc);
    } catch (const std::exception& e) {
        throw InputError(f.input + ": " + e.what());
    }
}

void add_warnings(json& w, const std::vector<std::string>& v) {
    for (auto& s : v) w.push_back(s);
}

// Runs one command; returns the exit code.
int run(const std::string& cmd, const Flags& f) {
    auto start = std::chrono::steady_clock::now();
    json result, warnings = json::array();
    std::string csv;
    bool unknown = false;

    VectorialMeasure mu = read_input(f);
    if (f.format == "csv" && cmd != "zeros" && cmd != "verify-bound")
        throw InputError("--format csv is available for zeros and verify-bound only");

    if (cmd == "analyze") {
        result = analysis_payload(mu);
        for (auto& w : result["warnings"]) warnings.push_back(w);
    } else if (cmd == "kernel") {
        PointSet region = PointSet::whole(mu.length(), mu.closed());
        if (!f.region.empty()) {
            if (f.region.size() != 2) throw InputError("--region takes two parameters");
            region = PointSet::closed_arc(mu.length(), mu.closed(), f.region[0], f.region[1]);
        }
        KernelSystem sys;
        try {
            sys = assemble_kernel_system(mu, region);
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
        KernelReport rep = solve_kernel(sys, mu.p);
        C0Report c0 = check_c0(sys, rep);
        Certificate cert = unboundedness_certificate(sys, rep);
        ExactKernelReport ex;
        if (f.exact) ex = solve_kernel_exact(sys);
        result = kernel_payload(sys, rep, c0, cert, f.exact ? &ex : nullptr);
        add_warnings(warnings, sys.analysis.warnings);
        if (rep.low_confidence) warnings.push_back("kernel dimension is low-confidence");
        unknown = c0.in_c0 == Tri::unknown;
    } else if (cmd == "classify") {
        Classification cls = classify(mu);
        result = classify_payload(mu, cls, esd(mu));
        add_warnings(warnings, cls.analysis.warnings);
        unknown = cls.a.undecided;
    } else if (cmd == "verdict") {
        BoundednessVerdict v = boundedness_verdict(mu);
        result = verdict_payload(v);
        add_warnings(warnings, v.classes.analysis.warnings);
        if (v.low_confidence) warnings.push_back("kernel dimension is low-confidence");
        if (v.verdict == "unknown") {
            warnings.push_back("verdict unknown: no criterion applies");
            unknown = true;
        }
    } else if (cmd == "orthopoly" || cmd == "zeros" || cmd == "verify-bound") {
        if (mu.p != 2.0) throw InputError("orthogonal polynomials need p = 2");
        try {
            if (cmd == "orthopoly") {
                result = orthopoly_payload(arnoldi(mu, f.N), f.N);
            } else {
                MultOpReport rep = verify_zero_bound(mu, f.n_max, f.N, f.tol >= 0 ? f.tol : 0.05);
                result = cmd == "zeros" ? zeros_payload(rep) : bound_payload(rep);
                csv = cmd == "zeros" ? zeros_csv(rep) : sigma_csv(rep);
                if (cmd == "verify-bound" && !rep.bound_ok) warnings.push_back("zero bound violated");
            }
        } catch (const GramSingular& e) {
            json null_vec = json::array();
            for (auto c : e.null_coeffs) null_vec.push_back(to_json(c));
            result = {{"gramSingular", true}, {"degree", e.degree}, {"nullCoeffs", null_vec}};
            warnings.push_back(e.what());
            unknown = true;
        }
    } else if (cmd == "muckenhoupt") {
        if (f.j < 0 || f.j >= mu.k) throw InputError("--j must lie in [0, k)");
        MuckenhouptOptions opt;
        opt.max_depth = f.levels;
        opt.min_depth = std::min(opt.min_depth, f.levels);
        if (f.tol >= 0) opt.rel_tol = f.tol;
        double z0 = f.region.empty() ? 0.0 : f.region.at(0);
        double z1 = f.region.empty() ? mu.length() : f.region.at(1);
        Side side = f.side == "left" ? Side::left : Side::right;
        MuckenhouptResult r = muckenhoupt(mu.comp(f.j), mu.comp(f.j + 1), z0, z1, mu.p, side, opt);
        result = muckenhoupt_payload(r, f.j, side, z0, z1);
        if (!r.infinite && !r.converged) {
            warnings.push_back("refinement did not converge");
            unknown = true;
        }
    }

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string text;
    if (f.format == "csv") {
        text = csv;
    } else {
        json env = {{"command", cmd},
                    {"input", f.input},
                    {"version", SOBCURVE_VERSION},
                    {"wall_time", wall},
                    {"result", result},
                    {"warnings", warnings}};
        text = env.dump(2) + "\n";
    }
    if (f.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(f.output);
        if (!out) throw InputError("cannot write " + f.output);
        out << text;
    }
    return unknown && f.strict ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    configure_threads();
    CLI::App app{"Weighted Sobolev spaces on curves: regularity sets, kernels, boundedness, orthogonal polynomials"};
    app.require_subcommand(1);
    Flags f;
    const std::vector<std::pair<std::string, std::string>> cmds = {
        {"analyze", "Omega_j, regular sets and admissibility"},
        {"kernel", "kernel of the Sobolev seminorm"},
        {"classify", "type A/B/C and ESD classification"},
        {"verdict", "boundedness of multiplication by z"},
        {"orthopoly", "Sobolev orthogonal polynomials up to degree N + 1 (p = 2)"},
        {"zeros", "zeros of q_1 .. q_{n-max}"},
        {"verify-bound", "zeros against sigma_max of the N x N multiplication matrix"},
        {"muckenhoupt", "Muckenhoupt constant of (mu_j, mu_{j+1})"}};
    for (auto& [name, help] : cmds) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("input", f.input, "measure JSON document")->required()->check(CLI::ExistingFile);
        sub->add_option("-o,--output", f.output, "output path (stdout when omitted)");
        sub->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--tol", f.tol, "zero-bound slack (verify-bound, zeros) or relative tolerance (muckenhoupt)")
            ->check(CLI::Range(0.0, 1.0));
        sub->add_option("--N", f.N, "truncation size of the multiplication matrix")->check(CLI::Range(1, 512));
        sub->add_option("--n-max", f.n_max, "largest degree whose zeros are reported")->check(CLI::Range(1, 512));
        sub->add_option("--depth", f.depth, "truncation depth of a generator document")->check(CLI::Range(0, 30));
        sub->add_option("--levels", f.levels, "dyadic refinement levels (muckenhoupt)")->check(CLI::Range(1, 24));
        sub->add_option("--j", f.j, "lower component index (muckenhoupt)");
        sub->add_option("--side", f.side, "right or left (muckenhoupt)")->check(CLI::IsMember({"right", "left"}));
        sub->add_option("--region", f.region, "parameter interval t0 t1 (kernel, muckenhoupt)")->expected(2);
        sub->add_flag("--exact", f.exact, "also run the rational solver (kernel)");
        sub->add_flag("--strict", f.strict, "exit 2 on unknown outcomes");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    try {
        return run(app.get_subcommands().front()->get_name(), f);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
