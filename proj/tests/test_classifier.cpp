#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>

#include "helpers.hpp"
#include "sobcurve/classifier.hpp"

using namespace sobcurve;

namespace {

std::vector<std::string> corpus_names() {
    std::vector<std::string> out;
    for (auto& e : std::filesystem::directory_iterator(SOBCURVE_DATA_DIR))
        if (e.path().extension() == ".json") out.push_back(e.path().stem().string());
    std::sort(out.begin(), out.end());
    return out;
}

std::string power(double t0, double t1, double e) {
    return R"({"arc": [)" + std::to_string(t0) + ", " + std::to_string(t1) +
           R"(], "form": {"type": "power", "alpha_left": )" + std::to_string(e) + "}}";
}

}  // namespace

TEST_CASE("type B implies type A on the corpus") {
    for (auto& name : corpus_names()) {
        CAPTURE(name);
        Classification c = classify(testing::corpus(name));
        if (c.b.is_type) CHECK(c.a.is_type);
    }
}

TEST_CASE("verdicts are invariant under reversal and positive scaling") {
    for (auto& name : corpus_names()) {
        CAPTURE(name);
        VectorialMeasure mu = testing::corpus(name);
        std::string v = boundedness_verdict(mu).verdict;
        CHECK(boundedness_verdict(scale_measure(mu, 0.25)).verdict == v);
        CHECK(boundedness_verdict(scale_measure(mu, 4.0)).verdict == v);
        if (!mu.closed()) CHECK(boundedness_verdict(reverse_measure(mu)).verdict == v);
    }
}

TEST_CASE("verdicts of named corpus members") {
    BoundednessVerdict h = boundedness_verdict(testing::corpus("heuristic_example"));
    CHECK(h.verdict == "unbounded");
    CHECK(h.kernel_dim == 2);
    CHECK(h.certificate.found);
    CHECK(boundedness_verdict(testing::corpus("legendre_k0")).verdict == "bounded");
    CHECK(boundedness_verdict(testing::corpus("heuristic_three_deltas")).verdict == "bounded");
    // truncations of an infinite family are outside every finite criterion
    BoundednessVerdict d = boundedness_verdict(testing::corpus("dyadic_d3"));
    CHECK(d.verdict == "unknown");
    CHECK(d.theorem.empty());
}

TEST_CASE("type A arc cases of the corpus example") {
    VectorialMeasure mu = testing::corpus("heuristic_example");
    Classification c = classify(mu);
    REQUIRE(c.a.is_type);
    REQUIRE(c.a.arcs.size() == 2);
    CHECK(c.a.arcs[0].k2 == 2);
    CHECK(c.a.arcs[1].k2 == 3);
}

TEST_CASE("type C end labels follow the power exponent") {
    auto mk = [](double e, bool mass0) {
        std::string atoms = mass0 ? R"(, "atoms": [{"t": 0.5, "mass": 1}])" : "";
        return testing::on_segment(0, 1, 1,
                                   R"([{"j": 0, "pieces": [{"arc": [0, 1], "form": {"type": "zero"}}])" + atoms +
                                       R"(}, {"j": 1, "pieces": [)" + power(0, 1, e) + "]}]");
    };
    TypeCReport c = classify(mk(2.0, true)).c;
    REQUIRE(c.is_type);
    REQUIRE(c.start.size() == 1);
    CHECK(c.start[0].label == "2.4");
    CHECK(c.end[0].label == "3.2");
    // exponent p - 1 is the boundary label
    CHECK(classify(mk(1.0, true)).c.start[0].label == "2.3");
    CHECK(classify(mk(0.5, true)).c.start[0].label == "2.2");
    // the criterion: with int w1 > 0, bounded iff mu_0 has mass
    CHECK(boundedness_verdict(mk(2.0, true)).verdict == "bounded");
    CHECK(boundedness_verdict(mk(2.0, false)).verdict == "unbounded");
    // circles never qualify
    CHECK(!classify(testing::corpus("circle_k1")).c.is_type);
}

TEST_CASE("non-admissible measures are not classified") {
    VectorialMeasure top = testing::on_segment(
        0, 1, 1, R"([{"j": 0, "pieces": [)" + power(0, 1, 0) + R"(]}, {"j": 1, "pieces": [)" + power(0, 1, 0) +
                     R"(], "atoms": [{"t": 0.5, "mass": 1}]}])");
    Classification c = classify(top);
    CHECK(!c.admissibility.admissible);
    CHECK(!c.a.is_type);
    CHECK(!c.b.is_type);
    CHECK(boundedness_verdict(top).verdict != "bounded");
}

TEST_CASE("sequential domination") {
    EsdReport leg = esd(testing::corpus("legendre_k0"));
    CHECK(leg.is_esd);
    // w1 = x^2 dominated by w0 = 1 on [0, 1]
    VectorialMeasure dom = testing::on_segment(
        0, 1, 1, R"([{"j": 0, "pieces": [)" + power(0, 1, 0) + R"(]}, {"j": 1, "pieces": [)" + power(0, 1, 2) + "]}]");
    EsdReport e = esd(dom);
    CHECK(e.is_esd);
    CHECK(e.c == doctest::Approx(1.0).epsilon(1e-6));
    // w1 = 1 against w0 = x^2 blows up at 0
    VectorialMeasure not_dom = testing::on_segment(
        0, 1, 1, R"([{"j": 0, "pieces": [)" + power(0, 1, 2) + R"(]}, {"j": 1, "pieces": [)" + power(0, 1, 0) + "]}]");
    CHECK(!esd(not_dom).is_esd);
    CHECK(esd(esd_closure(not_dom)).is_esd);
    CHECK(esd(esd_closure(testing::corpus("heuristic_example"))).is_esd);
}
