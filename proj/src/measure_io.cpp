#include "sobcurve/measure_io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sobcurve {

namespace {

double parse_plain(const std::string& s) {
    const char* begin = s.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    if (end == begin || *end != '\0') throw MeasureError("malformed number '" + s + "'");
    return v;
}

cplx parse_complex(const json& j) {
    if (j.is_array()) {
        if (j.size() != 2) throw MeasureError("complex number must be [re, im]");
        return {parse_number(j[0]), parse_number(j[1])};
    }
    if (j.is_object()) return {parse_number(j.at("re")), parse_number(j.value("im", json(0.0)))};
    return {parse_number(j), 0.0};
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json number_json(double v, const std::string& exact) {
    if (!exact.empty()) return exact;
    return v;
}

Evaluator parse_evaluator(const json& j) {
    Evaluator e;
    if (j.is_number() || j.is_string()) {
        e.coeffs = {parse_number(j)};
        return e;
    }
    if (j.contains("poly")) {
        for (auto& c : j.at("poly")) e.coeffs.push_back(parse_number(c));
        if (e.coeffs.empty()) e.coeffs = {0.0};
        return e;
    }
    if (j.contains("table")) {
        e.kind = Evaluator::Kind::table;
        for (auto& row : j.at("table")) {
            if (!row.is_array() || row.size() != 2) throw MeasureError("table rows must be [t, value]");
            e.table.push_back({parse_number(row[0]), parse_number(row[1])});
        }
        for (size_t i = 1; i < e.table.size(); ++i)
            if (!(e.table[i].first > e.table[i - 1].first)) throw MeasureError("table nodes must increase");
        if (e.table.empty()) throw MeasureError("empty table");
        return e;
    }
    throw MeasureError("evaluator needs 'poly' or 'table'");
}

json evaluator_json(const Evaluator& e) {
    if (e.kind == Evaluator::Kind::polynomial) return json{{"poly", e.coeffs}};
    json rows = json::array();
    for (auto& r : e.table) rows.push_back(json::array({r.first, r.second}));
    return json{{"table", rows}};
}

WeightForm parse_form(const json& j, const Arc& arc) {
    std::string type = j.at("type").get<std::string>();
    if (type == "zero") return {ZeroForm{}};
    if (type == "power") {
        PowerForm p;
        p.c = j.contains("c") ? parse_number(j["c"]) : 1.0;
        p.alpha0 = j.contains("alpha_left") ? parse_number(j["alpha_left"]) : 0.0;
        p.alpha1 = j.contains("alpha_right") ? parse_number(j["alpha_right"]) : 0.0;
        p.anchor0 = j.contains("anchor_left") ? parse_number(j["anchor_left"]) : arc.t0;
        p.anchor1 = j.contains("anchor_right") ? parse_number(j["anchor_right"]) : arc.t1;
        if (j.contains("smooth")) p.smooth = parse_evaluator(j["smooth"]);
        return {p};
    }
    if (type == "monotone") {
        MonotoneForm m;
        m.eval = parse_evaluator(j.at("evaluator"));
        std::string dir = j.value("direction", std::string("nondecreasing"));
        if (dir == "nondecreasing") m.direction = Monotone::nondecreasing;
        else if (dir == "nonincreasing") m.direction = Monotone::nonincreasing;
        else throw MeasureError("direction must be nondecreasing or nonincreasing");
        m.comparable = j.value("comparable", false);
        return {m};
    }
    if (type == "general") return {GeneralForm{parse_evaluator(j.at("evaluator"))}};
    if (type == "sum") {
        SumForm s;
        for (auto& t : j.at("terms")) s.terms.push_back(parse_form(t, arc));
        return {s};
    }
    throw MeasureError("unknown weight form '" + type + "'");
}

json form_json(const WeightForm& f, const Arc& arc) {
    if (std::holds_alternative<ZeroForm>(f.v)) return json{{"type", "zero"}};
    if (auto* p = std::get_if<PowerForm>(&f.v)) {
        json j{{"type", "power"}, {"c", p->c}, {"alpha_left", p->alpha0}, {"alpha_right", p->alpha1}};
        if (p->anchor0 != arc.t0) j["anchor_left"] = p->anchor0;
        if (p->anchor1 != arc.t1) j["anchor_right"] = p->anchor1;
        if (p->smooth) j["smooth"] = evaluator_json(*p->smooth);
        return j;
    }
    if (auto* m = std::get_if<MonotoneForm>(&f.v))
        return json{{"type", "monotone"},
                    {"evaluator", evaluator_json(m->eval)},
                    {"direction", m->direction == Monotone::nondecreasing ? "nondecreasing" : "nonincreasing"},
                    {"comparable", m->comparable}};
    if (auto* g = std::get_if<GeneralForm>(&f.v)) return json{{"type", "general"}, {"evaluator", evaluator_json(g->eval)}};
    json terms = json::array();
    for (auto& t : std::get<SumForm>(f.v).terms) terms.push_back(form_json(t, arc));
    return json{{"type", "sum"}, {"terms", terms}};
}

}  // namespace

double parse_number(const json& j, std::string* exact) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (exact) *exact = s;
        auto slash = s.find('/');
        if (slash == std::string::npos) return parse_plain(s);
        double num = parse_plain(s.substr(0, slash)), den = parse_plain(s.substr(slash + 1));
        if (den == 0.0) throw MeasureError("zero denominator in '" + s + "'");
        return num / den;
    }
    throw MeasureError("expected a number, got " + j.dump());
}

Curve curve_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    const json& p = j.contains("params") ? j.at("params") : j;
    if (kind == "segment") return Curve::segment(parse_complex(p.at("a")), parse_complex(p.at("b")));
    if (kind == "circle_arc")
        return Curve::circle_arc(parse_complex(p.value("center", json(0.0))), parse_number(p.at("radius")),
                                 parse_number(p.at("theta0")), parse_number(p.at("theta1")));
    if (kind == "full_circle")
        return Curve::full_circle(parse_complex(p.value("center", json(0.0))), parse_number(p.value("radius", json(1.0))));
    if (kind == "polyline") {
        std::vector<cplx> v;
        for (auto& z : p.at("vertices")) v.push_back(parse_complex(z));
        return Curve::polyline(v);
    }
    throw MeasureError("unknown curve kind '" + kind + "'");
}

json curve_to_json(const Curve& c) {
    json params;
    switch (c.kind()) {
        case CurveKind::segment:
            params = {{"a", complex_to_json(c.a())}, {"b", complex_to_json(c.b())}};
            break;
        case CurveKind::circle_arc:
            params = {{"center", complex_to_json(c.center())},
                      {"radius", c.radius()},
                      {"theta0", c.theta0()},
                      {"theta1", c.theta1()}};
            break;
        case CurveKind::full_circle:
            params = {{"center", complex_to_json(c.center())}, {"radius", c.radius()}};
            break;
        case CurveKind::polyline: {
            json v = json::array();
            for (auto& z : c.vertices()) v.push_back(complex_to_json(z));
            params = {{"vertices", v}};
            break;
        }
    }
    return json{{"kind", to_string(c.kind())}, {"params", params}};
}

VectorialMeasure parse_measure(const json& doc) {
    if (!doc.is_object()) throw MeasureError("measure document must be a JSON object");
    if (doc.contains("family") && doc["family"].is_string()) {
        std::string fam = doc["family"].get<std::string>();
        if (fam != "dyadic_counterexample") throw MeasureError("unknown family '" + fam + "'");
        int depth = doc.value("depth", 2);
        if (depth < 0 || depth > 30) throw MeasureError("depth must be in [0, 30]");
        double p = doc.contains("p") ? parse_number(doc["p"]) : 2.0;
        std::string tail = doc.value("tail", std::string("closed"));
        if (tail != "closed" && tail != "open") throw MeasureError("tail must be open or closed");
        return dyadic_counterexample(depth, p, tail == "closed");
    }
    VectorialMeasure mu;
    mu.curve = curve_from_json(doc.at("curve"));
    mu.p = parse_number(doc.at("p"));
    if (!(mu.p >= 1.0)) throw MeasureError("p must be >= 1");
    mu.k = doc.at("k").get<int>();
    if (mu.k < 0) throw MeasureError("k must be >= 0");
    mu.components.resize(static_cast<size_t>(mu.k + 1));
    for (int j = 0; j <= mu.k; ++j) mu.components[j].j = j;
    std::vector<bool> seen(mu.components.size(), false);
    for (auto& cj : doc.value("components", json::array())) {
        int j = cj.at("j").get<int>();
        if (j < 0 || j > mu.k) throw MeasureError("component index out of range");
        if (seen[j]) throw MeasureError("duplicate component " + std::to_string(j));
        seen[j] = true;
        MeasureComponent& c = mu.components[j];
        for (auto& pj : cj.value("pieces", json::array())) {
            WeightPiece piece;
            auto& arc = pj.at("arc");
            if (!arc.is_array() || arc.size() != 2) throw MeasureError("arc must be [t0, t1]");
            piece.arc.t0 = parse_number(arc[0], &piece.exact_t0);
            piece.arc.t1 = parse_number(arc[1], &piece.exact_t1);
            piece.form = parse_form(pj.at("form"), piece.arc);
            c.pieces.push_back(piece);
        }
        for (auto& aj : cj.value("atoms", json::array())) {
            Atom a;
            a.t = parse_number(aj.at("t"), &a.exact_t);
            a.mass = parse_number(aj.at("mass"), &a.exact_mass);
            c.atoms.push_back(a);
        }
    }
    for (auto& tj : doc.value("tails", json::array())) {
        TailConstraint t;
        t.t = parse_number(tj.at("t"));
        t.order = tj.value("order", 0);
        std::string side = tj.value("side", std::string("left"));
        t.side = side == "right" ? Side::right : Side::left;
        mu.tails.push_back(t);
    }
    if (doc.contains("family_info")) {
        auto& f = doc["family_info"];
        FamilyInfo fi;
        fi.name = f.value("name", std::string());
        fi.depth = f.value("depth", 0);
        fi.infinite = f.value("infinite", false);
        fi.tail = f.value("tail", std::string());
        mu.family = fi;
    }
    mu.validate();
    return mu;
}

VectorialMeasure parse_measure_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw MeasureError(std::string("malformed JSON: ") + e.what());
    }
    try {
        return parse_measure(doc);
    } catch (const json::exception& e) {
        throw MeasureError(std::string("bad measure document: ") + e.what());
    }
}

VectorialMeasure load_measure(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MeasureError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_measure_text(ss.str());
}

json serialize_measure(const VectorialMeasure& mu) {
    json doc;
    doc["curve"] = curve_to_json(mu.curve);
    doc["p"] = mu.p;
    doc["k"] = mu.k;
    json comps = json::array();
    for (auto& c : mu.components) {
        json pieces = json::array();
        for (auto& pc : c.pieces)
            pieces.push_back({{"arc", json::array({number_json(pc.arc.t0, pc.exact_t0), number_json(pc.arc.t1, pc.exact_t1)})},
                              {"form", form_json(pc.form, pc.arc)}});
        json atoms = json::array();
        for (auto& a : c.atoms) atoms.push_back({{"t", number_json(a.t, a.exact_t)}, {"mass", number_json(a.mass, a.exact_mass)}});
        comps.push_back({{"j", c.j}, {"pieces", pieces}, {"atoms", atoms}});
    }
    doc["components"] = comps;
    if (!mu.tails.empty()) {
        json tails = json::array();
        for (auto& t : mu.tails)
            tails.push_back({{"t", t.t}, {"order", t.order}, {"side", t.side == Side::left ? "left" : "right"}});
        doc["tails"] = tails;
    }
    if (mu.family)
        doc["family_info"] = {{"name", mu.family->name},
                              {"depth", mu.family->depth},
                              {"infinite", mu.family->infinite},
                              {"tail", mu.family->tail}};
    return doc;
}

VectorialMeasure dyadic_counterexample(int depth, double p, bool closed_tail) {
    if (depth < 0) throw MeasureError("depth must be >= 0");
    if (!(p >= 1.0)) throw MeasureError("p must be >= 1");
    VectorialMeasure mu;
    mu.curve = Curve::segment({0, 0}, {1, 0});
    mu.p = p;
    mu.k = 3;
    mu.components.resize(4);
    for (int j = 0; j < 4; ++j) mu.components[j].j = j;
    for (int m = depth; m >= 0; --m) {
        double mass = std::ldexp(1.0, -m);
        mu.components[0].atoms.push_back({std::ldexp(1.0, -2 * m - 1), mass, "", ""});
        mu.components[1].atoms.push_back({3.0 * std::ldexp(1.0, -2 * m - 2), mass, "", ""});
    }
    double e = 2.0 * p - 1.0;
    double start = std::ldexp(1.0, -2 * depth - 2);
    auto& w3 = mu.components[3].pieces;
    w3.push_back({{0.0, start}, {ZeroForm{}}, "", ""});
    for (int m = depth; m >= 0; --m) {
        double a = std::ldexp(1.0, -2 * m - 2), b = std::ldexp(1.0, -2 * m);
        PowerForm pw;
        pw.c = 1.0;
        pw.anchor0 = a;
        pw.alpha0 = e;
        pw.anchor1 = b;
        pw.alpha1 = e;
        w3.push_back({{a, b}, {pw}, "", ""});
    }
    if (closed_tail) mu.tails.push_back({start, 0, Side::left});
    mu.family = FamilyInfo{"dyadic_counterexample", depth, true, closed_tail ? "closed" : "open"};
    mu.validate();
    return mu;
}

}  // namespace sobcurve
