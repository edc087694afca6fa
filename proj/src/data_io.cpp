// Curve files, the generator config and JSON report emission.

#include "tors5/data_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace tors5 {

using json = nlohmann::json;

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

bool is_integer(const std::string& s) {
    size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

BigInt parse_int(const std::string& s, const std::string& what, long line) {
    if (!is_integer(s)) throw InputError("bad " + what + " '" + s + "'", line);
    return BigInt(s[0] == '+' ? s.substr(1) : s);
}

// Parses one data row; throws InputError.
CurveRecord parse_row(const std::string& text, long line) {
    std::vector<std::string> f;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(trim(cell));
    if (!text.empty() && text.back() == ',') f.push_back("");
    if (f.size() != 7 && f.size() != 8)
        throw InputError("expected 7 or 8 comma-separated fields, got " + std::to_string(f.size()), line);
    CurveRecord r;
    r.line = line;
    r.label = f[0];
    if (r.label.empty()) throw InputError("empty label", line);
    BigInt N = parse_int(f[1], "conductor", line);
    if (sgn(N) <= 0 || !N.fits_slong_p()) throw InputError("conductor must be a positive integer", line);
    r.conductor = N.get_si();
    const char* names[5] = {"a1", "a2", "a3", "a4", "a6"};
    for (int i = 0; i < 5; ++i) r.a[i] = parse_int(f[2 + i], names[i], line);
    if (f.size() == 8 && !f[7].empty()) {
        BigInt t = parse_int(f[7], "torsion order", line);
        if (sgn(t) <= 0 || !t.fits_slong_p()) throw InputError("torsion order must be positive", line);
        r.torsion_order = t.get_si();
    }
    try {
        (void)r.curve();
    } catch (const MathError&) {
        throw InputError("singular curve " + r.label, line);
    }
    return r;
}

template <class OnError>
std::vector<CurveRecord> parse_stream(std::istream& in, OnError on_error) {
    std::vector<CurveRecord> out;
    std::set<std::string> labels;
    std::string text;
    long line = 0;
    while (std::getline(in, text)) {
        ++line;
        std::string t = trim(text);
        if (t.empty() || t[0] == '#' || t.rfind("label,", 0) == 0) continue;
        try {
            CurveRecord r = parse_row(t, line);
            if (!labels.insert(r.label).second) throw InputError("duplicate label " + r.label, line);
            out.push_back(std::move(r));
        } catch (const InputError& e) {
            on_error(e);
        }
    }
    return out;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return in;
}

json int_json(const BigInt& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

json rat_json(const BigRat& q) {
    if (q.get_den() == 1) return int_json(q.get_num());
    return q.get_str();
}

BigRat rat_from_json(const json& j) {
    if (j.is_number_integer()) return BigRat(j.get<long>());
    if (!j.is_string()) throw InputError("expected a rational");
    BigRat q;
    if (q.set_str(j.get<std::string>(), 10) != 0) throw InputError("bad rational " + j.get<std::string>());
    q.canonicalize();
    return q;
}

json poly_json(const PolyQ& f) {
    json a = json::array();
    for (const auto& c : f.coeffs()) a.push_back(rat_json(c));
    return a;
}

PolyQ poly_from_json(const json& j) {
    std::vector<BigRat> c;
    for (const auto& v : j) c.push_back(rat_from_json(v));
    return PolyQ(c);
}

json elem_json(const NFElem& e) {
    json a = json::array();
    for (const auto& c : e.coords()) a.push_back(rat_json(c));
    return a;
}

NFElem elem_from_json(const FieldPtr& K, const json& j) {
    std::vector<BigRat> c;
    for (const auto& v : j) c.push_back(rat_from_json(v));
    return NFElem(K, PolyQ(c));
}

}  // namespace

// ---------------------------------------------------------------- curves

std::vector<CurveRecord> parse_curves(std::istream& in) {
    return parse_stream(in, [](const InputError& e) { throw e; });
}

std::vector<CurveRecord> ingest_curves(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_curves(in);
}

LenientIngest parse_curves_lenient(std::istream& in) {
    LenientIngest out;
    out.records = parse_stream(in, [&](const InputError& e) { out.errors.push_back(e.what()); });
    return out;
}

LenientIngest ingest_curves_lenient(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_curves_lenient(in);
}

const CurveRecord* find_label(const std::vector<CurveRecord>& db, const std::string& label) {
    for (const auto& r : db)
        if (r.label == label) return &r;
    return nullptr;
}

// ---------------------------------------------------------------- generator config

GeneratorConfig parse_generator_config(const json& j) {
    GeneratorConfig cfg;
    try {
        cfg.action = j.value("action", "");
        for (const auto& g : j.at("groups")) {
            GeneratorEntry e;
            e.label = g.at("label").get<std::string>();
            e.modulus = g.at("modulus").get<int>();
            if (e.modulus < 2 || e.modulus > 255) throw InputError("modulus out of range for " + e.label);
            for (const auto& M : g.at("generators")) {
                MatZn m(e.modulus, M.at(0).at(0).get<long>(), M.at(0).at(1).get<long>(), M.at(1).at(0).get<long>(),
                        M.at(1).at(1).get<long>());
                if (!m.invertible()) throw InputError("non-invertible generator for " + e.label);
                e.generators.push_back(m);
            }
            e.alt_name = g.value("alt_name", "");
            if (g.contains("expected")) {
                const json& x = g.at("expected");
                e.has_expected = true;
                e.expected.d0 = x.at("d0").get<long>();
                e.expected.d = x.at("d").get<long>();
                for (const auto& v : x.at("dv")) e.expected.dv.insert(v.get<long>());
            }
            cfg.entries.push_back(std::move(e));
        }
        if (j.contains("cm_d1_mod11"))
            for (const auto& c : j.at("cm_d1_mod11")) cfg.cm_d1_mod11[c.at("label").get<std::string>()] = c.at("d1").get<long>();
    } catch (const json::exception& e) {
        throw InputError(std::string("generator config: ") + e.what());
    }
    cfg.report = table1(cfg.entries);
    cfg.convention = cfg.report.convention;
    cfg.validated = cfg.report.mismatches() == 0;
    return cfg;
}

GeneratorConfig load_generator_config(const std::string& path) {
    auto in = open_or_throw(path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
    return parse_generator_config(j);
}

const GeneratorEntry& find_entry(const GeneratorConfig& cfg, const std::string& label) {
    for (const auto& e : cfg.entries)
        if (e.label == label) return e;
    throw InputError("unknown group label " + label);
}

// ---------------------------------------------------------------- reports

json to_json(const TorsionGroup& g) { return json::array({g.m, g.n}); }

TorsionGroup torsion_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw InputError("torsion must be [m, n]");
    return TorsionGroup(j.at(0).get<long>(), j.at(1).get<long>());
}

json to_json(const GrowthReport& r) {
    json j;
    j["label"] = r.label;
    json a = json::array();
    for (const auto& c : r.a_invariants) a.push_back(rat_json(c));
    j["a_invariants"] = a;
    j["base_torsion"] = to_json(r.base);
    if (r.growth) {
        j["growth"] = {{"field_poly", poly_json(r.growth->field_poly)},
                       {"torsion", to_json(r.growth->torsion)},
                       {"galois", r.growth->galois}};
        const Certificate& c = r.certificate;
        j["certificate"] = {{"route", c.route},
                            {"factor", poly_json(c.factor)},
                            {"witness", {{"x", elem_json(c.witness.x)}, {"y", elem_json(c.witness.y)}}},
                            {"witness_order", c.witness_order},
                            {"verified", c.verified}};
    } else {
        j["growth"] = nullptr;
        j["certificate"] = nullptr;
    }
    j["growth_fields"] = r.growth_fields;
    return j;
}

GrowthReport growth_report_from_json(const json& j) {
    GrowthReport r;
    try {
        r.label = j.at("label").get<std::string>();
        const json& a = j.at("a_invariants");
        if (!a.is_array() || a.size() != 5) throw InputError("a_invariants must have five entries");
        for (int i = 0; i < 5; ++i) r.a_invariants[i] = rat_from_json(a.at(i));
        r.base = torsion_from_json(j.at("base_torsion"));
        r.growth_fields = j.value("growth_fields", 0);
        if (!j.at("growth").is_null()) {
            const json& g = j.at("growth");
            Growth gr;
            gr.field_poly = poly_from_json(g.at("field_poly"));
            gr.field = NumberField::make(gr.field_poly);
            gr.torsion = torsion_from_json(g.at("torsion"));
            gr.galois = g.at("galois").get<bool>();
            r.growth = gr;
            const json& c = j.at("certificate");
            Certificate& cert = r.certificate;
            cert.route = c.at("route").get<std::string>();
            cert.factor = poly_from_json(c.at("factor"));
            FieldPtr K = NumberField::make(cert.factor);
            cert.witness = PointK(elem_from_json(K, c.at("witness").at("x")), elem_from_json(K, c.at("witness").at("y")));
            cert.witness_order = c.at("witness_order").get<long>();
            cert.verified = c.at("verified").get<bool>();
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("growth report: ") + e.what());
    } catch (const MathError& e) {
        throw InputError(std::string("growth report: ") + e.what());
    }
    return r;
}

json to_json(const ScanReport& s, bool include_reports) {
    json counts = json::array();
    for (const auto& [k, v] : s.counts) counts.push_back({{"base", to_json(k.first)}, {"growth", to_json(k.second)}, {"count", v}});
    json j = {{"curves", s.curves},
              {"growth_counts", counts},
              {"max_fields_per_curve", s.max_fields_per_curve},
              {"pairs_allowed", s.pairs_allowed},
              {"c11_only_known", s.c11_only_known},
              {"certificates_verified", s.certificates_verified},
              {"errors", s.errors}};
    json growth = json::array();
    for (const auto& r : s.reports)
        if (r.growth) growth.push_back(r.label);
    j["growth_labels"] = growth;
    if (include_reports) {
        json reps = json::array();
        for (const auto& r : s.reports) reps.push_back(to_json(r));
        j["reports"] = reps;
    }
    return j;
}

json to_json(const LevelData& d) { return {{"d0", d.d0}, {"dv", std::vector<long>(d.dv.begin(), d.dv.end())}, {"d", d.d}}; }

json to_json(const Table1Report& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        json row = {{"label", r.label}, {"computed", to_json(r.computed)}, {"match", r.matches()}};
        row["expected"] = r.has_expected ? to_json(r.expected) : json(nullptr);
        rows.push_back(row);
    }
    return {{"convention", t.convention}, {"mismatches", t.mismatches()}, {"rows", rows}};
}

json to_json(const SubgroupFinding& f) {
    json gens = json::array();
    for (const auto& M : f.generators) gens.push_back({{M.a, M.b}, {M.c, M.d}});
    return {{"modulus", f.generators.empty() ? 0 : f.generators.front().n},
            {"generators", gens},
            {"group_order", f.group_order},
            {"witness", {f.witness[0], f.witness[1]}},
            {"orbit_size", f.orbit_size},
            {"stabilizer_order", f.stabilizer_order},
            {"quotient", to_string(f.quotient_label)},
            {"group", to_string(f.group_label)}};
}

json to_json(const FamilyCheck& c) {
    return {{"check", c.name}, {"passed", c.passed}, {"samples", c.samples}, {"detail", c.detail}};
}

}  // namespace tors5
