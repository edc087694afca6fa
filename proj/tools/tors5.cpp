// Command-line front end.  Every command prints JSON lines on stdout;
// --pretty renders the same records for reading.  Exit codes: 0 success,
// 1 verification failure, 2 input error.

#include <CLI11.hpp>

#include <chrono>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "tors5/classify.hpp"
#include "tors5/data_io.hpp"
#include "tors5/families.hpp"
#include "tors5/gl2.hpp"

using namespace tors5;
using json = nlohmann::json;

namespace {

#ifndef TORS5_DATA_DIR
#define TORS5_DATA_DIR "data"
#endif

bool g_pretty = false;

void emit(const json& j) {
    if (g_pretty) std::cout << j.dump(2) << "\n";
    else std::cout << j.dump() << "\n";
}

CurveQ parse_curve_arg(const std::string& s) {
    std::vector<BigInt> a;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        BigInt v;
        if (cell.empty() || v.set_str(cell[0] == '+' ? cell.substr(1) : cell, 10) != 0)
            throw InputError("bad coefficient '" + cell + "' in --curve");
        a.push_back(v);
    }
    if (a.size() != 5) throw InputError("--curve needs five comma-separated integers a1,a2,a3,a4,a6");
    try {
        return CurveQ(BigRat(a[0]), BigRat(a[1]), BigRat(a[2]), BigRat(a[3]), BigRat(a[4]));
    } catch (const MathError&) {
        throw InputError("singular curve");
    }
}

json curve_json(const CurveQ& E) {
    json a = json::array();
    for (const auto& c : E.a()) a.push_back(c.get_str());
    return a;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- commands

int cmd_torsion(const std::string& curve) {
    CurveQ E = parse_curve_arg(curve);
    auto data = torsion_over_Q_detail(E);
    emit({{"curve", curve_json(E)},
          {"torsion", to_json(data.group)},
          {"structure", data.group.str()},
          {"order", data.group.order()}});
    return 0;
}

int cmd_growth(const std::string& label, const std::string& db, const std::string& curve, bool fast) {
    CurveQ E(0, 0, 0, -1, 0);
    std::string name = label;
    if (!curve.empty()) {
        E = parse_curve_arg(curve);
    } else {
        if (label.empty()) throw InputError("growth needs --curve or --label with --db");
        auto recs = ingest_curves(db);
        const CurveRecord* r = find_label(recs, label);
        if (!r) throw InputError("unknown label " + label);
        E = r->curve();
    }
    GrowthOptions opt;
    opt.cm_fast_path = fast;
    GrowthReport rep = quintic_growth(E, name, opt);
    json j = to_json(rep);
    if (rep.growth) j["structure"] = rep.base.str() + " -> " + rep.growth->torsion.str();
    emit(j);
    bool ok = !rep.growth || rep.certificate.verified;
    return ok ? 0 : 1;
}

int cmd_table1(const std::string& config) {
    auto t0 = std::chrono::steady_clock::now();
    GeneratorConfig cfg = load_generator_config(config);
    const Table1Report& rep = cfg.report;
    if (g_pretty) {
        std::cout << std::left << std::setw(12) << "label" << std::setw(24) << "computed (d0; dv; d)"
                  << std::setw(24) << "expected" << "match\n";
        for (const auto& r : rep.rows)
            std::cout << std::setw(12) << r.label << std::setw(24) << r.computed.str() << std::setw(24)
                      << (r.has_expected ? r.expected.str() : "-") << (r.matches() ? "yes" : "NO") << "\n";
        std::cout << "convention: " << rep.convention << ", mismatches: " << rep.mismatches() << "\n";
    } else {
        for (const auto& r : rep.rows) {
            json row = {{"label", r.label}, {"computed", to_json(r.computed)}, {"match", r.matches()}};
            row["expected"] = r.has_expected ? to_json(r.expected) : json(nullptr);
            emit(row);
        }
        emit({{"summary", "table1"},
              {"convention", rep.convention},
              {"action", cfg.action},
              {"rows", rep.rows.size()},
              {"mismatches", rep.mismatches()},
              {"validated", cfg.validated},
              {"seconds", seconds_since(t0)}});
    }
    if (!cfg.validated) {
        std::string bad;
        for (const auto& r : rep.rows)
            if (!r.matches()) bad += (bad.empty() ? "" : ", ") + r.label;
        std::cerr << json({{"error", "table1 mismatch under both conventions"}, {"rows", bad}}).dump() << "\n";
        return 1;
    }
    return 0;
}

int cmd_lemma_search(const std::string& base, int level, long max_order, const std::string& config, bool serial) {
    auto t0 = std::chrono::steady_clock::now();
    Exec exec = serial ? Exec::serial : Exec::parallel;
    if (level == 125) {
        if (base != "5Cs.1.1") throw InputError("level 125 is implemented for the base 5Cs.1.1 only");
        ChainResult r = mod125_chain_search(exec);
        for (const auto& f : r.violations) emit(to_json(f));
        emit({{"summary", "lemma-search"},
              {"base", base},
              {"level", level},
              {"violations", r.violations.size()},
              {"level25_f5_findings", r.level25_f5_findings},
              {"orbits_examined", r.orbits_examined},
              {"realizable_orbits", r.realizable_orbits},
              {"candidate_images", r.candidate_images},
              {"seconds", seconds_since(t0)}});
        return r.violations.empty() ? 0 : 1;
    }
    if (level != 25) throw InputError("--level must be 25 or 125");
    GeneratorConfig cfg = load_generator_config(config);
    const GeneratorEntry& e = find_entry(cfg, base);
    if (e.modulus != 5) throw InputError("base group must be a subgroup of GL2(Z/5Z)");
    MatGroup H = group_from_entry(e, cfg.convention == "row");
    SearchFilter filter;
    filter.orbit_size = 5;
    filter.max_order = max_order;
    SearchResult res = preimage_search(H, 2, filter, exec);
    std::map<std::string, long> labels;
    bool orbit_stabilizer = true;
    for (const auto& f : res.findings) {
        emit(to_json(f));
        ++labels[to_string(f.quotient_label)];
        orbit_stabilizer = orbit_stabilizer && f.orbit_size * f.stabilizer_order == f.group_order;
    }
    emit({{"summary", "lemma-search"},
          {"base", base},
          {"level", level},
          {"max_order", max_order},
          {"findings", res.findings.size()},
          {"quotient_labels", labels},
          {"orbit_stabilizer", orbit_stabilizer},
          {"invariant_subspaces", res.stats.invariant_subspaces},
          {"lifts_tried", res.stats.lifts_tried},
          {"subgroups", res.stats.subgroups},
          {"conjugacy_classes", res.stats.conjugacy_classes},
          {"seconds", seconds_since(t0)}});
    return orbit_stabilizer ? 0 : 1;
}

int cmd_families(const std::string& check, int samples, long height) {
    std::vector<FamilyCheck> out;
    if (check == "p5") out.push_back(check_p5(samples));
    else if (check == "p25") out.push_back(check_p25({1, 2, 3}));
    else if (check == "triangle") out.push_back(check_triangle({2, 3, -2, 5, 7}));
    else if (check == "jmaps") {
        out.push_back(check_jmaps(samples));
        out.push_back(check_order5_point(samples));
    } else if (check == "aux-points") {
        out.push_back(check_aux_points(height, 100));
    } else if (check == "checksum") {
        FamilyCheck c{"family data checksum", family_data_checksum() == family_data_recorded_checksum(), 1, ""};
        if (!c.passed) c.detail = "computed " + family_data_checksum();
        out.push_back(c);
    } else {
        throw InputError("unknown check " + check);
    }
    bool ok = true;
    for (const auto& c : out) {
        emit(to_json(c));
        ok = ok && c.passed;
    }
    return ok ? 0 : 1;
}

int cmd_scan(const std::string& db, long max_conductor, bool reports, bool serial) {
    auto t0 = std::chrono::steady_clock::now();
    LenientIngest in = ingest_curves_lenient(db);
    ScanReport s = scan_database(in.records, serial ? Exec::serial : Exec::parallel, max_conductor);
    if (reports)
        for (const auto& r : s.reports)
            if (r.growth) emit(to_json(r));
    json sum = to_json(s, false);
    sum["summary"] = "scan";
    sum["ingest_errors"] = in.errors;
    sum["max_conductor"] = max_conductor;
    sum["seconds"] = seconds_since(t0);
    emit(sum);
    bool ok = s.pairs_allowed && s.max_fields_per_curve <= 1 && s.c11_only_known && s.certificates_verified &&
              s.errors.empty();
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"torsion growth of elliptic curves over quintic fields"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--pretty", g_pretty, "human-readable output");
    const std::string data = TORS5_DATA_DIR;

    std::string curve, label, db = data + "/curves.csv", config = data + "/gens.json", base, check = "p5";
    bool fast = false, reports = false, serial = false;
    int level = 25, samples = 20;
    long max_order = 0, max_conductor = 0, height = 10000;

    auto* torsion = app.add_subcommand("torsion", "torsion subgroup over Q");
    torsion->add_option("--curve", curve, "a1,a2,a3,a4,a6")->required();

    auto* growth = app.add_subcommand("growth", "torsion growth over quintic fields");
    growth->add_option("--curve", curve, "a1,a2,a3,a4,a6");
    growth->add_option("--label", label, "curve label in the database");
    growth->add_option("--db", db, "curve CSV file");
    growth->add_flag("--cm-fast-path", fast, "answer the stored 11-torsion curves from the table");

    auto* t1 = app.add_subcommand("table1", "recompute the mod-p image table");
    t1->add_option("--config", config, "generator config JSON");

    auto* ls = app.add_subcommand("lemma-search", "subgroup searches at level 25 and 125");
    ls->add_option("--base", base, "5B.1.1, 5B.1.2 or 5Cs.1.1")->required();
    ls->add_option("--level", level, "25 or 125");
    ls->add_option("--max-order", max_order, "largest subgroup order to report (0: no bound)");
    ls->add_option("--config", config, "generator config JSON");
    ls->add_flag("--serial", serial, "use the serial reference path");

    auto* fam = app.add_subcommand("families", "identities of the parametrized families");
    fam->add_option("--check", check, "p5, p25, triangle, jmaps, aux-points or checksum")->required();
    fam->add_option("--samples", samples, "number of sampled parameters");
    fam->add_option("--height-bound", height, "height bound for the search on C'");

    auto* scan = app.add_subcommand("scan", "growth over a curve database");
    scan->add_option("--db", db, "curve CSV file");
    scan->add_option("--max-conductor", max_conductor, "only curves up to this conductor (0: all)");
    scan->add_flag("--reports", reports, "print the report of every curve with growth");
    scan->add_flag("--serial", serial, "use the serial reference path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        if (*torsion) return cmd_torsion(curve);
        if (*growth) return cmd_growth(label, db, curve, fast);
        if (*t1) return cmd_table1(config);
        if (*ls) return cmd_lemma_search(base, level, max_order, config, serial);
        if (*fam) return cmd_families(check, samples, height);
        if (*scan) return cmd_scan(db, max_conductor, reports, serial);
    } catch (const InputError& e) {
        std::cerr << json({{"error", e.what()}, {"kind", "input"}}).dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json({{"error", e.what()}, {"kind", "failure"}}).dump() << "\n";
        return 1;
    }
    return 2;
}
