#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tors5/data_io.hpp"

using namespace tors5;
using json = nlohmann::json;

namespace {

const std::string kData = TORS5_DATA_DIR;

std::vector<CurveRecord> parse(const std::string& text) {
    std::istringstream in(text);
    return parse_curves(in);
}

struct Run {
    int code;
    std::vector<json> lines;
};

// Runs the CLI, parsing every stdout line as JSON.
Run cli(const std::string& args) {
    std::string cmd = std::string(TORS5_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = pclose(p);
    Run r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, {}};
    std::istringstream lines(out);
    std::string line;
    while (std::getline(lines, line))
        if (!line.empty()) r.lines.push_back(json::parse(line));
    return r;
}

std::string temp_file(const std::string& name, const std::string& text) {
    auto path = std::filesystem::temp_directory_path() / ("tors5_" + name);
    std::ofstream(path) << text;
    return path.string();
}

}  // namespace

TEST_CASE("ingest") {
    auto recs = parse("11a3,11,0,-1,1,0,0\n");
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].label == "11a3");
    CHECK(recs[0].conductor == 11);
    CHECK(recs[0].line == 1);
    CHECK(torsion_over_Q(recs[0].curve()) == TorsionGroup::cyclic(5));
    CHECK_FALSE(recs[0].torsion_order);

    recs = parse("label,conductor,a1,a2,a3,a4,a6,torsion_order\n# comment\n\n11a1,11,0,-1,1,-10,-20,5\n");
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].torsion_order == 5);
    CHECK(recs[0].line == 4);

    CHECK(parse("").empty());
    CHECK(ingest_curves(temp_file("empty.csv", "")).empty());
}

TEST_CASE("ingest errors name the line") {
    auto line_of = [](const std::string& text) {
        try {
            parse(text);
        } catch (const InputError& e) {
            return e.line;
        }
        return -1L;
    };
    CHECK(line_of("11a3,11,0,-1,1,0,0\n11a1,11,0,-1,1,x,-20\n") == 2);
    CHECK(line_of("11a3,11,0,-1,1,0\n") == 1);
    CHECK(line_of("11a3,11,0,-1,1,0,0\n\n11a3,11,0,-1,1,0,0\n") == 3);  // duplicate
    CHECK(line_of("bad,5,0,0,0,0,0\n") == 1);                            // singular
    CHECK(line_of("c,0,0,0,0,1,0\n") == 1);                              // conductor
    CHECK_THROWS_AS(ingest_curves("/nonexistent/curves.csv"), InputError);
    try {
        parse("a,11,0,-1,1,0,0\nb,11,0,-1,1,oops,0\n");
        FAIL("no error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("lenient ingest keeps going") {
    std::istringstream in("a,11,0,-1,1,0,0\nb,11,0,0\nc,11,0,0,0,0,0\nd,14,1,0,1,4,-6\n");
    LenientIngest r = parse_curves_lenient(in);
    CHECK(r.records.size() == 2);
    REQUIRE(r.errors.size() == 2);
    CHECK(r.errors[0].find("line 2") != std::string::npos);
    CHECK(r.errors[1].find("line 3") != std::string::npos);
}

TEST_CASE("bundled curve file") {
    auto db = ingest_curves(kData + "/curves.csv");
    CHECK(db.size() > 5000);
    for (const char* l : {"11a1", "11a2", "11a3", "15a3", "50a1", "66c3", "121a2", "121b1", "121b2", "121c2",
                          "450b2", "550k2", "550k3"}) {
        CAPTURE(l);
        CHECK(find_label(db, l) != nullptr);
    }
    long max_n = 0;
    for (const auto& r : db) max_n = std::max(max_n, r.conductor);
    CHECK(max_n <= 1000);
    // the recorded torsion orders agree with the computed ones on a sample
    for (size_t i = 0; i < db.size(); i += 97) {
        CAPTURE(db[i].label);
        if (db[i].torsion_order) CHECK(torsion_over_Q(db[i].curve()).order() == *db[i].torsion_order);
    }
}

TEST_CASE("report JSON round trip") {
    auto db = ingest_curves(kData + "/curves.csv");
    for (const char* l : {"11a2", "66c3", "11a3", "11a1"}) {
        CAPTURE(l);
        GrowthReport r = quintic_growth(find_label(db, l)->curve(), l);
        json j = to_json(r);
        GrowthReport back = growth_report_from_json(json::parse(j.dump()));
        CHECK(back.label == r.label);
        CHECK(back.a_invariants == r.a_invariants);
        CHECK(back.base == r.base);
        CHECK(back.growth.has_value() == r.growth.has_value());
        if (r.growth) {
            CHECK(back.growth->field_poly == r.growth->field_poly);
            CHECK(back.growth->torsion == r.growth->torsion);
            CHECK(back.growth->galois == r.growth->galois);
            CHECK(back.certificate.factor == r.certificate.factor);
            CHECK(back.certificate.witness == r.certificate.witness);
        }
        CHECK(to_json(back) == j);
    }
    CHECK(torsion_from_json(to_json(TorsionGroup(2, 8))) == TorsionGroup(2, 8));
    CHECK_THROWS_AS(growth_report_from_json(json::parse("{\"label\": 3}")), InputError);
}

TEST_CASE("cli torsion and growth") {
    Run r = cli("torsion --curve 0,-1,1,-10,-20");
    CHECK(r.code == 0);
    REQUIRE(r.lines.size() == 1);
    CHECK(r.lines[0]["order"] == 5);

    r = cli("growth --label 11a2 --db " + kData + "/curves.csv");
    CHECK(r.code == 0);
    REQUIRE(r.lines.size() == 1);
    CHECK(r.lines[0]["growth"]["torsion"] == json::array({1, 5}));
    CHECK(r.lines[0]["growth"]["field_poly"] == json::array({-11, 0, 0, 0, 0, 1}));
    CHECK(r.lines[0]["certificate"]["verified"] == true);

    r = cli("growth --curve 0,-1,1,-10,-20");
    CHECK(r.code == 0);
    CHECK(r.lines.at(0)["growth"].is_null());

    CHECK(cli("growth --label 99z9 --db " + kData + "/curves.csv").code == 2);
    CHECK(cli("growth --curve 0,0,0,0,0").code == 2);
    CHECK(cli("growth --curve 1,2,3").code == 2);
    CHECK(cli("growth --label 11a2 --db /nonexistent.csv").code == 2);
    CHECK(cli("no-such-command").code == 2);
}

TEST_CASE("cli table1, lemma-search and families") {
    Run r = cli("table1 --config " + kData + "/gens.json");
    // one recorded row disagrees with the computed orbit sizes
    CHECK(r.code == 1);
    REQUIRE(r.lines.size() == 37);
    CHECK(r.lines.back()["mismatches"] == 1);
    CHECK(cli("table1 --config /nonexistent.json").code == 2);
    CHECK(cli("table1 --config " + temp_file("bad.json", "{not json")).code == 2);

    r = cli("lemma-search --base 5B.1.2 --level 25");
    CHECK(r.code == 0);
    REQUIRE(r.lines.size() == 1);
    CHECK(r.lines[0]["findings"] == 0);
    r = cli("lemma-search --base 5Cs.1.1 --level 125");
    CHECK(r.code == 0);
    CHECK(r.lines.back()["violations"] == 0);
    CHECK(cli("lemma-search --base 5Cs.1.1 --level 7").code == 2);
    CHECK(cli("lemma-search --base nope --level 25").code == 2);

    for (const char* c : {"p5", "p25", "triangle", "jmaps", "checksum"}) {
        CAPTURE(c);
        r = cli(std::string("families --check ") + c + " --samples 3");
        CHECK(r.code == 0);
        for (const auto& l : r.lines) CHECK(l["passed"] == true);
    }
    CHECK(cli("families --check nothing").code == 2);
}

TEST_CASE("cli scan") {
    std::string db = temp_file("scan.csv",
                               "11a1,11,0,-1,1,-10,-20\n11a2,11,0,-1,1,-7820,-263580\nbroken line\n"
                               "11a3,11,0,-1,1,0,0\n");
    Run r = cli("scan --reports --db " + db);
    CHECK(r.code == 0);
    REQUIRE(r.lines.size() == 3);
    json s = r.lines.back();
    CHECK(s["curves"] == 3);
    CHECK(s["ingest_errors"].size() == 1);
    CHECK(s["pairs_allowed"] == true);
    CHECK(s["max_fields_per_curve"] == 1);
    CHECK(cli("scan --db /nonexistent.csv").code == 2);
}
