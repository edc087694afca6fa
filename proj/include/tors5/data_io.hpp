#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tors5/classify.hpp"
#include "tors5/families.hpp"
#include "tors5/gl2.hpp"

namespace tors5 {

// Malformed input; `line` is 1-based, or 0 when no line applies.
struct InputError : std::runtime_error {
    long line = 0;
    InputError(const std::string& what, long line_ = 0)
        : std::runtime_error(line_ ? "line " + std::to_string(line_) + ": " + what : what), line(line_) {}
};

// CSV rows label,conductor,a1,a2,a3,a4,a6[,torsion_order]; blank lines and
// lines starting with '#' are skipped, as is a header row starting with
// "label".  Duplicate labels and singular curves are rejected.
std::vector<CurveRecord> parse_curves(std::istream& in);
std::vector<CurveRecord> ingest_curves(const std::string& path);  // throws InputError

struct LenientIngest {
    std::vector<CurveRecord> records;
    std::vector<std::string> errors;  // one message per rejected line
};
LenientIngest parse_curves_lenient(std::istream& in);
LenientIngest ingest_curves_lenient(const std::string& path);

const CurveRecord* find_label(const std::vector<CurveRecord>& db, const std::string& label);

struct GeneratorConfig {
    std::vector<GeneratorEntry> entries;
    std::string action;           // as recorded in the file
    std::map<std::string, long> cm_d1_mod11;
    std::string convention;       // the one that reproduced the expected rows
    bool validated = false;       // every row with expected values matched
    Table1Report report;
};
GeneratorConfig load_generator_config(const std::string& path);  // throws InputError
GeneratorConfig parse_generator_config(const nlohmann::json& j);
const GeneratorEntry& find_entry(const GeneratorConfig& cfg, const std::string& label);

// ---------------------------------------------------------------- reports

nlohmann::json to_json(const TorsionGroup& g);  // [m, n]
TorsionGroup torsion_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GrowthReport& r);
GrowthReport growth_report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ScanReport& s, bool include_reports);
nlohmann::json to_json(const LevelData& d);
nlohmann::json to_json(const Table1Report& t);
nlohmann::json to_json(const SubgroupFinding& f);
nlohmann::json to_json(const FamilyCheck& c);

}  // namespace tors5
