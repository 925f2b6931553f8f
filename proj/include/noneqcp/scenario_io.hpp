#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "noneqcp/force.hpp"

namespace noneqcp {

enum class RunMode { eq, steady, neq, dyn, fig2, validate };
std::string to_string(RunMode m);
RunMode run_mode_from_string(const std::string& s);

// A parsed scenario file: physical parameters in engine units plus the swept
// axes in SI.
struct ScenarioFile {
    Scenario scenario;
    std::vector<double> z_m;
    std::vector<double> tau_s;
    RunMode mode = RunMode::eq;
    ForceOptions options;
};

// Resonance strings such as "2.35e15 Hz", "2.35e15 rad/s" or "1.547 eV".
// Hz is read as an angular frequency (E = hbar * value).
double parse_resonance(const nlohmann::json& v);

// SI/unit-tagged JSON to engine units. Missing sections fall back to the
// gold/rubidium defaults; unknown keys and non-physical values throw
// ScenarioError.
ScenarioFile convert_units(const nlohmann::json& doc);
ScenarioFile load_scenario(const std::string& path);
ScenarioFile default_scenario();

// The resolved scenario back in SI, as written to output headers.
nlohmann::json resolved_json(const ScenarioFile& f);

struct ResultTable {
    std::string name;                 // "" or a suffix such as "space"/"time"
    std::vector<std::string> header;  // free-form lines, written after '#'
    std::string label_column;         // optional leading text column
    std::vector<std::string> labels;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// Worker count: NONEQCP_THREADS if set (>= 1), else hardware concurrency.
unsigned thread_budget();

// Runs one mode. fig2 returns two tables (space, time), validate one table
// of oracle reports; every other mode returns one table over its grid.
std::vector<ResultTable> run(RunMode mode, const ScenarioFile& f);
bool all_reports_pass(const ResultTable& validate_table);

enum class Format { csv, json };
Format format_from_string(const std::string& s);

void emit(const ResultTable& t, Format fmt, std::ostream& out);
void emit(const ResultTable& t, Format fmt, const std::string& path);
// file.csv + "space" -> file_space.csv
std::string suffixed_path(const std::string& path, const std::string& suffix);

ResultTable parse_csv(std::istream& in);
ResultTable parse_json_table(std::istream& in);

// git describe at configure time.
std::string build_tag();

}  // namespace noneqcp
