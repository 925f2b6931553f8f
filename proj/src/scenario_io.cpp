#include "noneqcp/scenario_io.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include "noneqcp/errors.hpp"
#include "noneqcp/oracles.hpp"
#include "noneqcp/units.hpp"

#ifndef NONEQCP_BUILD_TAG
#define NONEQCP_BUILD_TAG "unknown"
#endif

namespace noneqcp {

using nlohmann::json;

std::string build_tag() { return NONEQCP_BUILD_TAG; }

std::string to_string(RunMode m) {
    switch (m) {
        case RunMode::eq: return "eq";
        case RunMode::steady: return "steady";
        case RunMode::neq: return "neq";
        case RunMode::dyn: return "dyn";
        case RunMode::fig2: return "fig2";
        case RunMode::validate: return "validate";
    }
    return "unknown";
}

RunMode run_mode_from_string(const std::string& s) {
    for (RunMode m : {RunMode::eq, RunMode::steady, RunMode::neq, RunMode::dyn, RunMode::fig2, RunMode::validate})
        if (to_string(m) == s) return m;
    throw ScenarioError("unknown mode '" + s + "' (expected eq|steady|neq|dyn|fig2|validate)");
}

Format format_from_string(const std::string& s) {
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw ScenarioError("unknown format '" + s + "' (expected csv|json)");
}

namespace {

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ScenarioError(where + ": expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : obj.items())
        if (!ok.count(k)) throw ScenarioError(where + ": unknown key '" + k + "'");
}

double number(const json& obj, const std::string& where, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ScenarioError(where + "." + key + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ScenarioError(where + "." + key + ": not finite");
    return x;
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw ScenarioError(msg);
}

std::vector<double> parse_grid(const json& v, const std::string& where, const char* start_key, const char* stop_key) {
    std::vector<double> out;
    if (v.is_array()) {
        for (const json& x : v) {
            require(x.is_number(), where + ": grid entries must be numbers");
            out.push_back(x.get<double>());
        }
    } else {
        check_keys(v, where, {start_key, stop_key, "count", "spacing"});
        require(v.contains(start_key) && v.contains(stop_key) && v.contains("count"),
                where + ": needs " + start_key + ", " + stop_key + " and count");
        const double a = number(v, where, start_key, 0), b = number(v, where, stop_key, 0);
        require(v.at("count").is_number_integer() && v.at("count").get<long>() >= 1, where + ".count: positive integer");
        const long n = v.at("count").get<long>();
        const std::string spacing = v.value("spacing", std::string("linear"));
        require(spacing == "linear" || spacing == "log", where + ".spacing: linear or log");
        if (spacing == "log") require(a > 0 && b > 0, where + ": log spacing needs positive bounds");
        for (long i = 0; i < n; ++i) {
            const double t = n == 1 ? 0.0 : double(i) / double(n - 1);
            out.push_back(spacing == "log" ? a * std::pow(b / a, t) : a + (b - a) * t);
        }
    }
    require(!out.empty(), where + ": empty grid");
    return out;
}

std::vector<double> scalar_or_grid(const json& sec, const std::string& where, const char* scalar_key,
                                   const char* grid_key, const char* start_key, const char* stop_key, double fallback) {
    const bool has_s = sec.contains(scalar_key), has_g = sec.contains(grid_key);
    require(!(has_s && has_g), where + ": give exactly one of " + scalar_key + " or " + grid_key);
    if (has_g) return parse_grid(sec.at(grid_key), where + "." + grid_key, start_key, stop_key);
    return {number(sec, where, scalar_key, fallback)};
}

json empty_object() { return json::object(); }

}  // namespace

double parse_resonance(const json& v) {
    if (!v.is_string())
        throw ScenarioError("atom.resonance: give a string with a unit, e.g. \"2.35e15 Hz\" or \"1.547 eV\"");
    const std::string s = v.get<std::string>();
    const char* begin = s.c_str();
    char* end = nullptr;
    const double x = std::strtod(begin, &end);
    if (end == begin || !std::isfinite(x)) throw ScenarioError("atom.resonance: no number in '" + s + "'");
    std::string unit(end);
    unit.erase(std::remove_if(unit.begin(), unit.end(), [](unsigned char c) { return std::isspace(c); }), unit.end());
    if (unit == "Hz" || unit == "rad/s") return units::angular_hz_to_eV(x);
    if (unit == "eV") return x;
    if (unit.empty()) throw ScenarioError("atom.resonance: bare number '" + s + "'; add a unit (Hz, rad/s or eV)");
    throw ScenarioError("atom.resonance: unknown unit tag '" + unit + "'");
}

ScenarioFile default_scenario() {
    ScenarioFile f;
    f.z_m = {f.scenario.z};
    f.tau_s = {f.scenario.tau};
    return f;
}

ScenarioFile convert_units(const json& doc) {
    check_keys(doc, "scenario", {"medium", "atom", "field", "geometry", "time", "run"});
    ScenarioFile f = default_scenario();
    Scenario& s = f.scenario;

    const json medium = doc.value("medium", empty_object());
    check_keys(medium, "medium", {"model", "plasma_freq_eV", "damping_eV", "resonance_eV", "temperature_K"});
    if (medium.contains("model")) {
        require(medium.at("model").is_string(), "medium.model: expected a string");
        s.medium.model = dielectric_model_from_string(medium.at("model").get<std::string>());
    }
    s.medium.plasma_freq = number(medium, "medium", "plasma_freq_eV", s.medium.plasma_freq);
    s.medium.damping = number(medium, "medium", "damping_eV", s.medium.model == DielectricModel::plasma ? 0.0 : s.medium.damping);
    s.medium.resonance = number(medium, "medium", "resonance_eV", 0.0);
    s.medium.temperature = number(medium, "medium", "temperature_K", s.medium.temperature);

    const json atom = doc.value("atom", empty_object());
    check_keys(atom, "atom", {"alpha0_m3", "resonance", "linewidth_eV", "temperature_K"});
    if (atom.contains("alpha0_m3")) s.atom.alpha0 = units::cubic_meters_to_inv_eV3(number(atom, "atom", "alpha0_m3", 0));
    if (atom.contains("resonance")) s.atom.resonance = parse_resonance(atom.at("resonance"));
    s.atom.linewidth = number(atom, "atom", "linewidth_eV", 1e-6 * s.atom.resonance);
    s.atom.temperature = number(atom, "atom", "temperature_K", s.atom.temperature);

    const json field = doc.value("field", empty_object());
    check_keys(field, "field", {"temperature_K"});
    s.field_temperature = number(field, "field", "temperature_K", s.field_temperature);

    const json geo = doc.value("geometry", empty_object());
    check_keys(geo, "geometry", {"z_m", "z_grid"});
    f.z_m = scalar_or_grid(geo, "geometry", "z_m", "z_grid", "start_m", "stop_m", s.z);

    const json time = doc.value("time", empty_object());
    check_keys(time, "time", {"tau_s", "tau_grid", "t_i_s"});
    s.t_i = number(time, "time", "t_i_s", 0.0);
    f.tau_s = scalar_or_grid(time, "time", "tau_s", "tau_grid", "start_s", "stop_s", s.tau);

    const json runsec = doc.value("run", empty_object());
    check_keys(runsec, "run", {"mode", "tolerances"});
    if (runsec.contains("mode")) {
        require(runsec.at("mode").is_string(), "run.mode: expected a string");
        f.mode = run_mode_from_string(runsec.at("mode").get<std::string>());
    }
    const json tol = runsec.value("tolerances", empty_object());
    check_keys(tol, "run.tolerances", {"rel_tol", "max_intervals"});
    f.options.rel_tol = number(tol, "run.tolerances", "rel_tol", f.options.rel_tol);
    f.options.max_intervals = std::size_t(number(tol, "run.tolerances", "max_intervals", double(f.options.max_intervals)));
    require(f.options.rel_tol > 0 && f.options.rel_tol < 1, "run.tolerances.rel_tol: must lie in (0, 1)");
    require(f.options.max_intervals >= 1, "run.tolerances.max_intervals: must be positive");

    s.z = f.z_m.front();
    s.tau = f.tau_s.front();
    for (double z : f.z_m) require(z > 0, "geometry: z must be positive");
    for (double t : f.tau_s) require(t >= s.t_i, "time: tau must not precede t_i");
    try {
        s.validate();
    } catch (const DomainError& e) {
        throw ScenarioError(e.what());
    }
    return f;
}

ScenarioFile load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ScenarioError("scenario file '" + path + "': " + e.what());
    }
    return convert_units(doc);
}

json resolved_json(const ScenarioFile& f) {
    const Scenario& s = f.scenario;
    json j;
    j["medium"] = {{"model", to_string(s.medium.model)},
                   {"plasma_freq_eV", s.medium.plasma_freq},
                   {"damping_eV", s.medium.damping},
                   {"resonance_eV", s.medium.resonance},
                   {"temperature_K", s.medium.temperature}};
    j["atom"] = {{"alpha0_m3", units::inv_eV3_to_cubic_meters(s.atom.alpha0)},
                 {"alpha0_eV-3", s.atom.alpha0},
                 {"resonance_eV", s.atom.resonance},
                 {"linewidth_eV", s.atom.linewidth},
                 {"temperature_K", s.atom.temperature}};
    j["field"] = {{"temperature_K", s.field_temperature}};
    j["geometry"] = {{"z_m", f.z_m}};
    j["time"] = {{"tau_s", f.tau_s}, {"t_i_s", s.t_i}};
    j["run"] = {{"rel_tol", f.options.rel_tol}, {"max_intervals", f.options.max_intervals}};
    return j;
}

unsigned thread_budget() {
    if (const char* env = std::getenv("NONEQCP_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n >= 1) return unsigned(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Evaluates job(i) for i in [0, n) on up to thread_budget() workers; results
// land by index so the output order never depends on scheduling.
template <class Row>
std::vector<Row> parallel_rows(std::size_t n, const std::function<Row(std::size_t)>& job) {
    std::vector<Row> out(n);
    std::vector<std::exception_ptr> errors(n);
    const unsigned workers = std::min<std::size_t>(thread_budget(), std::max<std::size_t>(n, 1));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = job(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

std::vector<std::string> base_header(RunMode mode, const ScenarioFile& f) {
    std::vector<std::string> h;
    h.push_back("noneqcp " + to_string(mode));
    h.push_back("build: " + build_tag());
    h.push_back("scenario: " + resolved_json(f).dump());
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "constants: hbar_c_eV_nm=%.10g hbar_eV_s=%.10g k_B_eV_per_K=%.10g newton_per_eV2=%.10g "
                  "meter_in_inv_eV=%.10g second_in_inv_eV=%.10g",
                  units::hbar_c_eV_nm, units::hbar_eV_s, units::k_B_eV_per_K, units::newton_per_eV2,
                  units::meter_in_inv_eV, units::second_in_inv_eV);
    h.push_back(buf);
    std::snprintf(buf, sizeof buf, "conversions: Omega_eV=%.10g alpha0_eV-3=%.10g kT_field_eV=%.10g kT_medium_eV=%.10g",
                  f.scenario.atom.resonance, f.scenario.atom.alpha0, units::kelvin_to_eV(f.scenario.field_temperature),
                  units::kelvin_to_eV(f.scenario.medium.temperature));
    h.push_back(buf);
    h.push_back("forces in newtons; negative = toward the surface");
    return h;
}

Scenario at(const ScenarioFile& f, double z, double tau) {
    Scenario s = f.scenario;
    s.z = z;
    s.tau = tau;
    return s;
}

ResultTable static_table(RunMode mode, const ScenarioFile& f) {
    ResultTable t;
    t.header = base_header(mode, f);
    const ForceOptions& o = f.options;
    using Row = std::vector<double>;
    if (mode == RunMode::neq) {
        t.columns = {"z_m", "neq_ew_N", "neq_pw_N", "achieved_tolerance"};
        t.rows = parallel_rows<Row>(f.z_m.size(), [&](std::size_t i) {
            const NeqCorrection n = neq_correction(at(f, f.z_m[i], f.scenario.tau), o);
            return Row{f.z_m[i], n.ew, n.pw, n.achieved_tolerance};
        });
        return t;
    }
    // eq and steady share one layout so equal temperatures give identical rows.
    t.columns = {"z_m", "eq_N", "ff_ew_N", "ff_pw_N", "neq_ew_N", "neq_pw_N", "total_N", "achieved_tolerance"};
    t.rows = parallel_rows<Row>(f.z_m.size(), [&](std::size_t i) {
        const Scenario s = at(f, f.z_m[i], f.scenario.tau);
        if (mode == RunMode::eq) {
            const EquilibriumForce e = ff_force(s, s.field_temperature, o);
            return Row{f.z_m[i], e.total, e.ew, e.pw, 0.0, 0.0, e.total, e.achieved_tolerance};
        }
        const ForceBreakdown b = steady_total_force(s, o, true);
        const auto& c = b.components;
        return Row{f.z_m[i],
                   c.at(Component::eq),
                   c.at(Component::ff_ew),
                   c.at(Component::ff_pw),
                   c.at(Component::neq_ew),
                   c.at(Component::neq_pw),
                   b.total,
                   b.achieved_tolerance};
    });
    return t;
}

void require_drude(const ScenarioFile& f) {
    if (f.scenario.medium.model != DielectricModel::drude)
        throw ScenarioError("dynamical eddy-current force needs medium.model = drude");
}

ResultTable dyn_table(const ScenarioFile& f) {
    require_drude(f);
    ResultTable t;
    t.header = base_header(RunMode::dyn, f);
    t.columns = {"z_m", "tau_s", "dyn_eddy_N", "closed_N", "mean_N", "envelope_upper_N", "envelope_lower_N"};
    const std::size_t nz = f.z_m.size(), nt = f.tau_s.size();
    std::vector<std::string> warnings;
    using Row = std::pair<std::vector<double>, std::vector<std::string>>;
    auto rows = parallel_rows<Row>(nz * nt, [&](std::size_t i) {
        const Scenario s = at(f, f.z_m[i / nt], f.tau_s[i % nt]);
        const DynamicForce d = dyn_eddy_force_integral(s, f.options);
        const DynamicClosedForm c = dyn_eddy_force_closed(s);
        return Row{{s.z, s.tau, d.value, c.value, c.mean, c.envelope_upper, c.envelope_lower}, d.warnings};
    });
    std::set<std::string> seen;
    for (auto& [r, w] : rows) {
        t.rows.push_back(std::move(r));
        for (auto& msg : w)
            if (seen.insert(msg).second) t.header.push_back("warning: " + msg);
    }
    return t;
}

std::vector<ResultTable> fig2_tables(const ScenarioFile& f) {
    require_drude(f);
    ResultTable space, time;
    space.name = "space";
    time.name = "time";
    space.header = time.header = base_header(RunMode::fig2, f);
    space.header.push_back("mean force (oscillating cosine term dropped) vs z at tau = 1, 2, 3, 4 us");
    time.header.push_back("mean force and envelopes vs tau at z = 1 um");

    const std::vector<double> taus{1e-6, 2e-6, 3e-6, 4e-6};
    space.columns = {"z_m"};
    for (int i = 1; i <= 4; ++i) space.columns.push_back("mean_N_tau_" + std::to_string(i) + "us");
    constexpr int nz = 91;
    for (int i = 0; i < nz; ++i) {
        const double z = 0.5e-6 + 4.5e-6 * i / (nz - 1);
        std::vector<double> row{z};
        for (double tau : taus) row.push_back(dyn_eddy_force_closed(at(f, z, f.scenario.t_i + tau)).mean);
        space.rows.push_back(row);
    }

    time.columns = {"tau_s", "mean_N", "envelope_upper_N", "envelope_lower_N"};
    constexpr int nt = 401;
    for (int i = 0; i < nt; ++i) {
        const double tau = 1e-6 + 4e-6 * i / (nt - 1);
        const DynamicClosedForm c = dyn_eddy_force_closed(at(f, 1e-6, f.scenario.t_i + tau));
        time.rows.push_back({tau, c.mean, c.envelope_upper, c.envelope_lower});
    }
    return {space, time};
}

ResultTable validate_table(const ScenarioFile& f) {
    ResultTable t;
    t.header = base_header(RunMode::validate, f);
    t.label_column = "quantity";
    t.columns = {"rel_error", "tolerance", "pass"};
    for (const OracleReport& r : run_oracle_suite(f.scenario, f.options)) {
        t.labels.push_back(r.name);
        t.rows.push_back({r.rel_error, r.tolerance, r.pass ? 1.0 : 0.0});
    }
    return t;
}

}  // namespace

std::vector<ResultTable> run(RunMode mode, const ScenarioFile& f) {
    switch (mode) {
        case RunMode::eq:
        case RunMode::steady:
        case RunMode::neq: return {static_table(mode, f)};
        case RunMode::dyn: return {dyn_table(f)};
        case RunMode::fig2: return fig2_tables(f);
        case RunMode::validate: return {validate_table(f)};
    }
    return {};
}

bool all_reports_pass(const ResultTable& t) {
    const auto it = std::find(t.columns.begin(), t.columns.end(), "pass");
    if (it == t.columns.end()) return false;
    const std::size_t c = std::size_t(it - t.columns.begin());
    return std::all_of(t.rows.begin(), t.rows.end(), [&](const auto& r) { return r[c] == 1.0; });
}

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
}

}  // namespace

void emit(const ResultTable& t, Format fmt, std::ostream& out) {
    std::vector<std::string> cols = t.columns;
    if (!t.label_column.empty()) cols.insert(cols.begin(), t.label_column);
    if (fmt == Format::csv) {
        for (const auto& h : t.header) out << "# " << h << '\n';
        if (!t.name.empty()) out << "# table: " << t.name << '\n';
        out << "# columns: " << join(cols) << '\n';
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            std::string line = t.label_column.empty() ? "" : "\"" + t.labels.at(i) + "\"";
            for (std::size_t j = 0; j < t.rows[i].size(); ++j)
                line += (line.empty() && j == 0 ? "" : ",") + fmt17(t.rows[i][j]);
            out << line << '\n';
        }
        return;
    }
    json j;
    j["header"] = t.header;
    j["table"] = t.name;
    j["columns"] = cols;
    json rows = json::array();
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        json r = json::array();
        if (!t.label_column.empty()) r.push_back(t.labels.at(i));
        for (double x : t.rows[i]) r.push_back(x);
        rows.push_back(r);
    }
    j["rows"] = rows;
    out << j.dump(2) << '\n';
}

void emit(const ResultTable& t, Format fmt, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    emit(t, fmt, out);
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::string suffixed_path(const std::string& path, const std::string& suffix) {
    if (suffix.empty()) return path;
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + "_" + suffix;
    return path.substr(0, dot) + "_" + suffix + path.substr(dot);
}

ResultTable parse_csv(std::istream& in) {
    ResultTable t;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = line.size() > 2 ? line.substr(2) : "";
            if (body.rfind("columns: ", 0) == 0) {
                std::stringstream ss(body.substr(9));
                std::string c;
                while (std::getline(ss, c, ',')) t.columns.push_back(c);
            } else if (body.rfind("table: ", 0) == 0) {
                t.name = body.substr(7);
            } else {
                t.header.push_back(body);
            }
            continue;
        }
        std::vector<double> row;
        std::size_t pos = 0;
        if (line[0] == '"') {
            const auto close = line.find('"', 1);
            t.labels.push_back(line.substr(1, close - 1));
            pos = close + 2;
        }
        while (pos <= line.size()) {
            const auto comma = std::min(line.find(',', pos), line.size());
            row.push_back(std::strtod(line.substr(pos, comma - pos).c_str(), nullptr));
            pos = comma + 1;
        }
        t.rows.push_back(std::move(row));
    }
    if (!t.labels.empty() && !t.columns.empty()) {
        t.label_column = t.columns.front();
        t.columns.erase(t.columns.begin());
    }
    return t;
}

ResultTable parse_json_table(std::istream& in) {
    json j;
    in >> j;
    ResultTable t;
    t.header = j.at("header").get<std::vector<std::string>>();
    t.name = j.at("table").get<std::string>();
    t.columns = j.at("columns").get<std::vector<std::string>>();
    const bool labelled = !j.at("rows").empty() && j.at("rows")[0].size() > 0 && j.at("rows")[0][0].is_string();
    if (labelled) {
        t.label_column = t.columns.front();
        t.columns.erase(t.columns.begin());
    }
    for (const json& r : j.at("rows")) {
        std::vector<double> row;
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (labelled && k == 0)
                t.labels.push_back(r[k].get<std::string>());
            else
                row.push_back(r[k].get<double>());
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace noneqcp
