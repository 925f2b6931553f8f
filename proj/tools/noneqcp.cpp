// noneqcp <mode> [--scenario file.json] [--out file.csv] [--format csv|json] [--tol X]
// Exit codes: 0 success, 2 invalid input or failed validation, 1 any other error.

#include <CLI11.hpp>
#include <iostream>

#include "noneqcp/errors.hpp"
#include "noneqcp/scenario_io.hpp"

int main(int argc, char** argv) {
    using namespace noneqcp;
    CLI::App app{"Atom-surface fluctuation forces: equilibrium, nonequilibrium steady state and eddy-current dynamics"};
    std::string mode_name, scenario_path, out_path, format_name = "csv";
    double tol = 0.0;
    app.add_option("mode", mode_name, "eq | steady | neq | dyn | fig2 | validate")->required();
    app.add_option("--scenario", scenario_path, "scenario JSON; gold/rubidium defaults when omitted");
    app.add_option("--out", out_path, "output file (fig2 writes <stem>_space and <stem>_time)");
    app.add_option("--format", format_name, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--tol", tol, "relative quadrature tolerance")->check(CLI::PositiveNumber);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    RunMode mode;
    ScenarioFile scenario;
    Format format;
    try {
        mode = run_mode_from_string(mode_name);
        format = format_from_string(format_name);
        scenario = scenario_path.empty() ? default_scenario() : load_scenario(scenario_path);
        if (tol > 0) scenario.options.rel_tol = tol;
    } catch (const ScenarioError& e) {
        std::cerr << "noneqcp: " << e.what() << '\n';
        return 2;
    }

    try {
        const std::vector<ResultTable> tables = run(mode, scenario);
        for (const ResultTable& t : tables) {
            if (out_path.empty())
                emit(t, format, std::cout);
            else
                emit(t, format, suffixed_path(out_path, t.name));
        }
        if (mode == RunMode::validate && !all_reports_pass(tables.front())) {
            std::cerr << "noneqcp: validation failed\n";
            return 2;
        }
    } catch (const ScenarioError& e) {
        std::cerr << "noneqcp: " << e.what() << '\n';
        return 2;
    } catch (const ConvergenceError& e) {
        std::cerr << "noneqcp: " << e.what() << " (partial value " << e.partial_value() << ", achieved tolerance "
                  << e.achieved_tolerance() << ")\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "noneqcp: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
