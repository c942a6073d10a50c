// Scenario runner for safety-critical control of networked SIR epidemics.
//
//   epicbf run <scenario> [--seeds a..b] [--override key=value]... [--config file] [--out dir]
//   epicbf compare <a> <b> --seeds a..b [--override key=value]... [--out dir]
//   epicbf feasibility [--scenario name] [--override key=value]... [--config file]
//
// Exit codes: 0 ok, 1 internal error, 2 bad arguments or config,
// 3 output not writable, 4 simulation aborted on a non-finite state.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "epicbf/report.hpp"
#include "epicbf/scenario.hpp"

namespace {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kBadConfig = 2,
    kOutput = 3,
    kSimulation = 4,
};

std::filesystem::path default_out_dir()
{
    if (const char* env = std::getenv("EPICBF_OUT_DIR"); env && *env)
        return env;
    return "epicbf-out";
}

std::vector<std::pair<std::string, std::string>> split_overrides(const std::vector<std::string>& raw)
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& item : raw) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw epicbf::ConfigError("override '" + item + "' is not key=value");
        out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Control barrier function controllers for networked SIR epidemics"};
    app.require_subcommand(1);

    std::string seeds_text = "0";
    std::vector<std::string> overrides;
    std::string out_dir = default_out_dir().string();
    std::string config_file;
    unsigned threads = 0;

    auto* run = app.add_subcommand("run", "Run a scenario for one or more seeds");
    std::string run_name;
    run->add_option("scenario", run_name, "nominal | nominal-noise | rcbf-independent | rcbf-lowprev")
        ->required();
    run->add_option("--seeds", seeds_text, "Seeds: a..b, a,b,c, or a single value");
    run->add_option("--override", overrides, "Config override key=value (repeatable)");
    run->add_option("--config", config_file, "Config file applied before overrides");
    run->add_option("--out", out_dir, "Output directory (default: $EPICBF_OUT_DIR or ./epicbf-out)");
    run->add_option("--threads", threads, "Worker threads (0 = all cores)");

    auto* cmp = app.add_subcommand("compare", "Paired-seed comparison of two scenarios");
    std::string name_a, name_b;
    std::string compare_out;
    cmp->add_option("a", name_a, "First scenario")->required();
    cmp->add_option("b", name_b, "Second scenario")->required();
    cmp->add_option("--seeds", seeds_text, "Seeds shared by both scenarios")->required();
    cmp->add_option("--override", overrides, "Config override applied to both scenarios");
    cmp->add_option("--out", compare_out, "Also write comparison.csv under this directory");
    cmp->add_option("--threads", threads, "Worker threads (0 = all cores)");

    auto* feas = app.add_subcommand("feasibility", "Worst-case control requirements per node");
    std::string feas_name = "nominal";
    feas->add_option("--scenario", feas_name, "Preset supplying the model");
    feas->add_option("--override", overrides, "Config override key=value (repeatable)");
    feas->add_option("--config", config_file, "Config file applied before overrides");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kBadConfig;
    }

    try {
        if (*run) {
            epicbf::Scenario scenario;
            scenario.name = epicbf::parse_scenario_name(run_name);
            scenario.seeds = epicbf::parse_seed_list(seeds_text);
            scenario.overrides = split_overrides(overrides);
            if (!config_file.empty())
                scenario.config_file = config_file;
            const auto records = epicbf::run_scenario(scenario, out_dir, threads);
            epicbf::write_summary(std::cout, run_name, records);
            std::cout << "\noutput: " << (std::filesystem::path(out_dir) / run_name).string() << '\n';
        } else if (*cmp) {
            epicbf::Scenario a, b;
            a.name = epicbf::parse_scenario_name(name_a);
            b.name = epicbf::parse_scenario_name(name_b);
            a.overrides = b.overrides = split_overrides(overrides);
            const auto report = epicbf::compare(a, b, epicbf::parse_seed_list(seeds_text), threads);
            epicbf::write_comparison(std::cout, report);
            if (!compare_out.empty()) {
                std::filesystem::create_directories(compare_out);
                const auto path = std::filesystem::path(compare_out) / ("compare_" + name_a + "_vs_" + name_b + ".csv");
                std::ofstream file(path);
                epicbf::write_comparison(file, report);
                if (!file.flush())
                    throw epicbf::OutputError("cannot write " + path.string());
            }
        } else if (*feas) {
            epicbf::Scenario scenario;
            scenario.name = epicbf::parse_scenario_name(feas_name);
            scenario.overrides = split_overrides(overrides);
            if (!config_file.empty())
                scenario.config_file = config_file;
            epicbf::write_feasibility_report(std::cout, scenario.effective_config(0));
        }
    } catch (const epicbf::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kBadConfig;
    } catch (const epicbf::OutputError& e) {
        std::cerr << "output error: " << e.what() << '\n';
        return kOutput;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "output error: " << e.what() << '\n';
        return kOutput;
    } catch (const epicbf::SimulationError& e) {
        std::cerr << "simulation aborted: " << e.what() << '\n';
        return kSimulation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kBadConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInternal;
    }
    return kOk;
}
