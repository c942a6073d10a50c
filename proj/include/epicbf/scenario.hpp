#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "epicbf/config.hpp"

namespace epicbf {

enum class ScenarioName { Nominal, NominalNoise, RcbfIndependent, RcbfLowPrev };

ScenarioName parse_scenario_name(std::string_view text);  // throws ConfigError
const char* scenario_name(ScenarioName name);

/// Three-node reference network: beta = 0.55 on the diagonal and 0.45 off it,
/// gamma = 0.3, thresholds (0.45, 0.35, 0.40), caps (0.55, 0.77, 0.41).
NetworkModel reference_network();

/// Class-K gain used by every preset. See README for how it was chosen.
inline constexpr double kPresetGain = 8.0;

/// Complete configuration for a preset: reference network, x0 = (0.1, 0, 0),
/// r0 = 0, dt = 1e-4, T = 25, plus the policy/disturbance pair:
///   nominal           nominal CBF, no noise
///   nominal-noise     nominal CBF, unclipped N(0, 1) noise
///   rcbf-independent  robust CBF with sigma = 0.15, noise clipped to 0.15
///   rcbf-lowprev      robust CBF with sigma = 0.15 / sqrt(x + 0.01),
///                     clipped noise scaled by 1 / sqrt(x + 0.01)
RunConfig preset(ScenarioName name);

struct Scenario
{
    ScenarioName name = ScenarioName::Nominal;
    std::vector<std::pair<std::string, std::string>> overrides;  // applied in order
    std::optional<std::filesystem::path> config_file;            // applied before overrides
    std::vector<std::uint64_t> seeds{0};

    /// Preset + config file + overrides, with the disturbance seed set.
    RunConfig effective_config(std::uint64_t seed) const;
};

/// "a..b" (inclusive), "a,b,c", or a single integer.
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

struct RunRecord
{
    std::uint64_t seed = 0;
    RunConfig config;
    SimulationResult result;
};

/// Runs every seed, in parallel when threads != 1 (0 = hardware
/// concurrency). Results come back in seed-list order and do not depend on
/// the thread count.
std::vector<RunRecord> run_batch(const Scenario& scenario, unsigned threads = 0);

/// Writes, under out_dir/<scenario>:
///   seed_<s>/trajectory.csv, seed_<s>/metrics.csv, seed_<s>/config.txt
///   aggregate.csv (more than one seed), feasibility.txt, summary.txt
/// Returns the batch so callers can inspect it.
std::vector<RunRecord> run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir,
                                    unsigned threads = 0);

/// Failure to create or write an output file.
class OutputError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct MetricComparison
{
    std::string metric;
    double mean_a = 0.0;
    double mean_b = 0.0;
    double mean_difference = 0.0;   // mean of (a - b) over paired seeds
    double max_abs_difference = 0.0;
    double fraction_a_greater = 0.0;
    double fraction_b_greater = 0.0;
    double fraction_equal = 0.0;
};

struct ComparisonReport
{
    std::string label_a;
    std::string label_b;
    std::vector<std::uint64_t> seeds;
    std::vector<MetricComparison> metrics;

    const MetricComparison& at(std::string_view metric) const;
};

/// Paired-seed comparison: run i of `a` and run i of `b` share seeds[i].
ComparisonReport compare(const Scenario& a, const Scenario& b,
                         const std::vector<std::uint64_t>& seeds, unsigned threads = 0);

}  // namespace epicbf
