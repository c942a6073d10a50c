#include "epicbf/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <thread>

#include "epicbf/report.hpp"

namespace epicbf {

namespace fs = std::filesystem;

ScenarioName parse_scenario_name(std::string_view text)
{
    if (text == "nominal") return ScenarioName::Nominal;
    if (text == "nominal-noise") return ScenarioName::NominalNoise;
    if (text == "rcbf-independent") return ScenarioName::RcbfIndependent;
    if (text == "rcbf-lowprev") return ScenarioName::RcbfLowPrev;
    throw ConfigError("unknown scenario '" + std::string(text) +
                      "' (expected nominal, nominal-noise, rcbf-independent, rcbf-lowprev)");
}

const char* scenario_name(ScenarioName name)
{
    switch (name) {
    case ScenarioName::Nominal: return "nominal";
    case ScenarioName::NominalNoise: return "nominal-noise";
    case ScenarioName::RcbfIndependent: return "rcbf-independent";
    case ScenarioName::RcbfLowPrev: return "rcbf-lowprev";
    }
    return "?";
}

NetworkModel reference_network()
{
    NetworkModel model;
    model.beta = Eigen::MatrixXd::Constant(3, 3, 0.45);
    model.beta.diagonal().setConstant(0.55);
    model.gamma = Eigen::VectorXd::Constant(3, 0.3);
    model.x_bar = Eigen::Vector3d(0.45, 0.35, 0.40);
    model.u_bar = Eigen::Vector3d(0.55, 0.77, 0.41);
    return model;
}

RunConfig preset(ScenarioName name)
{
    RunConfig config;
    config.model = reference_network();

    auto& sim = config.sim;
    sim.dt = 1e-4;
    sim.horizon = 25.0;
    sim.record_stride = 100;
    sim.gain = ClassKGain(kPresetGain);
    sim.x0 = Eigen::Vector3d(0.1, 0.0, 0.0);
    sim.r0 = Eigen::Vector3d::Zero();
    sim.policy = ControlPolicy{PolicyKind::Nominal, 0.15, 0.15, 0.01};
    sim.disturbance = DisturbanceModel{DisturbanceKind::None, 1.0, 0.15, 0.01, 0};

    switch (name) {
    case ScenarioName::Nominal:
        break;
    case ScenarioName::NominalNoise:
        sim.disturbance.kind = DisturbanceKind::UnboundedGaussian;
        break;
    case ScenarioName::RcbfIndependent:
        sim.policy.kind = PolicyKind::RobustIndependent;
        sim.disturbance.kind = DisturbanceKind::IndependentBounded;
        break;
    case ScenarioName::RcbfLowPrev:
        sim.policy.kind = PolicyKind::RobustLowPrevalence;
        sim.disturbance.kind = DisturbanceKind::LowPrevalenceBounded;
        break;
    }
    return config;
}

RunConfig Scenario::effective_config(std::uint64_t seed) const
{
    RunConfig config = preset(name);
    config.sim.disturbance.seed = seed;
    if (config_file) {
        std::ifstream in(*config_file);
        if (!in)
            throw ConfigError("cannot read config file " + config_file->string());
        apply_config_text(config, in);
        // Seed lists on the command line win over a seed stored in the file.
        config.sim.disturbance.seed = seed;
    }
    for (const auto& [key, value] : overrides)
        apply_setting(config, key, value);
    config.validate();
    return config;
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text)
{
    auto number = [&](std::string_view s) {
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
            throw ConfigError("bad seed '" + std::string(s) + "' in '" + std::string(text) + "'");
        return v;
    };

    std::vector<std::uint64_t> seeds;
    if (const auto dots = text.find(".."); dots != std::string_view::npos) {
        const auto lo = number(text.substr(0, dots));
        const auto hi = number(text.substr(dots + 2));
        if (hi < lo)
            throw ConfigError("empty seed range '" + std::string(text) + "'");
        for (auto s = lo;; ++s) {
            seeds.push_back(s);
            if (s == hi)
                break;
        }
        return seeds;
    }
    std::size_t pos = 0;
    while (true) {
        const auto comma = text.find(',', pos);
        seeds.push_back(number(text.substr(pos, comma - pos)));
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return seeds;
}

std::vector<RunRecord> run_batch(const Scenario& scenario, unsigned threads)
{
    std::vector<RunRecord> records(scenario.seeds.size());
    // Configs are built up front so config errors surface before any run.
    for (std::size_t k = 0; k < records.size(); ++k) {
        records[k].seed = scenario.seeds[k];
        records[k].config = scenario.effective_config(scenario.seeds[k]);
    }

    std::vector<std::exception_ptr> errors(records.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < records.size(); k = next++) {
            try {
                records[k].result = simulate(records[k].config.model, records[k].config.sim);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };

    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, records.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }

    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return records;
}

namespace {

std::ofstream open_output(const fs::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw OutputError("cannot write " + path.string());
    return out;
}

void finish(std::ofstream& out, const fs::path& path)
{
    out.flush();
    if (!out)
        throw OutputError("write failed for " + path.string());
}

template <typename Writer>
void write_file(const fs::path& path, Writer&& writer)
{
    auto out = open_output(path);
    writer(out);
    finish(out, path);
}

void make_dirs(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw OutputError("cannot create directory " + dir.string() +
                          (ec ? ": " + ec.message() : std::string()));
}

}  // namespace

std::vector<RunRecord> run_scenario(const Scenario& scenario, const fs::path& out_dir, unsigned threads)
{
    const fs::path root = out_dir / scenario_name(scenario.name);
    make_dirs(root);

    // Feasibility depends only on the model, so it is written before running.
    const RunConfig first = scenario.effective_config(scenario.seeds.at(0));
    write_file(root / "feasibility.txt", [&](std::ostream& o) { write_feasibility_report(o, first); });

    std::vector<RunRecord> records = run_batch(scenario, threads);
    for (const auto& rec : records) {
        const fs::path dir = root / ("seed_" + std::to_string(rec.seed));
        make_dirs(dir);
        write_file(dir / "config.txt", [&](std::ostream& o) { write_config_text(o, rec.config); });
        write_file(dir / "trajectory.csv",
                   [&](std::ostream& o) { write_trajectory_csv(o, rec.result.trajectory); });
        write_file(dir / "metrics.csv", [&](std::ostream& o) { write_metrics_csv(o, rec.result.metrics); });
    }

    if (records.size() > 1) {
        std::vector<RunMetrics> metrics;
        for (const auto& rec : records)
            metrics.push_back(rec.result.metrics);
        write_file(root / "aggregate.csv",
                   [&](std::ostream& o) { write_aggregate_csv(o, aggregate(metrics)); });
    }
    write_file(root / "summary.txt",
               [&](std::ostream& o) { write_summary(o, scenario_name(scenario.name), records); });
    return records;
}

const MetricComparison& ComparisonReport::at(std::string_view metric) const
{
    for (const auto& m : metrics)
        if (m.metric == metric)
            return m;
    throw std::out_of_range("no metric '" + std::string(metric) + "' in comparison");
}

ComparisonReport compare(const Scenario& a, const Scenario& b, const std::vector<std::uint64_t>& seeds,
                         unsigned threads)
{
    Scenario sa = a;
    Scenario sb = b;
    sa.seeds = seeds;
    sb.seeds = seeds;
    const auto runs_a = run_batch(sa, threads);
    const auto runs_b = run_batch(sb, threads);

    ComparisonReport report;
    report.label_a = scenario_name(a.name);
    report.label_b = scenario_name(b.name);
    report.seeds = seeds;
    if (seeds.empty())
        return report;

    auto wanted = [](const std::string& name) {
        return name.starts_with("x_max_") || name == "avg_min_margin" ||
               name == "integrated_control" || name == "violations";
    };

    const auto names = metric_fields(runs_a.front().result.metrics);
    const double count = static_cast<double>(seeds.size());
    for (std::size_t f = 0; f < names.size(); ++f) {
        if (!wanted(names[f].first))
            continue;
        MetricComparison mc;
        mc.metric = names[f].first;
        std::size_t a_greater = 0, b_greater = 0;
        for (std::size_t k = 0; k < seeds.size(); ++k) {
            const double va = metric_fields(runs_a[k].result.metrics)[f].second;
            const double vb = metric_fields(runs_b[k].result.metrics)[f].second;
            mc.mean_a += va;
            mc.mean_b += vb;
            mc.mean_difference += va - vb;
            mc.max_abs_difference = std::max(mc.max_abs_difference, std::abs(va - vb));
            a_greater += va > vb ? 1 : 0;
            b_greater += vb > va ? 1 : 0;
        }
        mc.mean_a /= count;
        mc.mean_b /= count;
        mc.mean_difference /= count;
        mc.fraction_a_greater = static_cast<double>(a_greater) / count;
        mc.fraction_b_greater = static_cast<double>(b_greater) / count;
        mc.fraction_equal = static_cast<double>(seeds.size() - a_greater - b_greater) / count;
        report.metrics.push_back(std::move(mc));
    }
    return report;
}

}  // namespace epicbf
