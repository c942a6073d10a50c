#include "epicbf/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace epicbf {

namespace {

std::string fixed17(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

void write_vector_cells(std::ostream& out, const Eigen::VectorXd& v)
{
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out << ',' << fixed17(v[i]);
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory)
{
    const auto n = trajectory.empty() ? Eigen::Index{0} : trajectory.front().x.size();
    out << 't';
    for (const char* prefix : {"x_", "r_", "u_", "h_", "sat_"})
        for (Eigen::Index i = 1; i <= n; ++i)
            out << ',' << prefix << i;
    out << '\n';

    for (const auto& s : trajectory) {
        out << fixed17(s.t);
        write_vector_cells(out, s.x);
        write_vector_cells(out, s.r);
        write_vector_cells(out, s.u);
        write_vector_cells(out, s.h);
        for (bool flag : s.saturated)
            out << ',' << (flag ? '1' : '0');
        out << '\n';
    }
}

std::vector<std::pair<std::string, double>> metric_fields(const RunMetrics& m)
{
    std::vector<std::pair<std::string, double>> fields;
    auto per_node = [&](const char* name, const Eigen::VectorXd& v) {
        for (Eigen::Index i = 0; i < v.size(); ++i)
            fields.emplace_back(std::string(name) + "_" + std::to_string(i + 1), v[i]);
    };
    per_node("x_max", m.x_max);
    per_node("u_max", m.u_max);
    per_node("min_margin", m.min_margin);
    fields.emplace_back("avg_min_margin", m.avg_min_margin);
    fields.emplace_back("integrated_control", m.integrated_control);
    fields.emplace_back("violations", static_cast<double>(m.violations));
    fields.emplace_back("clamp_events", static_cast<double>(m.clamp_events));
    fields.emplace_back("saturated_steps", static_cast<double>(m.saturated_steps));
    return fields;
}

void write_metrics_csv(std::ostream& out, const RunMetrics& metrics)
{
    out << "metric,value\n";
    for (const auto& [name, value] : metric_fields(metrics))
        out << name << ',' << fixed17(value) << '\n';
}

std::vector<AggregateRow> aggregate(const std::vector<RunMetrics>& runs)
{
    std::vector<AggregateRow> rows;
    if (runs.empty())
        return rows;

    std::vector<std::vector<std::pair<std::string, double>>> table;
    table.reserve(runs.size());
    for (const auto& run : runs)
        table.push_back(metric_fields(run));

    const double count = static_cast<double>(runs.size());
    for (std::size_t f = 0; f < table.front().size(); ++f) {
        AggregateRow row;
        row.metric = table.front()[f].first;
        row.min = row.max = table.front()[f].second;
        double sum = 0.0;
        for (const auto& fields : table) {
            const double v = fields[f].second;
            sum += v;
            row.min = std::min(row.min, v);
            row.max = std::max(row.max, v);
        }
        row.mean = sum / count;
        if (runs.size() > 1) {
            double sq = 0.0;
            for (const auto& fields : table)
                sq += (fields[f].second - row.mean) * (fields[f].second - row.mean);
            row.stddev = std::sqrt(sq / (count - 1.0));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows)
{
    out << "metric,mean,std,min,max\n";
    for (const auto& row : rows)
        out << row.metric << ',' << fixed17(row.mean) << ',' << fixed17(row.stddev) << ','
            << fixed17(row.min) << ',' << fixed17(row.max) << '\n';
}

void write_feasibility_report(std::ostream& out, const RunConfig& config)
{
    const auto& model = config.model;
    const auto& policy = config.sim.policy;
    const Eigen::VectorXd r0 = config.sim.r0;

    const FeasibilityReport nominal = feasibility_analysis(model, r0);
    const FeasibilityReport independent =
        robust_feasibility(model, r0, CompensationSpec::independent(policy.mu_bar));
    const FeasibilityReport lowprev =
        robust_feasibility(model, r0, CompensationSpec::low_prevalence(policy.d_bar, policy.delta));

    out << "# worst-case control requirement per node (all nodes at threshold, r = r0)\n";
    out << "# mu_bar = " << format_double(policy.mu_bar) << ", d_bar = " << format_double(policy.d_bar)
        << ", delta = " << format_double(policy.delta) << '\n';
    out << "node,u_bar,nominal_required,nominal_vulnerable,independent_required,"
           "independent_vulnerable,lowprev_required,lowprev_vulnerable\n";
    for (Eigen::Index i = 0; i < model.size(); ++i) {
        out << i + 1 << ',' << fixed17(model.u_bar[i]) << ',' << fixed17(nominal.required_effort[i])
            << ',' << nominal.vulnerable[i] << ',' << fixed17(independent.required_effort[i]) << ','
            << independent.vulnerable[i] << ',' << fixed17(lowprev.required_effort[i]) << ','
            << lowprev.vulnerable[i] << '\n';
    }
}

void write_summary(std::ostream& out, const std::string& label, const std::vector<RunRecord>& runs)
{
    if (runs.empty())
        return;
    std::vector<RunMetrics> metrics;
    for (const auto& run : runs)
        metrics.push_back(run.result.metrics);
    const auto rows = aggregate(metrics);
    auto mean_of = [&](const std::string& name) {
        for (const auto& row : rows)
            if (row.metric == name)
                return row.mean;
        return std::nan("");
    };

    const auto n = runs.front().config.model.size();
    std::int64_t violating = 0;
    for (const auto& m : metrics)
        violating += m.violations > 0 ? 1 : 0;

    out << label << " (" << runs.size() << (runs.size() == 1 ? " run" : " runs, means") << ")\n\n";
    out << std::fixed << std::setprecision(3);
    out << "node    x_max    u_max    x_bar\n";
    for (Eigen::Index i = 1; i <= n; ++i) {
        const std::string k = std::to_string(i);
        out << std::setw(4) << i << "  " << std::setw(7) << mean_of("x_max_" + k) << "  "
            << std::setw(7) << mean_of("u_max_" + k) << "  " << std::setw(7)
            << runs.front().config.model.x_bar[i - 1] << '\n';
    }
    out << "\navg min safety margin  " << mean_of("avg_min_margin") << '\n';
    out << "integrated control     " << mean_of("integrated_control") << '\n';
    out << "runs with violations   " << violating << " / " << runs.size() << '\n';
    out << std::defaultfloat << std::setprecision(6);
}

void write_comparison(std::ostream& out, const ComparisonReport& report)
{
    out << "paired comparison: A = " << report.label_a << ", B = " << report.label_b << ", "
        << report.seeds.size() << " seeds\n";
    out << "metric,mean_a,mean_b,mean_a_minus_b,max_abs_diff,frac_a_gt_b,frac_b_gt_a,frac_equal\n";
    for (const auto& m : report.metrics)
        out << m.metric << ',' << fixed17(m.mean_a) << ',' << fixed17(m.mean_b) << ','
            << fixed17(m.mean_difference) << ',' << fixed17(m.max_abs_difference) << ','
            << fixed17(m.fraction_a_greater) << ',' << fixed17(m.fraction_b_greater) << ','
            << fixed17(m.fraction_equal) << '\n';
}

}  // namespace epicbf
