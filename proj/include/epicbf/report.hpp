#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "epicbf/scenario.hpp"

namespace epicbf {

/// Header: t, x_1..x_n, r_1..r_n, u_1..u_n, h_1..h_n, sat_1..sat_n.
/// Reals are printed with 17 significant digits, flags as 0/1.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

/// Named scalar view of RunMetrics, in a fixed order: x_max_i, u_max_i,
/// min_margin_i, avg_min_margin, integrated_control, violations,
/// clamp_events, saturated_steps.
std::vector<std::pair<std::string, double>> metric_fields(const RunMetrics& metrics);

void write_metrics_csv(std::ostream& out, const RunMetrics& metrics);

struct AggregateRow
{
    std::string metric;
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation; 0 for a single run
    double min = 0.0;
    double max = 0.0;
};

std::vector<AggregateRow> aggregate(const std::vector<RunMetrics>& runs);

void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows);

/// Worst-case bounds for the nominal controller and both compensation
/// kinds, one row per node.
void write_feasibility_report(std::ostream& out, const RunConfig& config);

/// Peak infection/control per node and the network-level margin/effort,
/// averaged over the batch.
void write_summary(std::ostream& out, const std::string& label,
                   const std::vector<RunRecord>& runs);

void write_comparison(std::ostream& out, const ComparisonReport& report);

}  // namespace epicbf
