#pragma once

#include <vector>

#include "epicbf/model.hpp"

namespace epicbf {

/// Linear extended class-K function alpha(h) = kappa * h.
class ClassKGain
{
public:
    ClassKGain() = default;
    explicit ClassKGain(double kappa);

    double kappa() const { return kappa_; }
    double operator()(double h) const { return kappa_ * h; }

private:
    double kappa_ = 1.0;
};

/// Clipped control per node plus a flag for nodes where the unclipped
/// requirement exceeded u_bar_i (the barrier condition cannot be met there).
struct ControlDecision
{
    Eigen::VectorXd u;
    std::vector<bool> saturated;
};

/// Worst-case input requirement per node and whether the cap covers it.
struct FeasibilityReport
{
    Eigen::VectorXd required_effort;
    std::vector<bool> vulnerable;  // required_effort_i > u_bar_i

    bool any_vulnerable() const;
};

/// Smallest u_i (unclipped) with  dh_i/dt >= -alpha(h_i):
///   [s_i * sum_j beta_ij x_j - gamma_i x_i - alpha(x_bar_i - x_i)] / x_i.
/// Throws std::domain_error when x_i == 0, where g_i vanishes.
double required_control(const NetworkModel& model, const NetworkState& state,
                        const ClassKGain& gain, Eigen::Index i);

/// Closed-form CBF input min(u_bar_i, max(0, required_control_i)); zero at
/// nodes with x_i == 0, which lie strictly inside the safe set.
Eigen::VectorXd nominal_control(const NetworkModel& model, const NetworkState& state,
                                const ClassKGain& gain);

ControlDecision nominal_decision(const NetworkModel& model, const NetworkState& state,
                                 const ClassKGain& gain);

/// Worst case over the safe set: every node sits at its threshold and r_i is
/// at its initial value. Requires r0_i in [0, 1 - x_bar_i].
FeasibilityReport feasibility_analysis(const NetworkModel& model, const Eigen::VectorXd& r0);

/// r0 unknown: assume nobody has recovered yet.
FeasibilityReport feasibility_analysis(const NetworkModel& model);

}  // namespace epicbf
