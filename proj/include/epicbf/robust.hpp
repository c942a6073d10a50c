#pragma once

#include "epicbf/controller.hpp"

namespace epicbf {

enum class CompensationKind { Independent, LowPrevalence };

/// Parameters of the compensation term sigma that tightens the barrier
/// condition against bounded disturbances.
///
/// Independent:    sigma = mu_bar, for a disturbance with |mu| <= mu_bar.
/// LowPrevalence:  sigma(x) = d_bar / sqrt(x + delta), for a disturbance
///                 d / sqrt(x + delta) with |d| <= d_bar. The relative error
///                 of small case counts grows as prevalence falls, so the
///                 margin does too.
struct CompensationSpec
{
    CompensationKind kind = CompensationKind::Independent;
    double mu_bar = 0.0;
    double d_bar = 0.0;
    double delta = 0.01;

    static CompensationSpec independent(double mu_bar);
    static CompensationSpec low_prevalence(double d_bar, double delta);

    void validate() const;

    // Largest sigma over the safe interval [0, x_bar]. Both kinds are
    // nonincreasing in x, so this is sigma(0).
    double worst_case() const;
};

double sigma(const CompensationSpec& spec, double x);

/// Least element of the robust admissible set intersected with [0, u_bar_i]:
///   min(u_bar_i, max(0, [s_i sum_j beta_ij x_j - gamma_i x_i
///                         - alpha(x_bar_i - x_i) + sigma(x_i)] / x_i)).
/// Nodes where the requirement exceeds u_bar_i get u_bar_i and a set flag.
ControlDecision robust_control(const NetworkModel& model, const NetworkState& state,
                               const ClassKGain& gain, const CompensationSpec& spec);

/// Worst-case bound with the compensation margin sigma_max / x_bar_i added.
FeasibilityReport robust_feasibility(const NetworkModel& model, const Eigen::VectorXd& r0,
                                     const CompensationSpec& spec);

/// sigma(x) - mu >= 0: the compensation dominates this disturbance sample.
bool compensation_sufficient(const CompensationSpec& spec, double mu_sample, double x);

}  // namespace epicbf
