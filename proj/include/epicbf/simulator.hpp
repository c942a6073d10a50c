#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "epicbf/controller.hpp"
#include "epicbf/disturbance.hpp"
#include "epicbf/model.hpp"
#include "epicbf/robust.hpp"

namespace epicbf {

enum class PolicyKind { None, Nominal, RobustIndependent, RobustLowPrevalence };

/// Which controller drives the network. The compensation fields are only
/// read by the robust kinds.
struct ControlPolicy
{
    PolicyKind kind = PolicyKind::Nominal;
    double mu_bar = 0.15;
    double d_bar = 0.15;
    double delta = 0.01;

    CompensationSpec compensation() const;
};

struct SimConfig
{
    double dt = 1e-4;
    double horizon = 25.0;
    std::int64_t record_stride = 100;
    ControlPolicy policy;
    DisturbanceModel disturbance;
    ClassKGain gain;
    Eigen::VectorXd x0;
    Eigen::VectorXd r0;

    std::int64_t step_count() const;
    void validate(const NetworkModel& model) const;
};

/// Raised when the state stops being finite; carries the step and node.
class SimulationError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct TrajectorySample
{
    double t = 0.0;
    Eigen::VectorXd x;
    Eigen::VectorXd r;
    Eigen::VectorXd u;
    Eigen::VectorXd h;
    std::vector<bool> saturated;
};

using Trajectory = std::vector<TrajectorySample>;

struct RunMetrics
{
    Eigen::VectorXd x_max;
    Eigen::VectorXd u_max;
    Eigen::VectorXd min_margin;
    double avg_min_margin = 0.0;
    double integrated_control = 0.0;
    std::int64_t violations = 0;  // recorded samples with some x_i > x_bar_i

    // Full-resolution counters.
    std::int64_t clamp_events = 0;      // steps where the simplex projection moved the state
    std::int64_t saturated_steps = 0;   // steps where some node ran at its cap
};

/// Control law of the configured policy, evaluated on the true state.
ControlDecision decide(const NetworkModel& model, const NetworkState& state,
                       const SimConfig& config);

struct AdvanceResult
{
    NetworkState state;
    bool clamped = false;
};

/// One explicit Euler step with disturbance mu on the x channel only, then
/// projection onto {r_i in [0, 1], x_i in [0, 1 - r_i]}.
AdvanceResult advance(const NetworkModel& model, const NetworkState& state,
                      const Eigen::VectorXd& u, const Eigen::VectorXd& mu, double dt);

struct StepResult
{
    NetworkState state;
    ControlDecision control;  // input applied during the step
    bool clamped = false;
};

StepResult step(const NetworkModel& model, const NetworkState& state, const SimConfig& config,
                Rng& rng);

struct SimulationResult
{
    Trajectory trajectory;
    RunMetrics metrics;
};

/// Runs step_count() Euler steps from (x0, r0). Records every
/// record_stride-th state plus the final one; metrics are taken over the
/// recorded samples, with integrated control as a left Riemann sum.
SimulationResult simulate(const NetworkModel& model, const SimConfig& config);

}  // namespace epicbf
