#include "epicbf/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace epicbf {

CompensationSpec ControlPolicy::compensation() const
{
    switch (kind) {
    case PolicyKind::RobustIndependent:
        return CompensationSpec::independent(mu_bar);
    case PolicyKind::RobustLowPrevalence:
        return CompensationSpec::low_prevalence(d_bar, delta);
    default:
        return CompensationSpec::independent(0.0);
    }
}

std::int64_t SimConfig::step_count() const
{
    const double ratio = horizon / dt;
    const double nearest = std::round(ratio);
    if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio))
        return static_cast<std::int64_t>(nearest);
    return static_cast<std::int64_t>(std::ceil(ratio));
}

void SimConfig::validate(const NetworkModel& model) const
{
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("dt must be positive");
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::invalid_argument("horizon T must be positive");
    if (record_stride < 1)
        throw std::invalid_argument("record_stride must be at least 1");
    if (x0.size() != model.size() || r0.size() != model.size())
        throw DimensionMismatch("initial state length must match node count");
    NetworkState{x0, r0}.validate();
    disturbance.validate();
    if (policy.kind == PolicyKind::RobustIndependent || policy.kind == PolicyKind::RobustLowPrevalence)
        policy.compensation().validate();
}

ControlDecision decide(const NetworkModel& model, const NetworkState& state,
                       const SimConfig& config)
{
    switch (config.policy.kind) {
    case PolicyKind::None:
        return {Eigen::VectorXd::Zero(model.size()), std::vector<bool>(model.size(), false)};
    case PolicyKind::Nominal:
        return nominal_decision(model, state, config.gain);
    case PolicyKind::RobustIndependent:
    case PolicyKind::RobustLowPrevalence:
        return robust_control(model, state, config.gain, config.policy.compensation());
    }
    throw std::logic_error("unknown policy kind");
}

AdvanceResult advance(const NetworkModel& model, const NetworkState& state,
                      const Eigen::VectorXd& u, const Eigen::VectorXd& mu, double dt)
{
    const NodeRates f = drift(model, state);
    const auto n = model.size();

    AdvanceResult out{NetworkState::zeros(n), false};
    for (Eigen::Index i = 0; i < n; ++i) {
        const double removal = state.x[i] * u[i];
        const double x = state.x[i] + dt * (f.dx[i] - removal + mu[i]);
        const double r = state.r[i] + dt * (f.dr[i] + removal);
        if (!std::isfinite(x) || !std::isfinite(r)) {
            std::ostringstream os;
            os << "non-finite state at node " << i << " (x=" << x << ", r=" << r << ")";
            throw SimulationError(os.str());
        }
        // noise only enters x, so any excess over the simplex is taken from x and r stays monotone
        const double rc = std::clamp(r, 0.0, 1.0);
        const double xc = std::clamp(x, 0.0, 1.0 - rc);
        out.clamped = out.clamped || xc != x || rc != r;
        out.state.x[i] = xc;
        out.state.r[i] = rc;
    }
    return out;
}

StepResult step(const NetworkModel& model, const NetworkState& state, const SimConfig& config,
                Rng& rng)
{
    ControlDecision control = decide(model, state, config);
    Eigen::VectorXd mu(model.size());
    for (Eigen::Index i = 0; i < model.size(); ++i)
        mu[i] = sample(config.disturbance, state.x[i], rng);
    AdvanceResult next = advance(model, state, control.u, mu, config.dt);
    return {std::move(next.state), std::move(control), next.clamped};
}

namespace {

class MetricsAccumulator
{
public:
    explicit MetricsAccumulator(const NetworkModel& model) : x_bar_(model.x_bar)
    {
        const auto n = model.size();
        m_.x_max = Eigen::VectorXd::Constant(n, -std::numeric_limits<double>::infinity());
        m_.u_max = Eigen::VectorXd::Constant(n, -std::numeric_limits<double>::infinity());
        m_.min_margin = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
    }

    void add(const TrajectorySample& s)
    {
        m_.x_max = m_.x_max.cwiseMax(s.x);
        m_.u_max = m_.u_max.cwiseMax(s.u);
        m_.min_margin = m_.min_margin.cwiseMin(s.h);
        if ((s.x.array() > x_bar_.array()).any())
            ++m_.violations;
        if (has_prev_)
            m_.integrated_control += prev_effort_ * (s.t - prev_t_);
        prev_effort_ = s.u.sum();
        prev_t_ = s.t;
        has_prev_ = true;
    }

    RunMetrics& counters() { return m_; }

    RunMetrics finish()
    {
        m_.avg_min_margin = m_.min_margin.mean();
        return m_;
    }

private:
    Eigen::VectorXd x_bar_;
    RunMetrics m_;
    bool has_prev_ = false;
    double prev_effort_ = 0.0;
    double prev_t_ = 0.0;
};

}  // namespace

SimulationResult simulate(const NetworkModel& model, const SimConfig& config)
{
    model.validate();
    config.validate(model);

    const std::int64_t steps = config.step_count();
    Rng rng(config.disturbance.seed);
    MetricsAccumulator metrics(model);
    Trajectory trajectory;
    trajectory.reserve(static_cast<std::size_t>(steps / config.record_stride + 2));

    NetworkState state{config.x0, config.r0};
    auto record = [&](std::int64_t k, const ControlDecision& control) {
        TrajectorySample s{static_cast<double>(k) * config.dt, state.x, state.r, control.u,
                           model.x_bar - state.x, control.saturated};
        metrics.add(s);
        trajectory.push_back(std::move(s));
    };

    for (std::int64_t k = 0; k < steps; ++k) {
        StepResult next;
        try {
            next = step(model, state, config, rng);
        } catch (const SimulationError& e) {
            std::ostringstream os;
            os << "step " << k << " (t=" << static_cast<double>(k) * config.dt << "): " << e.what();
            throw SimulationError(os.str());
        }
        if (k % config.record_stride == 0)
            record(k, next.control);
        const auto& sat = next.control.saturated;
        if (std::find(sat.begin(), sat.end(), true) != sat.end())
            ++metrics.counters().saturated_steps;
        if (next.clamped)
            ++metrics.counters().clamp_events;
        state = std::move(next.state);
    }
    record(steps, decide(model, state, config));
    return {std::move(trajectory), metrics.finish()};
}

}  // namespace epicbf
