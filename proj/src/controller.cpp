#include "epicbf/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "detail.hpp"

namespace epicbf {

ClassKGain::ClassKGain(double kappa) : kappa_(kappa)
{
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw std::invalid_argument("class-K gain must be positive and finite");
}

bool FeasibilityReport::any_vulnerable() const
{
    return std::find(vulnerable.begin(), vulnerable.end(), true) != vulnerable.end();
}

namespace detail {

double barrier_numerator(const NetworkModel& model, const NetworkState& state,
                         const ClassKGain& gain, Eigen::Index i, double pressure_i)
{
    const double h = model.x_bar[i] - state.x[i];
    return state.susceptible(i) * pressure_i - model.gamma[i] * state.x[i] - gain(h);
}

ControlDecision clipped_decision(const NetworkModel& model, const NetworkState& state,
                                 const ClassKGain& gain,
                                 const std::function<double(Eigen::Index, double)>& compensation)
{
    require_same_size(model, state);
    const auto n = model.size();
    const Eigen::VectorXd pressure = infection_pressure(model, state);

    ControlDecision out{Eigen::VectorXd::Zero(n), std::vector<bool>(n, false)};
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = state.x[i];
        if (x <= 0.0)
            continue;
        const double sigma = compensation ? compensation(i, x) : 0.0;
        const double needed = (barrier_numerator(model, state, gain, i, pressure[i]) + sigma) / x;
        if (needed > model.u_bar[i]) {
            out.u[i] = model.u_bar[i];
            out.saturated[i] = true;
        } else {
            out.u[i] = std::max(0.0, needed);
        }
    }
    return out;
}

void require_admissible_r0(const NetworkModel& model, const Eigen::VectorXd& r0)
{
    if (r0.size() != model.size())
        throw DimensionMismatch("r0 length must match node count");
    for (Eigen::Index i = 0; i < r0.size(); ++i)
        if (!(r0[i] >= 0.0 && r0[i] <= 1.0 - model.x_bar[i]))
            throw std::invalid_argument("r0[" + std::to_string(i) + "] outside [0, 1 - x_bar]");
}

}  // namespace detail

double required_control(const NetworkModel& model, const NetworkState& state,
                        const ClassKGain& gain, Eigen::Index i)
{
    require_same_size(model, state);
    if (i < 0 || i >= model.size())
        throw std::out_of_range("node index out of range");
    if (state.x[i] == 0.0)
        throw std::domain_error("required_control is undefined at x_i = 0");
    const double pressure = model.beta.row(i).dot(state.x);
    return detail::barrier_numerator(model, state, gain, i, pressure) / state.x[i];
}

ControlDecision nominal_decision(const NetworkModel& model, const NetworkState& state,
                                 const ClassKGain& gain)
{
    return detail::clipped_decision(model, state, gain, {});
}

Eigen::VectorXd nominal_control(const NetworkModel& model, const NetworkState& state,
                                const ClassKGain& gain)
{
    return nominal_decision(model, state, gain).u;
}

FeasibilityReport feasibility_analysis(const NetworkModel& model, const Eigen::VectorXd& r0)
{
    model.validate();
    detail::require_admissible_r0(model, r0);

    const auto n = model.size();
    FeasibilityReport report{Eigen::VectorXd::Zero(n), std::vector<bool>(n, false)};
    for (Eigen::Index i = 0; i < n; ++i) {
        const double s_worst = 1.0 - model.x_bar[i] - r0[i];
        double neighbours = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != i)
                neighbours += model.beta(i, j) * model.x_bar[j] / model.x_bar[i];
        report.required_effort[i] =
            s_worst * model.beta(i, i) + s_worst * neighbours - model.gamma[i];
        report.vulnerable[i] = report.required_effort[i] > model.u_bar[i];
    }
    return report;
}

FeasibilityReport feasibility_analysis(const NetworkModel& model)
{
    return feasibility_analysis(model, Eigen::VectorXd::Zero(model.size()));
}

}  // namespace epicbf
