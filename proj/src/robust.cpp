#include "epicbf/robust.hpp"

#include <cmath>
#include <stdexcept>

#include "detail.hpp"

namespace epicbf {

CompensationSpec CompensationSpec::independent(double mu_bar)
{
    CompensationSpec spec;
    spec.kind = CompensationKind::Independent;
    spec.mu_bar = mu_bar;
    spec.validate();
    return spec;
}

CompensationSpec CompensationSpec::low_prevalence(double d_bar, double delta)
{
    CompensationSpec spec;
    spec.kind = CompensationKind::LowPrevalence;
    spec.d_bar = d_bar;
    spec.delta = delta;
    spec.validate();
    return spec;
}

void CompensationSpec::validate() const
{
    if (!(mu_bar >= 0.0) || !(d_bar >= 0.0) || !std::isfinite(mu_bar) || !std::isfinite(d_bar))
        throw std::invalid_argument("compensation bounds must be finite and nonnegative");
    if (kind == CompensationKind::LowPrevalence && (!(delta > 0.0) || !std::isfinite(delta)))
        throw std::invalid_argument("low-prevalence compensation needs delta > 0");
}

double CompensationSpec::worst_case() const
{
    return sigma(*this, 0.0);
}

double sigma(const CompensationSpec& spec, double x)
{
    switch (spec.kind) {
    case CompensationKind::Independent:
        return spec.mu_bar;
    case CompensationKind::LowPrevalence:
        return spec.d_bar / std::sqrt(x + spec.delta);
    }
    return 0.0;
}

ControlDecision robust_control(const NetworkModel& model, const NetworkState& state,
                               const ClassKGain& gain, const CompensationSpec& spec)
{
    spec.validate();
    return detail::clipped_decision(model, state, gain,
                                    [&spec](Eigen::Index, double x) { return sigma(spec, x); });
}

FeasibilityReport robust_feasibility(const NetworkModel& model, const Eigen::VectorXd& r0,
                                     const CompensationSpec& spec)
{
    spec.validate();
    FeasibilityReport report = feasibility_analysis(model, r0);
    for (Eigen::Index i = 0; i < model.size(); ++i) {
        report.required_effort[i] += spec.worst_case() / model.x_bar[i];
        report.vulnerable[i] = report.required_effort[i] > model.u_bar[i];
    }
    return report;
}

bool compensation_sufficient(const CompensationSpec& spec, double mu_sample, double x)
{
    return sigma(spec, x) - mu_sample >= 0.0;
}

}  // namespace epicbf
