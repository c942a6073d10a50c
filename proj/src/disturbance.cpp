#include "epicbf/disturbance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace epicbf {

void DisturbanceModel::validate() const
{
    if (!(variance >= 0.0) || !std::isfinite(variance))
        throw std::invalid_argument("disturbance variance must be finite and nonnegative");
    if (!(bound >= 0.0) || !std::isfinite(bound))
        throw std::invalid_argument("disturbance bound must be finite and nonnegative");
    if (kind == DisturbanceKind::LowPrevalenceBounded && (!(delta > 0.0) || !std::isfinite(delta)))
        throw std::invalid_argument("low-prevalence disturbance needs delta > 0");
}

double Rng::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::standard_normal()
{
    if (spare_) {
        const double z = *spare_;
        spare_.reset();
        return z;
    }
    double a, b, s;
    do {
        a = 2.0 * uniform() - 1.0;
        b = 2.0 * uniform() - 1.0;
        s = a * a + b * b;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = b * scale;
    return a * scale;
}

double sample(const DisturbanceModel& model, double x_i, Rng& rng)
{
    if (model.kind == DisturbanceKind::None)
        return 0.0;

    const double eps = std::sqrt(model.variance) * rng.standard_normal();
    switch (model.kind) {
    case DisturbanceKind::UnboundedGaussian:
        return eps;
    case DisturbanceKind::IndependentBounded:
        return std::clamp(eps, -model.bound, model.bound);
    case DisturbanceKind::LowPrevalenceBounded:
        return std::clamp(eps, -model.bound, model.bound) / std::sqrt(x_i + model.delta);
    case DisturbanceKind::None:
        break;
    }
    return 0.0;
}

}  // namespace epicbf
