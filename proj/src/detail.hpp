#pragma once

#include <functional>

#include "epicbf/controller.hpp"

namespace epicbf::detail {

// s_i * pressure_i - gamma_i x_i - alpha(h_i): the part of x_i * u_i that
// must be covered to keep dh_i/dt >= -alpha(h_i).
double barrier_numerator(const NetworkModel& model, const NetworkState& state,
                         const ClassKGain& gain, Eigen::Index i, double pressure_i);

// compensation(i, x_i) adds a nonnegative margin to the numerator; an empty
// function means no compensation.
ControlDecision clipped_decision(const NetworkModel& model, const NetworkState& state,
                                 const ClassKGain& gain,
                                 const std::function<double(Eigen::Index, double)>& compensation);

void require_admissible_r0(const NetworkModel& model, const Eigen::VectorXd& r0);

}  // namespace epicbf::detail
