#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace epicbf {

/// Thrown when vectors or matrices disagree with the node count.
class DimensionMismatch : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Static parameters of a networked SIR epidemic.
///
/// beta(i, j) is the rate at which infection at node j drives new infections
/// at node i; the diagonal holds the internal rate of each node.
struct NetworkModel
{
    Eigen::MatrixXd beta;
    Eigen::VectorXd gamma;  // recovery rates, > 0
    Eigen::VectorXd x_bar;  // infection thresholds, in (0, 1]
    Eigen::VectorXd u_bar;  // control caps, >= 0

    Eigen::Index size() const { return gamma.size(); }

    // Throws DimensionMismatch or std::invalid_argument.
    void validate() const;
};

/// Infected and recovered fractions per node. The susceptible fraction is
/// always derived, never stored.
struct NetworkState
{
    Eigen::VectorXd x;
    Eigen::VectorXd r;

    Eigen::Index size() const { return x.size(); }
    double susceptible(Eigen::Index i) const { return 1.0 - x[i] - r[i]; }

    static NetworkState zeros(Eigen::Index n)
    {
        return {Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
    }

    // Tolerance applies to the simplex bound x_i + r_i <= 1.
    void validate(double tol = 1e-12) const;
};

/// Per-node time derivatives of (x_i, r_i).
struct NodeRates
{
    Eigen::VectorXd dx;
    Eigen::VectorXd dr;
};

void require_same_size(const NetworkModel& model, const NetworkState& state);

/// Uncontrolled dynamics f_i:
///   dx_i = -gamma_i x_i + s_i * sum_j beta_ij x_j,   dr_i = gamma_i x_i.
NodeRates drift(const NetworkModel& model, const NetworkState& state);

/// Control-affine part g_i(x_i) u_i = (-x_i u_i, +x_i u_i).
/// Rejects u_i outside [0, u_bar_i].
NodeRates control_effect(const NetworkModel& model, const NetworkState& state,
                         const Eigen::VectorXd& u);

/// h_i = x_bar_i - x_i; nonnegative exactly on the safe set.
Eigen::VectorXd safety_value(const NetworkModel& model, const NetworkState& state);

/// Infection pressure sum_j beta_ij x_j on each node.
inline Eigen::VectorXd infection_pressure(const NetworkModel& model, const NetworkState& state)
{
    return model.beta * state.x;
}

}  // namespace epicbf
