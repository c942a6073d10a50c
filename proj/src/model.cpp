#include "epicbf/model.hpp"

#include <cmath>
#include <sstream>

namespace epicbf {

namespace {

template <typename... Args>
std::string concat(Args&&... args)
{
    std::ostringstream os;
    (os << ... << args);
    return os.str();
}

bool all_finite(const Eigen::MatrixXd& m) { return m.allFinite(); }

}  // namespace

void NetworkModel::validate() const
{
    const auto n = size();
    if (n <= 0)
        throw DimensionMismatch("network must have at least one node");
    if (beta.rows() != n || beta.cols() != n)
        throw DimensionMismatch(concat("beta is ", beta.rows(), "x", beta.cols(), ", expected ", n, "x", n));
    if (x_bar.size() != n || u_bar.size() != n)
        throw DimensionMismatch(concat("x_bar/u_bar length must be ", n));
    if (!all_finite(beta) || !gamma.allFinite() || !x_bar.allFinite() || !u_bar.allFinite())
        throw std::invalid_argument("model parameters must be finite");

    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j)
            if (beta(i, j) < 0.0)
                throw std::invalid_argument(concat("beta(", i, ",", j, ") is negative"));
        if (!(gamma[i] > 0.0))
            throw std::invalid_argument(concat("gamma[", i, "] must be positive"));
        if (!(x_bar[i] > 0.0 && x_bar[i] <= 1.0))
            throw std::invalid_argument(concat("x_bar[", i, "] must lie in (0, 1]"));
        if (u_bar[i] < 0.0)
            throw std::invalid_argument(concat("u_bar[", i, "] is negative"));
    }
}

void NetworkState::validate(double tol) const
{
    if (x.size() != r.size())
        throw DimensionMismatch("x and r must have equal length");
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(r[i]))
            throw std::invalid_argument(concat("state at node ", i, " is not finite"));
        if (x[i] < 0.0 || r[i] < 0.0 || x[i] + r[i] > 1.0 + tol)
            throw std::invalid_argument(
                concat("state at node ", i, " leaves the simplex: x=", x[i], " r=", r[i]));
    }
}

void require_same_size(const NetworkModel& model, const NetworkState& state)
{
    if (state.x.size() != model.size() || state.r.size() != model.size())
        throw DimensionMismatch(
            concat("state has ", state.x.size(), " nodes, model has ", model.size()));
}

NodeRates drift(const NetworkModel& model, const NetworkState& state)
{
    require_same_size(model, state);
    const Eigen::VectorXd pressure = infection_pressure(model, state);
    const Eigen::ArrayXd s = 1.0 - state.x.array() - state.r.array();
    NodeRates rates;
    rates.dr = model.gamma.array() * state.x.array();
    rates.dx = s * pressure.array() - rates.dr.array();
    return rates;
}

NodeRates control_effect(const NetworkModel& model, const NetworkState& state,
                         const Eigen::VectorXd& u)
{
    require_same_size(model, state);
    if (u.size() != model.size())
        throw DimensionMismatch("control vector length must match node count");
    for (Eigen::Index i = 0; i < u.size(); ++i)
        if (!(u[i] >= 0.0 && u[i] <= model.u_bar[i]))
            throw std::invalid_argument(
                concat("u[", i, "]=", u[i], " outside [0, ", model.u_bar[i], "]"));

    NodeRates rates;
    rates.dr = state.x.cwiseProduct(u);
    rates.dx = -rates.dr;
    return rates;
}

Eigen::VectorXd safety_value(const NetworkModel& model, const NetworkState& state)
{
    require_same_size(model, state);
    return model.x_bar - state.x;
}

}  // namespace epicbf
