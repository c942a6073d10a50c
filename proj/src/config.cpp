#include "epicbf/config.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <vector>

namespace epicbf {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        const auto next = s.find(sep, pos);
        parts.push_back(trim(s.substr(pos, next - pos)));
        if (next == std::string_view::npos)
            break;
        pos = next + 1;
    }
    return parts;
}

double parse_number(std::string_view key, std::string_view text)
{
    text = trim(text);
    if (!text.empty() && text.front() == '+')
        text.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw ConfigError("'" + std::string(key) + "': not a number: '" + std::string(text) + "'");
    return v;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text)
{
    text = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw ConfigError("'" + std::string(key) + "': not an unsigned integer: '" +
                          std::string(text) + "'");
    return v;
}

Eigen::VectorXd parse_vector(std::string_view key, std::string_view text, Eigen::Index n)
{
    const auto parts = split(text, ',');
    if (parts.size() == 1)
        return Eigen::VectorXd::Constant(n, parse_number(key, parts[0]));
    Eigen::VectorXd v(static_cast<Eigen::Index>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = parse_number(key, parts[i]);
    return v;
}

Eigen::MatrixXd parse_matrix(std::string_view key, std::string_view text, Eigen::Index n)
{
    const auto rows = split(text, ';');
    if (rows.size() == 1 && split(rows[0], ',').size() == 1)
        return Eigen::MatrixXd::Constant(n, n, parse_number(key, rows[0]));

    const auto cols = split(rows[0], ',').size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto cells = split(rows[i], ',');
        if (cells.size() != cols)
            throw ConfigError("'" + std::string(key) + "': ragged matrix rows");
        for (std::size_t j = 0; j < cells.size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = parse_number(key, cells[j]);
    }
    return m;
}

PolicyKind parse_policy(std::string_view text)
{
    if (text == "none") return PolicyKind::None;
    if (text == "nominal") return PolicyKind::Nominal;
    if (text == "rcbf-independent") return PolicyKind::RobustIndependent;
    if (text == "rcbf-lowprev") return PolicyKind::RobustLowPrevalence;
    throw ConfigError("unknown policy '" + std::string(text) + "'");
}

const char* policy_name(PolicyKind kind)
{
    switch (kind) {
    case PolicyKind::None: return "none";
    case PolicyKind::Nominal: return "nominal";
    case PolicyKind::RobustIndependent: return "rcbf-independent";
    case PolicyKind::RobustLowPrevalence: return "rcbf-lowprev";
    }
    return "?";
}

DisturbanceKind parse_disturbance(std::string_view text)
{
    if (text == "none") return DisturbanceKind::None;
    if (text == "gaussian") return DisturbanceKind::UnboundedGaussian;
    if (text == "independent") return DisturbanceKind::IndependentBounded;
    if (text == "lowprev") return DisturbanceKind::LowPrevalenceBounded;
    throw ConfigError("unknown disturbance '" + std::string(text) + "'");
}

const char* disturbance_name(DisturbanceKind kind)
{
    switch (kind) {
    case DisturbanceKind::None: return "none";
    case DisturbanceKind::UnboundedGaussian: return "gaussian";
    case DisturbanceKind::IndependentBounded: return "independent";
    case DisturbanceKind::LowPrevalenceBounded: return "lowprev";
    }
    return "?";
}

std::string format_vector(const Eigen::VectorXd& v)
{
    std::string out;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i)
            out += ", ";
        out += format_double(v[i]);
    }
    return out;
}

}  // namespace

std::string format_double(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

void RunConfig::validate() const
{
    try {
        model.validate();
        sim.validate(model);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

void apply_setting(RunConfig& config, std::string_view key, std::string_view value)
{
    key = trim(key);
    value = trim(value);
    const auto n = config.model.size();
    auto& sim = config.sim;

    if (key == "nodes") {
        const auto size = static_cast<Eigen::Index>(parse_unsigned(key, value));
        if (size == 0)
            throw ConfigError("'nodes' must be at least 1");
        if (size != n) {
            // a resize discards every per-node field; they must follow in the text
            config.model.beta = Eigen::MatrixXd::Zero(size, size);
            config.model.gamma = config.model.x_bar = config.model.u_bar = Eigen::VectorXd::Zero(size);
            sim.x0 = sim.r0 = Eigen::VectorXd::Zero(size);
        }
    }
    else if (key == "beta") config.model.beta = parse_matrix(key, value, n);
    else if (key == "gamma") config.model.gamma = parse_vector(key, value, n);
    else if (key == "x_bar") config.model.x_bar = parse_vector(key, value, n);
    else if (key == "u_bar") config.model.u_bar = parse_vector(key, value, n);
    else if (key == "x0") sim.x0 = parse_vector(key, value, n);
    else if (key == "r0") sim.r0 = parse_vector(key, value, n);
    else if (key == "dt") sim.dt = parse_number(key, value);
    else if (key == "T") sim.horizon = parse_number(key, value);
    else if (key == "record_stride") sim.record_stride = static_cast<std::int64_t>(parse_unsigned(key, value));
    else if (key == "kappa") {
        try {
            sim.gain = ClassKGain(parse_number(key, value));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("'kappa': ") + e.what());
        }
    }
    else if (key == "policy") sim.policy.kind = parse_policy(value);
    else if (key == "mu_bar") sim.policy.mu_bar = parse_number(key, value);
    else if (key == "d_bar") sim.policy.d_bar = parse_number(key, value);
    else if (key == "delta") sim.policy.delta = parse_number(key, value);
    else if (key == "disturbance") sim.disturbance.kind = parse_disturbance(value);
    else if (key == "variance") sim.disturbance.variance = parse_number(key, value);
    else if (key == "bound") sim.disturbance.bound = parse_number(key, value);
    else if (key == "noise_delta") sim.disturbance.delta = parse_number(key, value);
    else if (key == "seed") sim.disturbance.seed = parse_unsigned(key, value);
    else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void apply_config_text(RunConfig& config, std::istream& in)
{
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos)
            view = view.substr(0, hash);
        view = trim(view);
        if (view.empty())
            continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        try {
            apply_setting(config, view.substr(0, eq), view.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
}

void write_config_text(std::ostream& out, const RunConfig& config)
{
    const auto& m = config.model;
    const auto& s = config.sim;
    out << "# effective run configuration\n";
    out << "# rng: " << Rng::algorithm << '\n';
    out << "nodes = " << m.size() << '\n';
    out << "beta = ";
    for (Eigen::Index i = 0; i < m.beta.rows(); ++i) {
        if (i)
            out << "; ";
        out << format_vector(m.beta.row(i).transpose());
    }
    out << '\n';
    out << "gamma = " << format_vector(m.gamma) << '\n';
    out << "x_bar = " << format_vector(m.x_bar) << '\n';
    out << "u_bar = " << format_vector(m.u_bar) << '\n';
    out << "x0 = " << format_vector(s.x0) << '\n';
    out << "r0 = " << format_vector(s.r0) << '\n';
    out << "dt = " << format_double(s.dt) << '\n';
    out << "T = " << format_double(s.horizon) << '\n';
    out << "record_stride = " << s.record_stride << '\n';
    out << "kappa = " << format_double(s.gain.kappa()) << '\n';
    out << "policy = " << policy_name(s.policy.kind) << '\n';
    out << "mu_bar = " << format_double(s.policy.mu_bar) << '\n';
    out << "d_bar = " << format_double(s.policy.d_bar) << '\n';
    out << "delta = " << format_double(s.policy.delta) << '\n';
    out << "disturbance = " << disturbance_name(s.disturbance.kind) << '\n';
    out << "variance = " << format_double(s.disturbance.variance) << '\n';
    out << "bound = " << format_double(s.disturbance.bound) << '\n';
    out << "noise_delta = " << format_double(s.disturbance.delta) << '\n';
    out << "seed = " << s.disturbance.seed << '\n';
}

}  // namespace epicbf
