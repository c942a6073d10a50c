#include <doctest.h>

#include <cmath>
#include <sstream>

#include "epicbf/config.hpp"
#include "epicbf/scenario.hpp"
#include "support/oracles.hpp"

using namespace epicbf;

namespace {

bool same(const RunConfig& a, const RunConfig& b)
{
    const auto& s = a.sim;
    const auto& t = b.sim;
    return a.model.beta == b.model.beta && a.model.gamma == b.model.gamma &&
           a.model.x_bar == b.model.x_bar && a.model.u_bar == b.model.u_bar && s.x0 == t.x0 &&
           s.r0 == t.r0 && s.dt == t.dt && s.horizon == t.horizon && s.record_stride == t.record_stride &&
           s.gain.kappa() == t.gain.kappa() && s.policy.kind == t.policy.kind &&
           s.policy.mu_bar == t.policy.mu_bar && s.policy.d_bar == t.policy.d_bar &&
           s.policy.delta == t.policy.delta && s.disturbance.kind == t.disturbance.kind &&
           s.disturbance.variance == t.disturbance.variance && s.disturbance.bound == t.disturbance.bound &&
           s.disturbance.delta == t.disturbance.delta && s.disturbance.seed == t.disturbance.seed;
}

RunConfig parse_over(ScenarioName base, const std::string& text)
{
    RunConfig c = preset(base);
    std::istringstream in(text);
    apply_config_text(c, in);
    return c;
}

}  // namespace

TEST_CASE("grammar: comments, whitespace, vectors, matrices, broadcasts")
{
    const auto c = parse_over(ScenarioName::Nominal,
                              "# a comment\n"
                              "\n"
                              "  gamma = 0.2, 0.25 ,0.3   # trailing comment\n"
                              "beta = 0.1, 0.2, 0.3; 0.4, 0.5, 0.6; 0.7, 0.8, 0.9\n"
                              "u_bar = 1\n"
                              "policy = rcbf-lowprev\n"
                              "disturbance = gaussian\n"
                              "seed = 18446744073709551615\n"
                              "T = 2.5e1\n");
    CHECK(c.model.gamma[1] == 0.25);
    CHECK(c.model.beta(1, 2) == 0.6);
    CHECK(c.model.beta(2, 0) == 0.7);
    CHECK((c.model.u_bar.array() == 1.0).all());
    CHECK(c.sim.policy.kind == PolicyKind::RobustLowPrevalence);
    CHECK(c.sim.disturbance.kind == DisturbanceKind::UnboundedGaussian);
    CHECK(c.sim.disturbance.seed == 18446744073709551615ull);
    CHECK(c.sim.horizon == 25.0);
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("scalar beta fills the whole matrix")
{
    RunConfig c = preset(ScenarioName::Nominal);
    apply_setting(c, "beta", "0");
    CHECK(c.model.beta.rows() == 3);
    CHECK(c.model.beta.isZero(0.0));
}

TEST_CASE("nodes resizes the network so later broadcasts follow it")
{
    const auto c = parse_over(ScenarioName::Nominal, "nodes = 2\nbeta = 0.4\ngamma = 0.3\nx_bar = 0.5\nu_bar = 1\nx0 = 0.1\n");
    CHECK(c.model.size() == 2);
    CHECK(c.model.beta.rows() == 2);
    CHECK(c.sim.r0 == Eigen::Vector2d::Zero());
    CHECK_NOTHROW(c.validate());
    // same size: nothing is reset
    CHECK(parse_over(ScenarioName::Nominal, "nodes = 3\n").model.x_bar == preset(ScenarioName::Nominal).model.x_bar);
    CHECK_THROWS_AS(parse_over(ScenarioName::Nominal, "nodes = 0\n"), ConfigError);
}

TEST_CASE("malformed input is reported with the line number")
{
    auto fails_with = [](const std::string& text, const std::string& fragment) {
        try {
            parse_over(ScenarioName::Nominal, text);
        } catch (const ConfigError& e) {
            return std::string(e.what()).find(fragment) != std::string::npos;
        }
        return false;
    };
    CHECK(fails_with("dt = 1e-4\nbogus = 1\n", "line 2"));
    CHECK(fails_with("bogus = 1\n", "unknown config key"));
    CHECK(fails_with("dt = fast\n", "not a number"));
    CHECK(fails_with("dt 1e-4\n", "expected key = value"));
    CHECK(fails_with("beta = 1, 2; 3\n", "ragged"));
    CHECK(fails_with("policy = greedy\n", "unknown policy"));
    CHECK(fails_with("disturbance = pink\n", "unknown disturbance"));
    CHECK(fails_with("seed = -3\n", "unsigned"));
    CHECK(fails_with("kappa = 0\n", "kappa"));
}

TEST_CASE("values that parse but do not validate")
{
    CHECK_THROWS_AS(parse_over(ScenarioName::Nominal, "gamma = 0.3, 0.3\n").validate(), ConfigError);
    CHECK_THROWS_AS(parse_over(ScenarioName::Nominal, "x_bar = 0\n").validate(), ConfigError);
    CHECK_THROWS_AS(parse_over(ScenarioName::Nominal, "dt = -1\n").validate(), ConfigError);
    CHECK_THROWS_AS(parse_over(ScenarioName::Nominal, "record_stride = 0\n").validate(), ConfigError);
}

TEST_CASE("format_double round-trips")
{
    oracle::Gen gen(55);
    for (int k = 0; k < 20000; ++k) {
        const double v = gen.uniform(-1.0, 1.0) * std::pow(10.0, gen.integer(-30, 30));
        const auto text = format_double(v);
        double back = 0.0;
        std::istringstream(text) >> back;
        REQUIRE(back == v);
    }
}

TEST_CASE("written configs parse back to the same configuration")
{
    oracle::Gen gen(66);
    const ScenarioName names[] = {ScenarioName::Nominal, ScenarioName::NominalNoise,
                                  ScenarioName::RcbfIndependent, ScenarioName::RcbfLowPrev};
    for (int trial = 0; trial < 200; ++trial) {
        const int n = gen.integer(1, 5);
        RunConfig c = preset(names[trial % 4]);
        c.model = gen.model(n);
        c.sim.x0 = gen.state(n).x * 0.5;
        c.sim.r0 = Eigen::VectorXd::Zero(n);
        c.sim.dt = gen.uniform(1e-5, 1e-2);
        c.sim.horizon = gen.uniform(0.1, 50.0);
        c.sim.record_stride = gen.integer(1, 500);
        c.sim.gain = ClassKGain(gen.uniform(0.01, 20.0));
        c.sim.policy.mu_bar = gen.uniform(0.0, 1.0);
        c.sim.policy.d_bar = gen.uniform(0.0, 1.0);
        c.sim.policy.delta = gen.uniform(1e-4, 0.1);
        c.sim.disturbance.variance = gen.uniform(0.0, 3.0);
        c.sim.disturbance.bound = gen.uniform(0.0, 1.0);
        c.sim.disturbance.delta = gen.uniform(1e-4, 0.1);
        c.sim.disturbance.seed = gen.eng();

        std::ostringstream out;
        write_config_text(out, c);
        // parse on top of a different preset so every field has to come from the text
        const auto back = parse_over(names[(trial + 1) % 4], out.str());
        REQUIRE(same(c, back));
    }
}
