#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

namespace epicbf {

enum class DisturbanceKind { None, UnboundedGaussian, IndependentBounded, LowPrevalenceBounded };

/// Noise injected into the infected-fraction channel of every node.
///
/// Raw draws are eps ~ N(0, variance). Bounded kinds truncate eps to
/// [-bound, bound]; LowPrevalenceBounded then divides by sqrt(x_i + delta).
struct DisturbanceModel
{
    DisturbanceKind kind = DisturbanceKind::None;
    double variance = 1.0;
    double bound = 0.15;
    double delta = 0.01;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Seeded normal generator. mt19937_64 for bits, 53-bit uniforms, and the
/// Marsaglia polar transform; every step is fixed by the algorithm, so a
/// seed yields the same stream with any conforming standard library.
class Rng
{
public:
    static constexpr std::string_view algorithm = "mt19937_64/polar-normal";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();   // [0, 1)
    double standard_normal();

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

/// One disturbance value mu_i for a node currently at infection level x_i.
double sample(const DisturbanceModel& model, double x_i, Rng& rng);

}  // namespace epicbf
