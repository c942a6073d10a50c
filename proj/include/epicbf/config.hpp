#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "epicbf/simulator.hpp"

namespace epicbf {

/// Unknown key, malformed value, or a configuration that fails validation.
class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Everything needed to reproduce one run.
struct RunConfig
{
    NetworkModel model;
    SimConfig sim;

    void validate() const;
};

/// Config text grammar, one assignment per line:
///
///   line    := ws* (assign)? ws* ('#' any*)?
///   assign  := key ws* '=' ws* value
///   value   := number | list | matrix | word
///   list    := number (',' number)*           vectors; a lone number
///                                             broadcasts to every node
///   matrix  := list (';' list)*               beta rows; a lone number
///                                             fills the whole matrix
///
/// Keys:
///   nodes                                     network size; changing it zeroes
///                                             every per-node field
///   beta gamma x_bar u_bar x0 r0              network and initial state
///   dt T record_stride kappa                  integration and gain
///   policy = none|nominal|rcbf-independent|rcbf-lowprev
///   mu_bar d_bar delta                        compensation parameters
///   disturbance = none|gaussian|independent|lowprev
///   variance bound noise_delta seed           disturbance parameters
///
/// Broadcasts use the node count of gamma at the time they are applied.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Applies every assignment in the stream, in order. Errors name the line.
void apply_config_text(RunConfig& config, std::istream& in);

/// Writes every key, with values printed so that parsing restores them
/// bit for bit.
void write_config_text(std::ostream& out, const RunConfig& config);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace epicbf
