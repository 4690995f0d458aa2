#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dynavg/simulator.hpp"

namespace dynavg {

/// Malformed, unknown, or out-of-range configuration input. The message names
/// the offending key.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SweepValues {
    std::string param;                // one of: delta, b, k, seed
    std::vector<std::string> values;  // validated, sorted ascending numerically
};

/// One experiment: a base run plus an optional sweep over delta, b, k or seed.
/// output_path is supplied by the CLI, never by the config document.
struct ExperimentSpec {
    RunConfig base;
    std::vector<SweepValues> sweep;
    std::string output_path;
};

/// Parses a flat `key = value` document ('#' starts a comment). Unknown and
/// duplicate keys are rejected; all omitted keys take their defaults.
ExperimentSpec parse_config(std::string_view text);

/// Echoes a spec back as a parseable document covering every recognized key.
/// parse_config(render_config(s)) reproduces s exactly.
std::string render_config(const ExperimentSpec& spec);

/// Expands the sweep into concrete run configs, base first axis order
/// delta, b, k, seed, each ascending. No sweep yields just the base.
std::vector<RunConfig> expand_sweep(const ExperimentSpec& spec);

}  // namespace dynavg
