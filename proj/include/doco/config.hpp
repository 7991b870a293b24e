#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "doco/algo.hpp"
#include "doco/scenarios.hpp"

namespace doco {

// One experiment description, as read from a key = value config file plus
// command line overrides. Symbolic stepsizes are resolved against the
// built instance, never here.
struct RunConfig {
  std::string scenario;  // "sinusoidal" or "rods"; required
  Algorithm algorithm = Algorithm::doco;
  std::string alpha_spec = "1/(2Lg)";
  int steps = 0;  // 0 = scenario default horizon
  std::uint64_t seed = 1;
  InitMode init = InitMode::zeros;
  std::string out_dir = "out";

  SinusoidalConfig sinusoidal;
  RodsConfig rods;
};

// Parse a config file (empty path = none) and apply key=value overrides on
// top. Unknown keys raise an error naming them all.
RunConfig parse_config(const std::string& path,
                       const std::vector<std::string>& overrides = {});

// Apply one key=value assignment; shared by file lines and --set flags.
void apply_assignment(RunConfig& config, const std::string& key,
                      const std::string& value);

// Resolve "theoretical", the k/Lg family ("1/Lg", "2/Lg", "1/(2Lg)", ...)
// or a plain numeric literal.
double resolve_alpha(const std::string& spec, double l_g,
                     double theoretical_bound);

}  // namespace doco
