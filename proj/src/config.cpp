#include "doco/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace doco {

namespace {

std::string trim(const std::string& s) {
  const auto from = s.find_first_not_of(" \t\r");
  if (from == std::string::npos) return {};
  const auto to = s.find_last_not_of(" \t\r");
  return s.substr(from, to - from + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad numeric value for " + key + ": '" +
                                value + "'");
  }
}

long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long v = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer value for " + key + ": '" +
                                value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad seed value for " + key + ": '" +
                                value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "on" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "off" || value == "0" || value == "no") return false;
  throw std::invalid_argument("config: bad boolean value for " + key + ": '" +
                              value + "'");
}

}  // namespace

void apply_assignment(RunConfig& c, const std::string& key,
                      const std::string& value) {
  if (key == "scenario") {
    if (value != "sinusoidal" && value != "rods") {
      throw std::invalid_argument("config: unknown scenario '" + value + "'");
    }
    c.scenario = value;
  } else if (key == "algorithm") {
    c.algorithm = algorithm_from_string(value);
  } else if (key == "alpha") {
    c.alpha_spec = value;
  } else if (key == "T") {
    c.steps = static_cast<int>(parse_int(key, value));
  } else if (key == "seed") {
    c.seed = parse_u64(key, value);
  } else if (key == "init") {
    if (value == "zeros") c.init = InitMode::zeros;
    else if (value == "random") c.init = InitMode::random;
    else throw std::invalid_argument("config: unknown init '" + value + "'");
  } else if (key == "out") {
    c.out_dir = value;
  } else if (key == "prediction") {
    c.sinusoidal.prediction = parse_bool(key, value);
  } else if (key == "n_sensors") {
    c.sinusoidal.n_sensors = static_cast<int>(parse_int(key, value));
  } else if (key == "n_targets") {
    c.sinusoidal.n_targets = static_cast<int>(parse_int(key, value));
  } else if (key == "sample_rate") {
    c.sinusoidal.sample_rate_hz = parse_double(key, value);
  } else if (key == "period_s") {
    c.sinusoidal.period_s = parse_double(key, value);
  } else if (key == "amplitude_min") {
    c.sinusoidal.amplitude_min = parse_double(key, value);
  } else if (key == "amplitude_max") {
    c.sinusoidal.amplitude_max = parse_double(key, value);
  } else if (key == "phase_min") {
    c.sinusoidal.phase_min = parse_double(key, value);
  } else if (key == "phase_max") {
    c.sinusoidal.phase_max = parse_double(key, value);
  } else if (key == "noise_scale") {
    c.sinusoidal.noise_scale = parse_double(key, value);
  } else if (key == "edge_prob") {
    c.sinusoidal.edge_prob = parse_double(key, value);
  } else if (key == "r1") {
    c.rods.r1 = parse_double(key, value);
  } else if (key == "r2") {
    c.rods.r2 = parse_double(key, value);
  } else if (key == "rate1") {
    c.rods.rate1 = parse_double(key, value);
  } else if (key == "rate2") {
    c.rods.rate2 = parse_double(key, value);
  } else if (key == "theta1") {
    c.rods.theta1_0 = parse_double(key, value);
  } else if (key == "theta2") {
    c.rods.theta2_0 = parse_double(key, value);
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

RunConfig parse_config(const std::string& path,
                       const std::vector<std::string>& overrides) {
  RunConfig config;
  std::vector<std::string> unknown;

  auto assign = [&](const std::string& key, const std::string& value) {
    try {
      apply_assignment(config, key, value);
    } catch (const std::invalid_argument& e) {
      const std::string what = e.what();
      if (what.find("unknown key") != std::string::npos) {
        unknown.push_back(key);
      } else {
        throw;
      }
    }
  };

  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto comment = line.find('#');
      if (comment != std::string::npos) line.erase(comment);
      const std::string stripped = trim(line);
      if (stripped.empty()) continue;
      if (stripped.front() == '[' && stripped.back() == ']') continue;  // section headers are cosmetic
      const auto eq = stripped.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                    " is not key = value");
      }
      assign(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
  }

  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: override '" + item +
                                  "' is not key=value");
    }
    assign(trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
  }

  if (!unknown.empty()) {
    std::ostringstream msg;
    msg << "config: unknown keys:";
    for (const auto& k : unknown) msg << " '" << k << "'";
    throw std::invalid_argument(msg.str());
  }
  if (config.scenario.empty()) {
    throw std::invalid_argument("config: missing required key 'scenario'");
  }
  return config;
}

double resolve_alpha(const std::string& spec, double l_g,
                     double theoretical_bound) {
  if (spec == "theoretical") return theoretical_bound;

  // k/Lg and k/(mLg) forms.
  auto strip = [](const std::string& s) {
    std::string out;
    for (char ch : s) {
      if (ch != ' ' && ch != '\t') out.push_back(ch);
    }
    return out;
  };
  const std::string compact = strip(spec);
  const auto slash = compact.find('/');
  if (slash != std::string::npos) {
    const std::string num = compact.substr(0, slash);
    std::string den = compact.substr(slash + 1);
    if (den.size() >= 2 && den.front() == '(' && den.back() == ')') {
      den = den.substr(1, den.size() - 2);
    }
    if (den.size() >= 2 && den.compare(den.size() - 2, 2, "Lg") == 0) {
      const std::string factor = den.substr(0, den.size() - 2);
      try {
        const double numerator = std::stod(num);
        const double scale = factor.empty() ? 1.0 : std::stod(factor);
        if (scale > 0.0 && l_g > 0.0) return numerator / (scale * l_g);
      } catch (const std::exception&) {
        // fall through to the error below
      }
    }
    throw std::invalid_argument("alpha: cannot parse '" + spec +
                                "' (expected k/Lg, k/(mLg), 'theoretical' or a number)");
  }

  try {
    std::size_t used = 0;
    const double v = std::stod(compact, &used);
    if (used == compact.size() && v > 0.0) return v;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("alpha: cannot parse '" + spec +
                              "' (expected k/Lg, k/(mLg), 'theoretical' or a number)");
}

}  // namespace doco
