#include "doco/runner.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace doco {

namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

std::string sanitize(const std::string& value) {
  std::string out;
  for (char ch : value) {
    out.push_back(std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_');
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Scenario build_scenario(const RunConfig& config) {
  if (config.scenario == "sinusoidal") {
    SinusoidalConfig sc = config.sinusoidal;
    sc.seed = config.seed;
    if (config.steps > 0) sc.horizon = config.steps;
    return build_sinusoidal(sc);
  }
  if (config.scenario == "rods") {
    RodsConfig rc = config.rods;
    rc.seed = config.seed;
    if (config.steps > 0) rc.horizon = config.steps;
    return build_rods(rc);
  }
  throw std::invalid_argument("unknown scenario '" + config.scenario + "'");
}

RunResult execute(const RunConfig& config) {
  RunResult result;
  result.scenario = build_scenario(config);
  const Scenario& sc = result.scenario;

  result.constants = sc.objective.convexity_constants();
  TheoryParams params;
  params.l_g = result.constants.l_g;
  params.mu = result.constants.mu;
  params.n = sc.agents();
  params.sigma_w = sc.net.sigma_w;
  result.stepsize_bound = stepsize_upper_bound(params);
  result.alpha = resolve_alpha(config.alpha_spec, result.constants.l_g,
                               result.stepsize_bound);
  params.alpha = result.alpha;

  RunOptions options;
  options.algorithm = config.algorithm;
  options.alpha = result.alpha;
  options.steps = sc.horizon;
  options.seed = config.seed;
  options.init = config.init;
  result.record = run(sc, options);
  const TrajectoryRecord& rec = result.record;

  params.g = rec.empirical_g();
  params.c_w = rec.empirical_c_w();
  params.c_g = rec.empirical_c_g();
  result.params = params;
  result.report = verify_step_inequalities(rec, params);

  if (!rec.diverged) {
    result.r_static = static_regret(rec, sc.objective);
    if (result.alpha <= result.stepsize_bound && params.g > 0.0) {
      try {
        result.stability = stability_constants(params);
      } catch (const std::invalid_argument&) {
        // stepsize outside the stability region: report without bounds
      }
    }
    if (result.stability) {
      result.tracking_bound =
          asymptotic_tracking_bound(*result.stability, params.c_w, params.c_g);
      const double c1 = rec.z.front()[0];
      const double c2 = rec.z.front()[1];
      const double c3 = rec.z.front()[2];
      result.regret_bound_final = regret_bound(
          *result.stability, c1, c2, c3, rec.p_path.back(), rec.v_grad.back());
      result.regret_bound_holds = true;
      for (int t = 0; t < rec.steps(); ++t) {
        const double bound = regret_bound(*result.stability, c1, c2, c3,
                                          rec.p_path[t], rec.v_grad[t]);
        if (rec.r_dynamic[t] > bound * (1.0 + 1e-12)) {
          result.regret_bound_holds = false;
          break;
        }
      }
    }
  }
  return result;
}

void write_trajectory_csv(const fs::path& path, const Scenario& scenario,
                          const TrajectoryRecord& record) {
  std::ofstream out = open_out(path);
  out << "t";
  for (const auto& name : scenario.target_name) {
    out << "," << name << "_true," << name << "_est";
  }
  out << ",r_dynamic,p_path,v_grad,z_tracking,z_consensus_x,z_consensus_y,diverged\n";

  for (int t = 0; t < record.steps(); ++t) {
    out << t;
    for (std::size_t j = 0; j < scenario.position_index.size(); ++j) {
      const int idx = scenario.position_index[j];
      out << "," << format_double(record.x_star(idx, t));
      out << "," << format_double(record.x[t][idx]);  // agent 1 owns block 0
    }
    out << "," << format_double(record.r_dynamic[t]);
    out << "," << format_double(record.p_path[t]);
    out << "," << format_double(record.v_grad[t]);
    out << "," << format_double(record.z[t][0]);
    out << "," << format_double(record.z[t][1]);
    out << "," << format_double(record.z[t][2]);
    out << "," << (record.diverged && t >= record.diverged_at ? 1 : 0) << "\n";
  }
}

void write_summary(const fs::path& path, const RunConfig& config,
                   const RunResult& result) {
  const TrajectoryRecord& rec = result.record;
  std::ofstream out = open_out(path);
  auto kv = [&out](const std::string& key, const std::string& value) {
    out << key << " = " << value << "\n";
  };
  auto kvd = [&](const std::string& key, double v) { kv(key, format_double(v)); };

  kv("scenario", result.scenario.name);
  kv("algorithm", to_string(rec.algorithm));
  kv("alpha_spec", config.alpha_spec);
  kvd("alpha", result.alpha);
  kv("T", std::to_string(result.scenario.horizon));
  kv("seed", std::to_string(rec.seed));
  kv("init", config.init == InitMode::zeros ? "zeros" : "random");
  kv("n", std::to_string(rec.n));
  kv("d", std::to_string(rec.d));
  kvd("sigma_w", rec.sigma_w);
  kvd("l_g", result.constants.l_g);
  kvd("mu", result.constants.mu);
  kvd("a_norm", rec.a_norm);
  kv("a_norm_exceeds_one", rec.a_norm > 1.0 + 1e-12 ? "1" : "0");
  kvd("stepsize_bound", result.stepsize_bound);
  kv("diverged", rec.diverged ? "1" : "0");
  kv("diverged_at", std::to_string(rec.diverged_at));
  kvd("r_dynamic_final", rec.r_dynamic.back());
  kvd("p_path_final", rec.p_path.back());
  kvd("v_grad_final", rec.v_grad.back());
  if (!rec.diverged) kvd("r_static", result.r_static);
  kvd("g_empirical", rec.empirical_g());
  kvd("c_w_empirical", rec.empirical_c_w());
  kvd("c_g_empirical", rec.empirical_c_g());
  kvd("c_w_generator", result.scenario.noise_bound);

  double cons_worst = 0.0;
  for (std::size_t t = 0; t < rec.conservation.size(); ++t) {
    cons_worst = std::max(cons_worst,
                          rec.conservation[t] / (1e-9 * rec.conservation_scale[t]));
  }
  if (!rec.conservation.empty()) {
    kvd("conservation_worst_ratio", cons_worst);
  }

  auto report_check = [&](const std::string& name, const InequalityCheck& c) {
    kv(name + "_applicable", c.applicable ? "1" : "0");
    if (c.applicable) {
      kv(name + "_violations", std::to_string(c.violations));
      kvd(name + "_worst_margin", c.worst_margin);
    }
  };
  report_check("ineq_tracking", result.report.tracking);
  report_check("ineq_consensus_x", result.report.consensus_x);
  report_check("ineq_consensus_y", result.report.consensus_y);
  report_check("z_recursion", result.report.z_recursion);

  kv("theory_applicable", result.stability ? "1" : "0");
  if (result.stability) {
    const auto& lem = *result.stability;
    kvd("phi_spectral_radius", spectral_radius_3x3(phi_matrix(result.params)));
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        kvd("c" + std::to_string(i + 1) + std::to_string(j + 1), lem.c(i, j));
      }
    }
    kvd("det_i_minus_phi", lem.det);
    kvd("c_inv", lem.c_inv);
    kvd("max_c", lem.max_c);
    kvd("k_regret", lem.k);
    kvd("tracking_bound", result.tracking_bound);
    kvd("regret_bound_final", result.regret_bound_final);
    kv("regret_bound_holds", result.regret_bound_holds ? "1" : "0");
  }
}

RunResult run_command(const RunConfig& config) {
  RunResult result = execute(config);
  const fs::path dir(config.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "'");
  write_trajectory_csv(dir / "trajectory.csv", result.scenario, result.record);
  write_summary(dir / "summary.txt", config, result);
  return result;
}

void sweep_command(const RunConfig& base, const std::string& axis,
                   const std::vector<std::string>& values) {
  if (values.empty()) throw std::invalid_argument("sweep: empty value list");

  const fs::path dir(base.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "'");

  std::vector<std::future<RunResult>> futures;
  futures.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    RunConfig config = base;
    apply_assignment(config, axis, values[i]);
    config.out_dir =
        (dir / ("run_" + std::to_string(i) + "_" + sanitize(values[i]))).string();
    futures.push_back(std::async(std::launch::async, run_command, config));
  }

  std::vector<RunResult> results;
  results.reserve(values.size());
  for (auto& f : futures) results.push_back(f.get());

  std::ofstream out = open_out(dir / "sweep.csv");
  out << axis << ",t,r_dynamic,p_path,v_grad,z_tracking,diverged\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const TrajectoryRecord& rec = results[i].record;
    for (int t = 0; t < rec.steps(); ++t) {
      out << values[i] << "," << t;
      out << "," << format_double(rec.r_dynamic[t]);
      out << "," << format_double(rec.p_path[t]);
      out << "," << format_double(rec.v_grad[t]);
      out << "," << format_double(rec.z[t][0]);
      out << "," << (rec.diverged && t >= rec.diverged_at ? 1 : 0) << "\n";
    }
  }
}

}  // namespace doco
