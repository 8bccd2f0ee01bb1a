// Copyright 2026 The blochflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "blochflow/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "blochflow/analysis.hpp"
#include "blochflow/envariance.hpp"

namespace blochflow::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;

/// |cos(theta0) - lambda| beyond which integrated and predicted outcomes
/// must agree in cross-check mode.
constexpr double kDecisiveMargin = 1e-3;

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  return os;
}

void finish(std::ofstream& os, const std::string& path) {
  os.flush();
  if (!os) throw std::runtime_error("write to '" + path + "' failed");
}

void write_json(const Json& j, const std::string& path) {
  auto os = open_output(path);
  os << j.dump(2) << '\n';
  finish(os, path);
}

/// NaN and infinities become null.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json generator_json(const Generatord& g) {
  Json j = Json::object();
  for (int k = 0; k < 8; ++k) {
    const auto p = static_cast<GeneratorParameter>(k);
    j[std::string(kGeneratorParameterNames[static_cast<std::size_t>(k)])] = g[p];
  }
  return j;
}

Json noise_json(const NoiseLaw& law) {
  Json j = Json::object();
  j["target"] = std::string(to_string(law.target));
  if (const auto* f = std::get_if<FlatLaw>(&law.distribution)) {
    j["distribution"] = "flat";
    j["lo"] = f->lo;
    j["hi"] = f->hi;
  } else {
    const auto& g = std::get<GaussianLaw>(law.distribution);
    j["distribution"] = "gaussian";
    j["mean"] = g.mean;
    j["sigma"] = g.sigma;
  }
  return j;
}

Json summary_json(const Comparison& c) {
  Json j = Json::object();
  j["target"] = c.target_name;
  j["max_abs_z"] = number(c.max_abs_z);
  j["theta0_at_max"] = c.points[c.max_index].theta0;
  j["chi_square"] = number(c.chi_square);
  j["degrees_of_freedom"] = c.degrees_of_freedom;
  return j;
}

Json counts_json(const OutcomeCounts& c) {
  Json j = Json::object();
  j["pointer0"] = c.pointer0;
  j["pointer1"] = c.pointer1;
  j["separatrix"] = c.separatrix;
  j["unresolved"] = c.unresolved;
  j["runs"] = c.total();
  return j;
}

Json matrix_json(const Eigen::MatrixXcd& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    Json c = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      r.push_back(m(i, k).real());
      c.push_back(m(i, k).imag());
    }
    re.push_back(std::move(r));
    im.push_back(std::move(c));
  }
  Json j = Json::object();
  j["real"] = std::move(re);
  j["imag"] = std::move(im);
  return j;
}

Json density_json(const envariance::DensityMatrix& rho) {
  Json j = Json::object();
  j["dims"] = rho.dims();
  const Json m = matrix_json(rho.matrix());
  j["real"] = m["real"];
  j["imag"] = m["imag"];
  return j;
}

Json check_json(const std::string& name, const envariance::EnvarianceCheck& c) {
  Json j = Json::object();
  j["name"] = name;
  j["envariant"] = c.envariant;
  j["overlap"] = c.overlap;
  j["residual"] = c.residual;
  return j;
}

double weight_of(double theta) {
  const double c = std::cos(theta / 2);
  return c * c;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{}", x);
}

void run_flow_field(const FlowFieldConfig& config) {
  config.validate();
  auto thetas = linear_grid(config.theta_margin, kPi - config.theta_margin, config.n_theta);
  std::vector<double> phis(config.n_phi);
  for (std::size_t j = 0; j < config.n_phi; ++j)
    phis[j] = 2 * kPi * static_cast<double>(j) / static_cast<double>(config.n_phi);

  const FlowField field = config.lambda ? nonlinear::flow_field(*config.lambda, std::move(thetas), std::move(phis))
                                        : flow_field(config.generator, std::move(thetas), std::move(phis));
  auto os = open_output(config.out);
  os << "theta,phi,theta_dot,phi_dot,speed,pole\n";
  for (const auto& s : field.samples) {
    os << fmt::format("{},{},{},{},{},{}\n", format_number(s.theta), format_number(s.phi),
                      format_number(s.theta_dot), format_number(s.phi_dot), format_number(s.speed),
                      s.pole ? 1 : 0);
  }
  finish(os, config.out);
}

void run_trajectory(const TrajectoryConfig& config) {
  config.validate();
  StopRule stop;
  stop.fuzzy_delta_theta = config.delta_theta;
  stop.max_steps = config.steps;
  std::vector<Trajectory> runs(config.thetas.size());
  parallel_for(config.thetas.size(), config.threads, [&](std::size_t ic) {
    RngStream rng = make_stream(config.seed, ic, 0);
    runs[ic] = simulate(BlochStated::canonical(config.thetas[ic], 0), config.noise, config.base, config.dt, stop,
                        rng, config.stride);
  });

  auto os = open_output(config.out);
  os << "ic,t,theta,phi,weight0\n";
  for (std::size_t ic = 0; ic < runs.size(); ++ic) {
    const auto& tr = runs[ic];
    for (std::size_t k = 0; k < tr.samples.size(); ++k) {
      const auto& s = tr.samples[k];
      os << fmt::format("{},{},{},{},{}\n", ic, format_number(tr.times[k]), format_number(s.theta),
                        format_number(s.phi), format_number(s.weight0()));
    }
  }
  finish(os, config.out);
}

void run_ensemble(const EnsembleCmdConfig& config) {
  config.validate();
  EnsembleConfig ec;
  for (double t : config.thetas) ec.initial_states.push_back(BlochStated::canonical(t, 0));
  ec.noise = config.noise;
  ec.base = config.base;
  ec.dt = config.dt;
  ec.stop = StopRule::fuzzy(config.delta_theta, config.max_steps);
  ec.runs = config.runs;
  ec.master_seed = config.seed;
  const EnsembleResult result = ensemble(ec, config.threads);

  const Comparison born = compare(result, Target::born());
  const Comparison split = compare(result, Target::splitting(config.delta_theta));

  Json j = Json::object();
  j["schema_version"] = kSummaryVersion;
  j["command"] = "ensemble";
  Json cfg = Json::object();
  cfg["preset"] = to_string(config.preset);
  cfg["seed"] = config.seed;
  cfg["runs"] = config.runs;
  cfg["dt"] = config.dt;
  cfg["delta_theta"] = config.delta_theta;
  cfg["max_steps"] = config.max_steps;
  cfg["noise"] = noise_json(config.noise);
  cfg["base_generator"] = generator_json(config.base);
  cfg["thetas"] = config.thetas;
  j["config"] = std::move(cfg);
  j["biased_noise"] = result.biased_noise;

  Json points = Json::array();
  std::size_t unresolved = 0;
  for (std::size_t i = 0; i < config.thetas.size(); ++i) {
    const auto& b = born.points[i];
    const auto& s = split.points[i];
    Json p = Json::object();
    p["theta0"] = b.theta0;
    p["weight0"] = weight_of(b.theta0);
    p["born"] = b.target;
    p["splitting"] = s.target;
    p["frequency"] = number(b.frequency);
    p["standard_error"] = number(b.standard_error);
    p["z_born"] = number(b.z);
    p["z_splitting"] = number(s.z);
    p["counts"] = counts_json(b.counts);
    p["mean_steps"] = result.mean_steps[i];
    points.push_back(std::move(p));
    unresolved += b.counts.unresolved;
  }
  j["points"] = std::move(points);
  Json summary = Json::object();
  summary["born"] = summary_json(born);
  summary["splitting"] = summary_json(split);
  summary["unresolved"] = unresolved;
  j["summary"] = std::move(summary);
  write_json(j, config.out);

  const std::string table = config.table.empty() ? replace_extension(config.out, ".csv") : config.table;
  auto os = open_output(table);
  os << "theta0,weight0,born,splitting,frequency,stderr,z_born,z_splitting,pointer0,pointer1,unresolved,runs,"
        "mean_steps\n";
  for (std::size_t i = 0; i < config.thetas.size(); ++i) {
    const auto& b = born.points[i];
    const auto& s = split.points[i];
    os << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", format_number(b.theta0),
                      format_number(weight_of(b.theta0)), format_number(b.target), format_number(s.target),
                      format_number(b.frequency), format_number(b.standard_error), format_number(b.z),
                      format_number(s.z), b.counts.pointer0, b.counts.pointer1, b.counts.unresolved,
                      b.counts.total(), format_number(result.mean_steps[i]));
  }
  finish(os, table);
}

void run_nonlinear(const NonlinearConfig& config) {
  config.validate();
  nonlinear::StudyConfig sc;
  sc.thetas = config.thetas;
  sc.law = config.law;
  sc.draws = config.draws;
  sc.master_seed = config.seed;
  sc.integration = config.integration;
  sc.mode = config.mode == NonlinearMode::integrate ? nonlinear::StudyMode::integrate : nonlinear::StudyMode::outcome;
  const auto result = nonlinear::study(sc, config.threads);

  std::vector<double> targets;
  for (double t : config.thetas) targets.push_back(nonlinear::born_probability(t, config.law));
  const Comparison cmp = compare(config.thetas, result.counts, targets, "born");

  Json j = Json::object();
  j["schema_version"] = kSummaryVersion;
  j["command"] = "nonlinear";
  Json cfg = Json::object();
  cfg["preset"] = to_string(config.preset);
  cfg["seed"] = config.seed;
  cfg["draws"] = config.draws;
  cfg["mode"] = config.mode == NonlinearMode::outcome     ? "outcome"
                : config.mode == NonlinearMode::integrate ? "integrate"
                                                          : "cross-check";
  cfg["lambda_law"] = config.law.describe();
  cfg["dt"] = config.integration.dt;
  cfg["tol"] = config.integration.tol;
  cfg["max_steps"] = config.integration.max_steps;
  cfg["thetas"] = config.thetas;
  j["config"] = std::move(cfg);

  Json points = Json::array();
  for (const auto& p : cmp.points) {
    Json q = Json::object();
    q["theta0"] = p.theta0;
    q["weight0"] = weight_of(p.theta0);
    q["born"] = p.target;
    q["frequency"] = number(p.frequency);
    q["standard_error"] = number(p.standard_error);
    q["z_born"] = number(p.z);
    q["counts"] = counts_json(p.counts);
    points.push_back(std::move(q));
  }
  j["points"] = std::move(points);
  Json summary = Json::object();
  summary["born"] = summary_json(cmp);

  if (config.mode == NonlinearMode::cross_check) {
    sc.mode = nonlinear::StudyMode::integrate;
    const auto integrated = nonlinear::study(sc, config.threads);
    std::size_t disagreements = 0;
    std::size_t decisive = 0;
    for (std::size_t i = 0; i < config.thetas.size(); ++i) {
      for (std::size_t r = 0; r < config.draws; ++r) {
        if (result.outcomes[i][r] == integrated.outcomes[i][r]) continue;
        ++disagreements;
        if (std::abs(std::cos(config.thetas[i]) - result.lambdas[i][r]) > kDecisiveMargin) ++decisive;
      }
    }
    Json cc = Json::object();
    cc["pairs"] = config.thetas.size() * config.draws;
    cc["disagreements"] = disagreements;
    cc["decisive_margin"] = kDecisiveMargin;
    cc["decisive_disagreements"] = decisive;
    summary["cross_check"] = std::move(cc);
  }
  j["summary"] = std::move(summary);
  write_json(j, config.out);

  const std::string table = config.table.empty() ? replace_extension(config.out, ".csv") : config.table;
  auto os = open_output(table);
  os << "theta0,weight0,born,frequency,stderr,z_born,pointer0,pointer1,separatrix,unresolved,runs\n";
  for (const auto& p : cmp.points) {
    os << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", format_number(p.theta0),
                      format_number(weight_of(p.theta0)), format_number(p.target), format_number(p.frequency),
                      format_number(p.standard_error), format_number(p.z), p.counts.pointer0, p.counts.pointer1,
                      p.counts.separatrix, p.counts.unresolved, p.counts.total());
  }
  finish(os, table);
}

void run_envariance(const EnvarianceConfig& config) {
  config.validate();
  using namespace envariance;
  const std::size_t n = config.n;
  const std::size_t m = config.m;
  const std::size_t N = n + m;
  const TensorState two = equal_weight_state(n, m);
  const TensorState three = extend_with_second_env(two);

  // System swap, answered by pairing env1 labels i and n + i as far as the
  // branches allow; a complete answer exists only for n == m.
  const SwapOp us = SwapOp::local(0, 0, 1);
  SwapOp ue;
  for (std::size_t i = 0; i < std::min(n, m); ++i) {
    if (ue.is_identity())
      ue = SwapOp::local(1, i, n + i);
    else
      ue.add({i}, {n + i});
  }
  Json checks = Json::array();
  checks.push_back(check_json("system_swap_with_env1_swap", check_envariance(two, us, ue)));

  // Combined system and env1 swap |0>|i> <-> |1>|j>, answered by e_i <-> e_j.
  EnvarianceCheck worst{true, 1.0, 0.0};
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = n; k < N; ++k) {
      const auto c = check_envariance(three, SwapOp::joint({0, 1}, {0, i}, {1, k}), SwapOp::local(2, i, k));
      worst.envariant = worst.envariant && c.envariant;
      worst.overlap = std::min(worst.overlap, c.overlap);
      worst.residual = std::max(worst.residual, c.residual);
      ++pairs;
    }
  }
  checks.push_back(check_json("combined_swap_with_env2_swap_all_pairs", worst));

  const DensityMatrix pure = pure_density(two, {}, {0});
  const DensityMatrix branch = branch_density(two);
  const DensityMatrix pure_sys = partial_trace(pure, {1});
  const DensityMatrix branch_sys = partial_trace(branch, {1});
  const double marginal_diff = (pure_sys.matrix() - branch_sys.matrix()).cwiseAbs().maxCoeff();

  Json j = Json::object();
  j["schema_version"] = kSummaryVersion;
  j["command"] = "envariance";
  Json cfg = Json::object();
  cfg["n"] = n;
  cfg["m"] = m;
  j["config"] = std::move(cfg);
  j["checks"] = std::move(checks);
  j["branch_pairs"] = pairs;
  const auto alone = check_envariance(two, us);
  Json sa = Json::object();
  sa["overlap"] = alone.overlap;
  sa["residual"] = alone.residual;
  j["system_swap_alone"] = std::move(sa);
  j["pure_density"] = density_json(pure);
  j["branch_density"] = density_json(branch);
  j["frobenius_distance"] = frobenius_distance(pure, branch);
  j["expected_distance"] = branch_coherence_norm(n, m);
  Json marg = Json::object();
  marg["pure"] = density_json(pure_sys);
  marg["branch"] = density_json(branch_sys);
  marg["max_abs_difference"] = marginal_diff;
  marg["agree"] = marginal_diff <= kEnvarianceTolerance;
  j["system_marginal"] = std::move(marg);
  write_json(j, config.out);
}

}  // namespace blochflow::cli
