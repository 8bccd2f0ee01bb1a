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

#include "blochflow/cli/config.hpp"

#include <cmath>
#include <numbers>

#include "blochflow/envariance.hpp"

namespace blochflow::cli {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

void require_out(const std::string& out) { require(!out.empty(), "--out is required"); }

void require_generator(const Generatord& g) {
  for (int k = 0; k < 8; ++k)
    require(std::isfinite(g[static_cast<GeneratorParameter>(k)]), "generator parameters must be finite");
}

void require_thetas(const std::vector<double>& thetas) {
  require(!thetas.empty(), "at least one initial state is required");
  for (double t : thetas) require(t >= 0 && t <= kPi, "initial theta must lie in [0, pi]");
}

}  // namespace

Preset parse_preset(const std::string& name) {
  if (name == "none") return Preset::none;
  if (name == "fig1") return Preset::fig1;
  if (name == "fig3") return Preset::fig3;
  if (name == "fig4") return Preset::fig4;
  if (name == "fig5") return Preset::fig5;
  if (name == "fig6") return Preset::fig6;
  throw ConfigError("unknown preset '" + name + "'");
}

std::string to_string(Preset p) {
  switch (p) {
    case Preset::none: return "none";
    case Preset::fig1: return "fig1";
    case Preset::fig3: return "fig3";
    case Preset::fig4: return "fig4";
    case Preset::fig5: return "fig5";
    case Preset::fig6: return "fig6";
  }
  return "none";
}

std::vector<double> thetas_from_weights(const std::vector<double>& weights) {
  std::vector<double> out;
  out.reserve(weights.size());
  for (double w : weights) {
    require(w >= 0 && w <= 1, "initial weights must lie in [0, 1]");
    out.push_back(2 * std::acos(std::sqrt(w)));
  }
  return out;
}

std::vector<double> default_weights() { return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}; }

std::string replace_extension(const std::string& path, const std::string& ext) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + ext;
  return path.substr(0, dot) + ext;
}

FlowFieldConfig flow_field_preset(Preset p) {
  FlowFieldConfig c;
  c.preset = p;
  switch (p) {
    case Preset::fig1:
      c.generator = sigma_y_generator(1.0);
      break;
    case Preset::fig3:
      c.generator.alpha_i = 0.5;
      c.generator.delta_i = -0.5;
      c.generator.beta_i = 0;
      c.generator.gamma_i = 0.5;
      c.generator.beta_r = 0.1;
      c.generator.gamma_r = 0;
      break;
    case Preset::fig6:
      c.lambda = 0.3;
      break;
    case Preset::none:
      break;
    default:
      throw ConfigError("flow-field accepts presets fig1, fig3, fig6 or none");
  }
  return c;
}

TrajectoryConfig trajectory_preset(Preset p) {
  TrajectoryConfig c;
  c.preset = p;
  c.thetas = thetas_from_weights({0.1, 0.3, 0.5, 0.7, 0.9});
  switch (p) {
    case Preset::fig4:
      c.noise = NoiseLaw::gaussian(NoiseTarget::alpha_i, 0, 20);
      c.dt = 0.005;
      c.steps = 10'000;
      break;
    case Preset::none:
      c.noise = NoiseLaw::none();
      break;
    default:
      throw ConfigError("trajectory accepts presets fig4 or none");
  }
  return c;
}

EnsembleCmdConfig ensemble_preset(Preset p) {
  EnsembleCmdConfig c;
  c.preset = p;
  c.thetas = thetas_from_weights(default_weights());
  switch (p) {
    case Preset::fig5:
    case Preset::none:
      c.noise = NoiseLaw::flat(NoiseTarget::alpha_minus_delta_i, -1, 1);
      c.dt = 0.05;
      c.delta_theta = 0.2;
      c.max_steps = 10'000;
      c.runs = 10'000;
      break;
    default:
      throw ConfigError("ensemble accepts presets fig5 or none");
  }
  return c;
}

NonlinearConfig nonlinear_preset(Preset p) {
  if (p != Preset::fig6 && p != Preset::none) throw ConfigError("nonlinear accepts presets fig6 or none");
  NonlinearConfig c;
  c.preset = p;
  c.thetas = thetas_from_weights(default_weights());
  return c;
}

void FlowFieldConfig::validate() const {
  require_out(out);
  require_generator(generator);
  require(n_theta >= 1 && n_phi >= 1, "grid sizes must be positive");
  require(n_theta * n_phi <= 1'000'000, "grid has more than 10^6 points");
  require(theta_margin >= 0 && theta_margin < kPi / 2, "theta margin must lie in [0, pi/2)");
  if (lambda) require(*lambda >= -1 && *lambda <= 1, "lambda must lie in [-1, 1]");
}

void TrajectoryConfig::validate() const {
  require_out(out);
  require_thetas(thetas);
  require_generator(base);
  noise.validate();
  require(dt > 0 && std::isfinite(dt), "dt must be positive");
  require(steps >= 1, "steps must be >= 1");
  if (delta_theta) require(*delta_theta > 0 && *delta_theta < kPi / 2, "delta-theta must lie in (0, pi/2)");
}

void EnsembleCmdConfig::validate() const {
  require_out(out);
  require_thetas(thetas);
  require_generator(base);
  noise.validate();
  require(runs >= 1, "runs must be >= 1");
  require(dt > 0 && std::isfinite(dt), "dt must be positive");
  require(max_steps >= 1, "max-steps must be >= 1");
  require(delta_theta > 0 && delta_theta < kPi / 2, "delta-theta must lie in (0, pi/2)");
  for (double t : thetas)
    require(t >= delta_theta && t <= kPi - delta_theta, "initial theta must lie inside the fuzzy band");
}

void NonlinearConfig::validate() const {
  require_out(out);
  require_thetas(thetas);
  require(draws >= 1, "draws must be >= 1");
  require(integration.dt > 0, "dt must be positive");
  require(integration.tol > 0, "tol must be positive");
  require(integration.max_steps >= 1, "max-steps must be >= 1");
}

void EnvarianceConfig::validate() const {
  require_out(out);
  require(n >= 1 && m >= 1, "n and m must be >= 1");
  require(2 * (n + m) * (n + m) <= envariance::kMaxDimension, "n + m too large for the dense representation");
}

}  // namespace blochflow::cli
