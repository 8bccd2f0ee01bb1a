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

#ifndef BLOCHFLOW_CLI_CONFIG_HPP
#define BLOCHFLOW_CLI_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blochflow/integrator.hpp"
#include "blochflow/nonlinear.hpp"

namespace blochflow::cli {

/// Version of the JSON summary layout; bump on incompatible changes.
inline constexpr int kSummaryVersion = 1;

enum class Preset { none, fig1, fig3, fig4, fig5, fig6 };

Preset parse_preset(const std::string& name);
std::string to_string(Preset p);

struct FlowFieldConfig {
  std::string out;
  Preset preset{Preset::fig3};
  Generatord generator;
  /// Set for the nonlinear field.
  std::optional<double> lambda;
  std::size_t n_theta{37};
  std::size_t n_phi{72};
  /// The theta grid spans [margin, pi - margin].
  double theta_margin{0.05};

  void validate() const;
};

struct TrajectoryConfig {
  std::string out;
  Preset preset{Preset::fig4};
  std::uint64_t seed{0};
  unsigned threads{1};
  std::vector<double> thetas;
  Generatord base;
  NoiseLaw noise;
  double dt{0.005};
  std::size_t steps{10'000};
  std::optional<double> delta_theta;
  std::size_t stride{1};

  void validate() const;
};

struct EnsembleCmdConfig {
  std::string out;
  std::string table;
  Preset preset{Preset::fig5};
  std::uint64_t seed{0};
  unsigned threads{1};
  std::vector<double> thetas;
  Generatord base;
  NoiseLaw noise;
  double dt{0.05};
  double delta_theta{0.2};
  std::size_t max_steps{10'000};
  std::size_t runs{10'000};

  void validate() const;
};

enum class NonlinearMode { outcome, integrate, cross_check };

struct NonlinearConfig {
  std::string out;
  std::string table;
  Preset preset{Preset::fig6};
  std::uint64_t seed{0};
  unsigned threads{1};
  std::vector<double> thetas;
  nonlinear::LambdaLaw law{nonlinear::LambdaLaw::flat()};
  std::size_t draws{10'000};
  NonlinearMode mode{NonlinearMode::outcome};
  nonlinear::NlIntegration integration;

  void validate() const;
};

struct EnvarianceConfig {
  std::string out;
  std::size_t n{2};
  std::size_t m{1};

  void validate() const;
};

/// theta0 = 2 acos(sqrt(w)) for each initial weight w = cos^2(theta0/2).
std::vector<double> thetas_from_weights(const std::vector<double>& weights);

/// 0.1, 0.2, ..., 0.9.
std::vector<double> default_weights();

/// Preset parameters. Explicit flags are applied on top by the caller.
FlowFieldConfig flow_field_preset(Preset p);
TrajectoryConfig trajectory_preset(Preset p);
EnsembleCmdConfig ensemble_preset(Preset p);
NonlinearConfig nonlinear_preset(Preset p);

/// Same path with its extension replaced by `ext` (which includes the dot).
std::string replace_extension(const std::string& path, const std::string& ext);

}  // namespace blochflow::cli

#endif  // BLOCHFLOW_CLI_CONFIG_HPP
