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

#ifndef BLOCHFLOW_INTEGRATOR_HPP
#define BLOCHFLOW_INTEGRATOR_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "blochflow/core.hpp"
#include "blochflow/rng.hpp"

namespace blochflow {

enum class Outcome : std::uint8_t { pointer0, pointer1, unresolved, separatrix };

std::string_view to_string(Outcome o);

/// Which generator entry the noise acts on. `alpha_minus_delta_i` treats the
/// difference alpha_i - delta_i as one fluctuating parameter x, applied as
/// alpha_i += x/2, delta_i -= x/2.
enum class NoiseTarget {
  alpha_r, alpha_i, beta_r, beta_i, gamma_r, gamma_i, delta_r, delta_i, alpha_minus_delta_i
};

std::string_view to_string(NoiseTarget t);
NoiseTarget parse_noise_target(std::string_view name);

struct FlatLaw {
  double lo{0};
  double hi{0};
};

struct GaussianLaw {
  double mean{0};
  double sigma{0};
};

/// Distribution of the fluctuating generator parameter, redrawn every step.
struct NoiseLaw {
  NoiseTarget target{NoiseTarget::alpha_minus_delta_i};
  std::variant<FlatLaw, GaussianLaw> distribution{FlatLaw{}};

  static NoiseLaw flat(NoiseTarget target, double lo, double hi);
  static NoiseLaw gaussian(NoiseTarget target, double mean, double sigma);
  static NoiseLaw none() { return flat(NoiseTarget::alpha_minus_delta_i, 0, 0); }

  /// Throws ConfigError for hi < lo, sigma < 0 or non-finite parameters.
  void validate() const;

  /// True unless the law is symmetric about zero.
  bool biased() const;

  /// Copy of `base` with `value` overlaid on the target parameter.
  Generatord apply(const Generatord& base, double value) const;

  std::string describe() const;
};

/// Draws values of a NoiseLaw from one stream. Holds the distribution state
/// so Gaussian pairs are not discarded between steps.
class NoiseSampler {
 public:
  explicit NoiseSampler(const NoiseLaw& law);
  double operator()(RngStream& rng);

 private:
  std::variant<FlatLaw, GaussianLaw> law_;
  std::uniform_real_distribution<double> uniform_;
  std::normal_distribution<double> normal_;
};

/// Termination of a trajectory. Without a fuzzy band a trajectory can only
/// end Unresolved, after max_steps.
struct StopRule {
  std::optional<double> fuzzy_delta_theta;
  std::optional<std::size_t> max_steps;

  static StopRule fuzzy(double delta_theta, std::size_t max_steps) { return {delta_theta, max_steps}; }
  static StopRule steps(std::size_t max_steps) { return {std::nullopt, max_steps}; }

  /// delta_theta must lie in (0, pi/2); at least one bound must be set.
  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  /// Gauge-fixed (n = 1, chi = 0) states at `times`.
  std::vector<BlochStated> samples;
  Outcome outcome{Outcome::unresolved};
  std::size_t steps{0};
};

/// One interval of constant generator: exact evolution over dt, then the
/// gauge is reset to n = 1, chi = 0.
BlochStated step(const BlochStated& s, const Generatord& g, double dt);

/// Piecewise-constant stochastic evolution. Each step draws a fresh noise
/// value, overlays it on `base` and evolves exactly for dt. The state is
/// checked against the stop rule before every step. With record_stride k > 0
/// every k-th step is recorded; with 0 only the first and last states are.
Trajectory simulate(const BlochStated& s0, const NoiseLaw& noise, const Generatord& base, double dt,
                    const StopRule& stop, RngStream& rng, std::size_t record_stride = 1);

struct OutcomeCounts {
  std::size_t pointer0{0};
  std::size_t pointer1{0};
  std::size_t unresolved{0};
  std::size_t separatrix{0};

  std::size_t resolved() const { return pointer0 + pointer1; }
  std::size_t total() const { return pointer0 + pointer1 + unresolved + separatrix; }
  void add(Outcome o);
  OutcomeCounts& operator+=(const OutcomeCounts& other);
  friend bool operator==(const OutcomeCounts&, const OutcomeCounts&) = default;
};

struct EnsembleConfig {
  std::vector<BlochStated> initial_states;
  NoiseLaw noise;
  Generatord base;
  double dt{0.05};
  StopRule stop;
  std::size_t runs{1};
  std::uint64_t master_seed{0};
};

struct EnsembleResult {
  EnsembleConfig config;
  /// One entry per initial state.
  std::vector<OutcomeCounts> counts;
  /// outcomes[ic][run].
  std::vector<std::vector<Outcome>> outcomes;
  /// Mean number of steps taken per run, per initial state.
  std::vector<double> mean_steps;
  bool biased_noise{false};
};

/// Runs config.runs independent trajectories per initial state. Trajectory
/// (ic, run) uses make_stream(master_seed, ic, run), so the result is
/// identical for any thread count.
EnsembleResult ensemble(const EnsembleConfig& config, unsigned threads = 1);

struct FlowSample {
  double theta{0};
  double phi{0};
  double theta_dot{0};
  double phi_dot{0};
  /// sqrt(theta_dot^2 + sin^2(theta) phi_dot^2), the speed in the round metric.
  double speed{0};
  /// Grid point at a pole; rates there are not defined and left NaN.
  bool pole{false};
};

struct FlowField {
  std::vector<double> theta_grid;
  std::vector<double> phi_grid;
  /// Row-major over (theta, phi).
  std::vector<FlowSample> samples;

  const FlowSample& at(std::size_t i_theta, std::size_t i_phi) const {
    return samples[i_theta * phi_grid.size() + i_phi];
  }
};

FlowField flow_field(const Generatord& g, std::vector<double> theta_grid, std::vector<double> phi_grid);

/// Evenly spaced grid on [lo, hi] with `count` points (count >= 2), or {lo}.
std::vector<double> linear_grid(double lo, double hi, std::size_t count);

/// Time until theta first reaches `theta_target`, or nullopt if that does
/// not happen within max_steps.
std::optional<double> first_passage_time(const BlochStated& s0, double theta_target, const NoiseLaw& noise,
                                         const Generatord& base, double dt, std::size_t max_steps,
                                         RngStream& rng);

/// First-passage statistics with censoring at max_steps * dt. The restricted
/// mean E[min(T, T_max)] is finite even though the untruncated mean of a
/// recurrent walk need not be.
struct PassageStats {
  double restricted_mean{0};
  double standard_error{0};
  std::size_t runs{0};
  std::size_t censored{0};
};

/// Run r uses make_stream(master_seed, stream_group, r).
PassageStats passage_statistics(const BlochStated& from, double theta_to, const NoiseLaw& noise,
                                const Generatord& base, double dt, std::size_t max_steps, std::size_t runs,
                                std::uint64_t master_seed, std::uint64_t stream_group = 0,
                                unsigned threads = 1);

}  // namespace blochflow

#endif  // BLOCHFLOW_INTEGRATOR_HPP
