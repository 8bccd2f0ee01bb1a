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

#ifndef BLOCHFLOW_NONLINEAR_HPP
#define BLOCHFLOW_NONLINEAR_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "blochflow/integrator.hpp"

/// The state-dependent collapse model
///   theta' = sin(theta) (lambda - cos(theta)),  phi' = 0,
/// with lambda drawn once per measurement.
namespace blochflow::nonlinear {

/// |cos(theta0) - lambda| at or below this counts as sitting on the separatrix.
/// cos(acos(x)) == x only up to rounding, so exact equality is too strict.
inline constexpr double kSeparatrixTolerance = 1e-14;

struct Rates {
  double theta_dot{0};
  double phi_dot{0};
};

Rates derivatives(double theta, double lambda);

/// Late-time pointer state: pointer0 if cos(theta0) > lambda, pointer1 if
/// cos(theta0) < lambda, separatrix if they agree within `tol`. Poles map to
/// their own pointer. Throws DomainError for theta0 outside [0, pi].
Outcome outcome(double theta0, double lambda, double tol = kSeparatrixTolerance);

/// Distribution of lambda on [-1, 1].
class LambdaLaw {
 public:
  enum class Kind { flat, point, density };

  /// Uniform on [lo, hi] within [-1, 1].
  static LambdaLaw flat(double lo = -1, double hi = 1);
  /// Deterministic lambda.
  static LambdaLaw point(double value);
  /// Arbitrary density on [-1, 1]; throws ConfigError unless it is
  /// non-negative and integrates to 1 within 1e-6.
  static LambdaLaw density(std::function<double(double)> f);

  Kind kind() const { return kind_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

  /// P(lambda < c), with half the mass of an atom at c.
  double mass_below(double c) const;
  double sample(RngStream& rng) const;
  std::string describe() const;

 private:
  Kind kind_{Kind::flat};
  double lo_{-1};
  double hi_{1};
  std::function<double(double)> f_;
  /// Tabulated CDF of a density law on an even grid over [-1, 1].
  std::shared_ptr<const std::vector<double>> cdf_;
};

/// P(pointer0) = integral of f(lambda) Theta(cos(theta0) - lambda).
double born_probability(double theta0, const LambdaLaw& law);

struct NlTrajectory {
  std::vector<double> times;
  std::vector<double> thetas;
  /// Constant: the flow has no phi component.
  double phi{0};
  Outcome outcome{Outcome::unresolved};
  std::size_t steps{0};
};

struct NlIntegration {
  double dt{1e-3};
  double tol{1e-6};
  std::size_t max_steps{50'000'000};
  /// Record every k-th step; 0 keeps only the first and last points.
  std::size_t record_stride{0};
};

/// Fixed-step RK4 until theta < tol (pointer0) or pi - theta < tol
/// (pointer1); unresolved when max_steps run out.
NlTrajectory simulate(double theta0, double lambda, const NlIntegration& opts = {}, double phi0 = 0);

enum class StudyMode { outcome, integrate };

struct StudyConfig {
  std::vector<double> thetas;
  LambdaLaw law{LambdaLaw::flat()};
  std::size_t draws{10'000};
  std::uint64_t master_seed{0};
  StudyMode mode{StudyMode::outcome};
  NlIntegration integration;
};

struct StudyResult {
  StudyConfig config;
  std::vector<OutcomeCounts> counts;
  /// lambdas[i][r] and outcomes[i][r] for draw r at initial state i.
  std::vector<std::vector<double>> lambdas;
  std::vector<std::vector<Outcome>> outcomes;
};

/// Draw (i, r) uses make_stream(master_seed, i, r), so the counts do not
/// depend on the thread count or on the mode's cost.
StudyResult study(const StudyConfig& config, unsigned threads = 1);

/// Flow of the model at fixed lambda on a (theta, phi) grid. Poles are
/// regular here, so no sample is marked.
FlowField flow_field(double lambda, std::vector<double> theta_grid, std::vector<double> phi_grid);

}  // namespace blochflow::nonlinear

#endif  // BLOCHFLOW_NONLINEAR_HPP
