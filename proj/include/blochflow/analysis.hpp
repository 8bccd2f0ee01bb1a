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

#ifndef BLOCHFLOW_ANALYSIS_HPP
#define BLOCHFLOW_ANALYSIS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blochflow/integrator.hpp"

namespace blochflow {

/// Probability of reaching theta <= delta_theta before theta >= pi - delta_theta
/// for an unbiased walk in u = ln cot(theta/2):
///   1/2 + ln cot(theta0/2) / (2 ln cot(delta_theta/2)).
/// Throws DomainError unless delta_theta is in (0, pi/2) and theta0 lies in
/// [delta_theta, pi - delta_theta].
double splitting_probability(double theta0, double delta_theta);

/// cos^2(theta0/2). Throws DomainError outside [0, pi].
double born_weight(double theta0);

/// Walk coordinate u = ln cot(theta/2); +inf at theta = 0.
double walk_coordinate(double theta);

struct WalkEstimate {
  double probability{0};
  double standard_error{0};
  std::size_t runs{0};
};

/// Monte Carlo splitting probability of a walk in u with steps drawn
/// uniformly from [-step_size, step_size], absorbed at u = +-ln cot(delta_theta/2).
/// Walk r uses make_stream(seed, 0, r); reusing a seed across step sizes
/// gives common random numbers.
WalkEstimate random_walk_oracle(double theta0, double delta_theta, double step_size, std::size_t runs,
                                std::uint64_t seed, unsigned threads = 1);

/// What an ensemble is compared against.
struct Target {
  enum class Kind { born, splitting };
  Kind kind{Kind::born};
  double delta_theta{0};

  static Target born() { return {Kind::born, 0}; }
  static Target splitting(double delta_theta) { return {Kind::splitting, delta_theta}; }

  double probability(double theta0) const;
  std::string name() const;
};

struct ComparisonPoint {
  double theta0{0};
  double target{0};
  /// n0 / (n0 + n1); NaN without resolved runs.
  double frequency{0};
  /// sqrt(f (1 - f) / resolved).
  double standard_error{0};
  /// (f - p) / sqrt(p (1 - p) / resolved) with p the target.
  double z{0};
  OutcomeCounts counts;
  /// No resolved runs; excluded from the summary.
  bool insufficient{false};
};

struct Comparison {
  std::string target_name;
  std::vector<ComparisonPoint> points;
  double max_abs_z{0};
  /// Index of the point attaining max_abs_z.
  std::size_t max_index{0};
  /// Sum of z^2, one bin per initial condition.
  double chi_square{0};
  std::size_t degrees_of_freedom{0};
};

/// Throws InsufficientData when no point has a resolved run.
Comparison compare(const std::vector<double>& thetas, const std::vector<OutcomeCounts>& counts,
                   const Target& target);
/// Same, against explicit per-point target probabilities.
Comparison compare(const std::vector<double>& thetas, const std::vector<OutcomeCounts>& counts,
                   const std::vector<double>& targets, std::string target_name);
Comparison compare(const EnsembleResult& result, const Target& target);

}  // namespace blochflow

#endif  // BLOCHFLOW_ANALYSIS_HPP
