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

#include "blochflow/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace blochflow {

namespace {

constexpr double kPi = std::numbers::pi;

void check_band(double delta_theta) {
  if (!(delta_theta > 0 && delta_theta < kPi / 2))
    throw DomainError("delta_theta must lie in (0, pi/2)");
}

void check_in_band(double theta0, double delta_theta) {
  check_band(delta_theta);
  if (!(theta0 >= delta_theta && theta0 <= kPi - delta_theta))
    throw DomainError("theta0 lies outside [delta_theta, pi - delta_theta]");
}

}  // namespace

double walk_coordinate(double theta) { return std::log(std::cos(theta / 2) / std::sin(theta / 2)); }

double splitting_probability(double theta0, double delta_theta) {
  check_in_band(theta0, delta_theta);
  // Exact at the centre and at both edges.
  if (theta0 == kPi / 2) return 0.5;
  if (theta0 == delta_theta) return 1.0;
  if (theta0 == kPi - delta_theta) return 0.0;
  return 0.5 + 0.5 * walk_coordinate(theta0) / walk_coordinate(delta_theta);
}

double born_weight(double theta0) {
  if (!(theta0 >= 0 && theta0 <= kPi)) throw DomainError("born_weight: theta0 outside [0, pi]");
  const double c = std::cos(theta0 / 2);
  return c * c;
}

WalkEstimate random_walk_oracle(double theta0, double delta_theta, double step_size, std::size_t runs,
                                std::uint64_t seed, unsigned threads) {
  check_in_band(theta0, delta_theta);
  if (runs < 1) throw ConfigError("random_walk_oracle: runs must be >= 1");
  const double edge = walk_coordinate(delta_theta);
  if (!(step_size > 0 && step_size < edge)) throw ConfigError("random_walk_oracle: step size must lie in (0, band half-width)");

  WalkEstimate est;
  est.runs = runs;
  if (theta0 == delta_theta || theta0 == kPi - delta_theta) {
    est.probability = theta0 == delta_theta ? 1.0 : 0.0;
    return est;
  }

  const double u0 = walk_coordinate(theta0);
  std::vector<char> hit_zero(runs, 0);
  parallel_for(runs, threads, [&](std::size_t r) {
    RngStream rng = make_stream(seed, 0, r);
    std::uniform_real_distribution<double> du(-step_size, step_size);
    double u = u0;
    while (u > -edge && u < edge) u += du(rng);
    hit_zero[r] = u >= edge ? 1 : 0;
  });
  std::size_t n0 = 0;
  for (char h : hit_zero) n0 += static_cast<std::size_t>(h);
  est.probability = static_cast<double>(n0) / static_cast<double>(runs);
  est.standard_error = std::sqrt(est.probability * (1 - est.probability) / static_cast<double>(runs));
  return est;
}

double Target::probability(double theta0) const {
  return kind == Kind::born ? born_weight(theta0) : splitting_probability(theta0, delta_theta);
}

std::string Target::name() const { return kind == Kind::born ? "born" : "splitting"; }

Comparison compare(const std::vector<double>& thetas, const std::vector<OutcomeCounts>& counts,
                   const Target& target) {
  std::vector<double> targets;
  targets.reserve(thetas.size());
  for (double t : thetas) targets.push_back(target.probability(t));
  return compare(thetas, counts, targets, target.name());
}

Comparison compare(const std::vector<double>& thetas, const std::vector<OutcomeCounts>& counts,
                   const std::vector<double>& targets, std::string target_name) {
  if (thetas.size() != counts.size() || thetas.size() != targets.size())
    throw ConfigError("compare: thetas, counts and targets differ in length");
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  constexpr double inf = std::numeric_limits<double>::infinity();

  Comparison cmp;
  cmp.target_name = std::move(target_name);
  cmp.points.reserve(thetas.size());
  bool any = false;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    ComparisonPoint pt;
    pt.theta0 = thetas[i];
    pt.counts = counts[i];
    pt.target = targets[i];
    if (!(pt.target >= 0 && pt.target <= 1)) throw DomainError("compare: target probability outside [0, 1]");
    const auto resolved = static_cast<double>(counts[i].resolved());
    if (counts[i].resolved() == 0) {
      pt.insufficient = true;
      pt.frequency = pt.standard_error = pt.z = nan;
      cmp.points.push_back(pt);
      continue;
    }
    pt.frequency = static_cast<double>(counts[i].pointer0) / resolved;
    pt.standard_error = std::sqrt(pt.frequency * (1 - pt.frequency) / resolved);
    const double null_var = pt.target * (1 - pt.target) / resolved;
    const double diff = pt.frequency - pt.target;
    if (null_var > 0)
      pt.z = diff / std::sqrt(null_var);
    else
      pt.z = diff == 0 ? 0.0 : std::copysign(inf, diff);

    const double az = std::abs(pt.z);
    if (!any || az > cmp.max_abs_z) {
      cmp.max_abs_z = az;
      cmp.max_index = i;
    }
    any = true;
    cmp.chi_square += pt.z * pt.z;
    ++cmp.degrees_of_freedom;
    cmp.points.push_back(pt);
  }
  if (!any) throw InsufficientData("compare: no initial condition has a resolved run");
  return cmp;
}

Comparison compare(const EnsembleResult& result, const Target& target) {
  std::vector<double> thetas;
  thetas.reserve(result.config.initial_states.size());
  for (const auto& s : result.config.initial_states) thetas.push_back(s.theta);
  return compare(thetas, result.counts, target);
}

}  // namespace blochflow
