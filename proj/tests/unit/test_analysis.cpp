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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "blochflow/analysis.hpp"

namespace blochflow {
namespace {

constexpr double kPi = std::numbers::pi;

// Same closed form written with tan instead of cot.
double split_oracle(double theta0, double dtheta) {
  return 0.5 + 0.5 * std::log(std::tan(theta0 / 2)) / std::log(std::tan(dtheta / 2));
}

TEST(Splitting, Examples) {
  for (double d : {0.01, 0.2, 1.0, 1.5}) EXPECT_EQ(splitting_probability(kPi / 2, d), 0.5);
  EXPECT_EQ(splitting_probability(0.2, 0.2), 1.0);
  EXPECT_EQ(splitting_probability(kPi - 0.2, 0.2), 0.0);
  EXPECT_NEAR(splitting_probability(kPi / 3, 0.2), 0.6195, 5e-5);
  EXPECT_NEAR(splitting_probability(kPi / 3, 0.2), split_oracle(kPi / 3, 0.2), 1e-14);
}

TEST(Splitting, MatchesOracleOnGrid) {
  for (double d : {0.05, 0.2, 0.7}) {
    for (int k = 1; k < 50; ++k) {
      const double t = d + (kPi - 2 * d) * k / 50.0;
      EXPECT_NEAR(splitting_probability(t, d), split_oracle(t, d), 1e-13);
    }
  }
}

TEST(Splitting, DomainErrors) {
  EXPECT_THROW(splitting_probability(0.1, 0.2), DomainError);
  EXPECT_THROW(splitting_probability(kPi - 0.1, 0.2), DomainError);
  EXPECT_THROW(splitting_probability(1.0, 0.0), DomainError);
  EXPECT_THROW(splitting_probability(1.0, kPi / 2), DomainError);
}

TEST(Splitting, MonotoneAndReflectionSymmetric) {
  const double d = 0.2;
  double prev = 2;
  for (int k = 0; k <= 200; ++k) {
    const double t = std::min(d + (kPi - 2 * d) * k / 200.0, kPi - d);
    const double p = splitting_probability(t, d);
    EXPECT_GE(p, 0);
    EXPECT_LE(p, 1);
    EXPECT_LT(p, prev);
    prev = p;
    EXPECT_NEAR(p + splitting_probability(kPi - t, d), 1.0, 1e-14);
  }
}

TEST(Splitting, FlattensAsBandShrinks) {
  // |P - 1/2| = ln cot(theta0/2) / (2 ln cot(dtheta/2)) decays only
  // logarithmically: 0.0304 at theta0 = pi/4, dtheta = 1e-6.
  for (double t : {kPi / 4, kPi / 2, 3 * kPi / 4}) {
    double prev = 1;
    for (double d : {1e-1, 1e-2, 1e-4, 1e-6, 1e-10, 1e-20}) {
      const double dev = std::abs(splitting_probability(t, d) - 0.5);
      EXPECT_LE(dev, prev);
      prev = dev;
    }
    EXPECT_LT(prev, 0.01);
  }
  EXPECT_NEAR(splitting_probability(kPi / 4, 1e-6), 0.5 + 0.5 * std::log(1 + std::sqrt(2.0)) / std::log(1 / std::tan(5e-7)),
              1e-14);
}

TEST(Born, Weights) {
  EXPECT_EQ(born_weight(0), 1.0);
  EXPECT_NEAR(born_weight(kPi), 0.0, 1e-32);
  EXPECT_NEAR(born_weight(kPi / 2), 0.5, 4e-16);
  EXPECT_NEAR(born_weight(2 * std::acos(std::sqrt(0.75))), 0.75, 1e-15);
  EXPECT_THROW(born_weight(-0.1), DomainError);
}

TEST(WalkOracle, EquatorIsFair) {
  const auto e = random_walk_oracle(kPi / 2, 0.2, 0.2, 20000, 3);
  EXPECT_LT(std::abs(e.probability - 0.5), 3 * std::sqrt(0.25 / 20000));
}

TEST(WalkOracle, StartOnEdgeIsAbsorbed) {
  EXPECT_EQ(random_walk_oracle(0.2, 0.2, 0.1, 10, 1).probability, 1.0);
  EXPECT_EQ(random_walk_oracle(kPi - 0.2, 0.2, 0.1, 10, 1).probability, 0.0);
}

TEST(WalkOracle, ErrorShrinksWithStep) {
  const double exact = split_oracle(kPi / 3, 0.2);
  const double coarse = std::abs(random_walk_oracle(kPi / 3, 0.2, 0.8, 40000, 7).probability - exact);
  const double fine = std::abs(random_walk_oracle(kPi / 3, 0.2, 0.1, 40000, 7).probability - exact);
  EXPECT_LT(fine, coarse);
  EXPECT_LT(fine, 0.015);
}

TEST(WalkOracle, ThreadCountDoesNotMatter) {
  const auto a = random_walk_oracle(1.0, 0.2, 0.3, 3000, 5, 1);
  const auto b = random_walk_oracle(1.0, 0.2, 0.3, 3000, 5, 4);
  EXPECT_EQ(a.probability, b.probability);
}

TEST(WalkOracle, RejectsBadArguments) {
  EXPECT_THROW(random_walk_oracle(1.0, 0.2, 0.0, 10, 1), ConfigError);
  EXPECT_THROW(random_walk_oracle(1.0, 0.2, 5.0, 10, 1), ConfigError);
  EXPECT_THROW(random_walk_oracle(1.0, 0.2, 0.1, 0, 1), ConfigError);
  EXPECT_THROW(random_walk_oracle(0.1, 0.2, 0.1, 10, 1), DomainError);
}

TEST(Compare, PerfectFixtureHasZeroZ) {
  const std::vector<double> thetas = {2 * std::acos(std::sqrt(0.25)), kPi / 2, 2 * std::acos(std::sqrt(0.75))};
  std::vector<OutcomeCounts> counts(3);
  counts[0].pointer0 = 250; counts[0].pointer1 = 750;
  counts[1].pointer0 = 500; counts[1].pointer1 = 500;
  counts[2].pointer0 = 750; counts[2].pointer1 = 250;
  const Comparison c = compare(thetas, counts, Target::born());
  for (const auto& p : c.points) EXPECT_NEAR(p.z, 0.0, 1e-9);
  EXPECT_NEAR(c.max_abs_z, 0.0, 1e-9);
  EXPECT_EQ(c.degrees_of_freedom, 3u);
}

TEST(Compare, ZScoreUsesNullVariance) {
  std::vector<OutcomeCounts> counts(1);
  counts[0].pointer0 = 600;
  counts[0].pointer1 = 400;
  counts[0].unresolved = 123;
  const Comparison c = compare({kPi / 2}, counts, Target::born());
  EXPECT_DOUBLE_EQ(c.points[0].frequency, 0.6);
  EXPECT_NEAR(c.points[0].z, 0.1 / std::sqrt(0.25 / 1000), 1e-12);
  EXPECT_NEAR(c.points[0].standard_error, std::sqrt(0.24 / 1000), 1e-15);
  EXPECT_NEAR(c.chi_square, c.points[0].z * c.points[0].z, 1e-12);
}

TEST(Compare, InsufficientData) {
  std::vector<OutcomeCounts> counts(2);
  counts[0].unresolved = 10;
  counts[1].pointer0 = 3;
  counts[1].pointer1 = 3;
  const Comparison c = compare({1.0, kPi / 2}, counts, Target::born());
  EXPECT_TRUE(c.points[0].insufficient);
  EXPECT_TRUE(std::isnan(c.points[0].frequency));
  EXPECT_FALSE(c.points[1].insufficient);
  EXPECT_EQ(c.degrees_of_freedom, 1u);
  EXPECT_EQ(c.max_index, 1u);
  std::vector<OutcomeCounts> none(1);
  none[0].unresolved = 5;
  EXPECT_THROW(compare({1.0}, none, Target::born()), InsufficientData);
}

TEST(Compare, SplittingTarget) {
  std::vector<OutcomeCounts> counts(1);
  counts[0].pointer0 = 62;
  counts[0].pointer1 = 38;
  const Comparison c = compare({kPi / 3}, counts, Target::splitting(0.2));
  EXPECT_EQ(c.target_name, "splitting");
  EXPECT_NEAR(c.points[0].target, split_oracle(kPi / 3, 0.2), 1e-14);
}

TEST(Compare, InvariantUnderRunOrder) {
  // Counts come from outcome lists; shuffling the lists leaves the comparison unchanged.
  std::mt19937_64 rng(4);
  std::vector<Outcome> outcomes;
  for (int k = 0; k < 500; ++k) outcomes.push_back(static_cast<Outcome>(rng() % 3));
  auto tally = [](const std::vector<Outcome>& v) {
    OutcomeCounts c;
    for (auto o : v) c.add(o);
    return c;
  };
  const auto a = compare({1.1}, {tally(outcomes)}, Target::born());
  std::shuffle(outcomes.begin(), outcomes.end(), rng);
  const auto b = compare({1.1}, {tally(outcomes)}, Target::born());
  EXPECT_EQ(a.points[0].frequency, b.points[0].frequency);
  EXPECT_EQ(a.points[0].z, b.points[0].z);
  EXPECT_GE(a.points[0].frequency, 0);
  EXPECT_LE(a.points[0].frequency, 1);
}

TEST(Compare, EnsembleOverload) {
  EnsembleConfig cfg;
  cfg.initial_states = {BlochStated::canonical(1.0, 0), BlochStated::canonical(2.0, 0)};
  cfg.noise = NoiseLaw::flat(NoiseTarget::alpha_minus_delta_i, -8, 8);
  cfg.stop = StopRule::fuzzy(0.2, 10000);
  cfg.runs = 50;
  cfg.master_seed = 1;
  const EnsembleResult r = ensemble(cfg);
  const Comparison c = compare(r, Target::splitting(0.2));
  ASSERT_EQ(c.points.size(), 2u);
  EXPECT_EQ(c.points[0].theta0, 1.0);
  EXPECT_EQ(c.points[1].counts, r.counts[1]);
}

}  // namespace
}  // namespace blochflow
