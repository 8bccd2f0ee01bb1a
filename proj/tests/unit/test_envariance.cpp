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

#include <cmath>
#include <complex>
#include <random>

#include <gtest/gtest.h>

#include "blochflow/envariance.hpp"
#include "blochflow/errors.hpp"

namespace blochflow::envariance {
namespace {

using C = std::complex<double>;

// Explicit dense matrices, independent of the library's index arithmetic.
Eigen::MatrixXcd explicit_pure_rho(std::size_t n, std::size_t m) {
  // System measured alone: keep coherences inside each branch block.
  const std::size_t N = n + m;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2 * N, 2 * N);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) rho(i, k) = 1.0 / double(N);
  for (std::size_t j = n; j < N; ++j)
    for (std::size_t k = n; k < N; ++k) rho(N + j, N + k) = 1.0 / double(N);
  return rho;
}

Eigen::MatrixXcd explicit_branch_rho(std::size_t n, std::size_t m) {
  const std::size_t N = n + m;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2 * N, 2 * N);
  for (std::size_t i = 0; i < n; ++i) rho(i, i) = 1.0 / double(N);
  for (std::size_t j = n; j < N; ++j) rho(N + j, N + j) = 1.0 / double(N);
  return rho;
}

TEST(Layout, IndexRoundTrip) {
  const Layout l({2, 3, 4});
  EXPECT_EQ(l.dimension(), 24u);
  EXPECT_EQ(l.index({1, 2, 3}), 23u);
  EXPECT_EQ(l.index({0, 1, 0}), 4u);
  for (std::size_t k = 0; k < 24; ++k) EXPECT_EQ(l.index(l.labels(k)), k);
  EXPECT_EQ(l.restrict({2, 0}).dims(), (std::vector<std::size_t>{4, 2}));
}

TEST(TensorStateTest, RejectsBadInput) {
  EXPECT_THROW(TensorState({2, 2}, Eigen::VectorXcd::Ones(3)), DomainError);
  EXPECT_THROW(TensorState({2}, Eigen::VectorXcd::Zero(2)), DomainError);
  EXPECT_THROW(TensorState({2, 1 << 14}, Eigen::VectorXcd::Ones(1 << 15)), DomainError);
}

TEST(EqualWeight, Examples) {
  const TensorState s = equal_weight_state(1, 1);
  EXPECT_EQ(s.dims(), (std::vector<std::size_t>{2, 2}));
  const double r = 1 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(s.amplitude({0, 0}) - r), 0, 2.3e-16);
  EXPECT_NEAR(std::abs(s.amplitude({1, 1}) - r), 0, 2.3e-16);
  EXPECT_EQ(s.amplitude({0, 1}), C(0));
  EXPECT_EQ(s.amplitude({1, 0}), C(0));

  const TensorState t = equal_weight_state(3, 1);
  double w0 = 0, w1 = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    w0 += std::norm(t.amplitude({0, k}));
    w1 += std::norm(t.amplitude({1, k}));
  }
  EXPECT_NEAR(w0, 0.75, 1e-15);
  EXPECT_NEAR(w1, 0.25, 1e-15);

  EXPECT_THROW(equal_weight_state(0, 1), DomainError);
  EXPECT_THROW(equal_weight_state(2, 0), DomainError);
}

TEST(EqualWeight, UnitNormAndMarginals) {
  for (std::size_t n = 1; n <= 8; ++n)
    for (std::size_t m = 1; m <= 8; ++m) {
      const TensorState s = equal_weight_state(n, m);
      EXPECT_NEAR(s.norm(), 1, 1e-15);
      const Eigen::MatrixXcd sys = pure_density(s, {1}).matrix();
      const double N = double(n + m);
      EXPECT_NEAR(sys(0, 0).real(), double(n) / N, 1e-15);
      EXPECT_NEAR(sys(1, 1).real(), double(m) / N, 1e-15);
      EXPECT_EQ(std::abs(sys(0, 1)), 0);
    }
}

TEST(ExtendSecondEnv, GhzForOneOne) {
  const TensorState g = extend_with_second_env(equal_weight_state(1, 1));
  EXPECT_EQ(g.dims(), (std::vector<std::size_t>{2, 2, 2}));
  const double r = 1 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(g.amplitude({0, 0, 0}) - r), 0, 2.3e-16);
  EXPECT_NEAR(std::abs(g.amplitude({1, 1, 1}) - r), 0, 2.3e-16);
  EXPECT_NEAR(g.norm(), 1, 1e-15);
}

TEST(ExtendSecondEnv, TracingEnv2GivesBranchDiagonal) {
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{2, 1}, {3, 4}, {1, 5}}) {
    const TensorState e = extend_with_second_env(equal_weight_state(n, m));
    const Eigen::MatrixXcd rho = pure_density(e, {2}).matrix();
    EXPECT_LT((rho - explicit_branch_rho(n, m)).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(ExtendSecondEnv, RejectsMalformedInput) {
  EXPECT_THROW(extend_with_second_env(TensorState({2}, Eigen::VectorXcd::Ones(2))), DomainError);
  EXPECT_THROW(extend_with_second_env(extend_with_second_env(equal_weight_state(1, 1))), DomainError);
}

TEST(Swap, InvolutionAndNorm) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(2 * 5);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = C(g(rng), g(rng));
  const TensorState s({2, 5}, v);
  for (const SwapOp& op : {SwapOp::local(0, 0, 1), SwapOp::local(1, 1, 4),
                           SwapOp::joint({0, 1}, {0, 2}, {1, 3})}) {
    const TensorState once = apply_swap(s, op);
    EXPECT_NEAR(once.norm(), s.norm(), 1e-15 * s.norm());
    const TensorState twice = apply_swap(once, op);
    EXPECT_LE((twice.amplitudes() - s.amplitudes()).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Swap, RejectsOutOfRange) {
  const TensorState s = equal_weight_state(1, 1);
  EXPECT_THROW(apply_swap(s, SwapOp::local(1, 0, 2)), DomainError);
  EXPECT_THROW(apply_swap(s, SwapOp::local(2, 0, 1)), DomainError);
  EXPECT_THROW(SwapOp::local(0, 1, 1), DomainError);
  SwapOp op = SwapOp::local(1, 0, 1);
  EXPECT_THROW(op.add({1}, {0}), DomainError);
}

TEST(Envariance, OneOneSystemSwapUndoneByEnv) {
  const TensorState s = equal_weight_state(1, 1);
  const auto alone = check_envariance(s, SwapOp::local(0, 0, 1));
  EXPECT_FALSE(alone.envariant);
  EXPECT_NEAR(alone.overlap, 0, 1e-15);
  const auto pair = check_envariance(s, SwapOp::local(0, 0, 1), SwapOp::local(1, 0, 1));
  EXPECT_TRUE(pair.envariant);
  EXPECT_NEAR(pair.overlap, 1, 1e-15);
}

TEST(Envariance, GlobalPhaseTolerated) {
  const TensorState s = equal_weight_state(2, 2);
  const TensorState phased(s.dims(), s.amplitudes() * std::polar(1.0, 0.7));
  EXPECT_TRUE(check_envariance(phased, SwapOp{}).envariant);
}

TEST(Envariance, EqualWeightSystemSwapUndoneByEnvPermutation) {
  for (std::size_t n = 1; n <= 8; ++n) {
    const TensorState s = equal_weight_state(n, n);
    SwapOp env = SwapOp::local(1, 0, n);
    for (std::size_t i = 1; i < n; ++i) env.add({i}, {n + i});
    EXPECT_TRUE(check_envariance(s, SwapOp::local(0, 0, 1), env).envariant) << n;
  }
}

TEST(Envariance, UnequalWeightSystemSwapFails) {
  const TensorState s = equal_weight_state(2, 1);
  const auto alone = check_envariance(s, SwapOp::local(0, 0, 1));
  EXPECT_FALSE(alone.envariant);
  EXPECT_LT(alone.overlap, 1);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = a + 1; b < 3; ++b)
      EXPECT_FALSE(check_envariance(s, SwapOp::local(0, 0, 1), SwapOp::local(1, a, b)).envariant);
}

TEST(Envariance, BranchSwapOnExtendedState) {
  // Exchanging two branches |s_i>|i> and |s_j>|j> is undone by swapping
  // their env2 partners, for equal and unequal weights alike.
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{2, 1}, {1, 1}, {3, 5}}) {
    const TensorState e = extend_with_second_env(equal_weight_state(n, m));
    const std::size_t N = n + m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i + 1; j < N; ++j) {
        const SwapOp combined = SwapOp::joint({0, 1}, {i < n ? 0u : 1u, i}, {j < n ? 0u : 1u, j});
        const auto alone = check_envariance(e, combined);
        EXPECT_FALSE(alone.envariant);
        EXPECT_TRUE(check_envariance(e, combined, SwapOp::local(2, i, j)).envariant) << n << m << i << j;
      }
  }
}

TEST(DensityMatrixTest, Validation) {
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
  EXPECT_THROW(DensityMatrix({2}, bad), DomainError);
  bad = Eigen::MatrixXcd::Identity(2, 2) / 2.0;
  bad(0, 1) = C(0.1, 0);
  EXPECT_THROW(DensityMatrix({2}, bad), DomainError);
  Eigen::MatrixXcd neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  EXPECT_THROW(DensityMatrix({2}, neg), DomainError);
  EXPECT_NO_THROW(DensityMatrix({2}, Eigen::MatrixXcd::Identity(2, 2) / 2.0));
}

TEST(PureDensity, TraceEverything) {
  const DensityMatrix r = pure_density(equal_weight_state(2, 3), {0, 1});
  ASSERT_EQ(r.matrix().rows(), 1);
  EXPECT_NEAR(std::abs(r.matrix()(0, 0) - C(1)), 0, 1e-15);
}

TEST(PureDensity, TwoOneCrossTerms) {
  const DensityMatrix r = pure_density(equal_weight_state(2, 1), {}, {0});
  ASSERT_EQ(r.matrix().rows(), 6);
  EXPECT_LT((r.matrix() - explicit_pure_rho(2, 1)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(std::abs(r.matrix()(0, 1)), 1.0 / 3, 1e-15);
}

TEST(PureDensity, RandomStatesAreValid) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXcd v(2 * 3 * 4);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = C(g(rng), g(rng));
    const TensorState s({2, 3, 4}, v);
    for (const std::vector<std::size_t>& out : {std::vector<std::size_t>{}, {1}, {2}, {0, 2}}) {
      const Eigen::MatrixXcd r = pure_density(s, out).matrix();
      EXPECT_LT((r - r.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
      EXPECT_NEAR(r.trace().real(), 1, 1e-13);
    }
  }
}

TEST(BranchDensity, Examples) {
  const Eigen::MatrixXcd b11 = branch_density(equal_weight_state(1, 1)).matrix();
  EXPECT_LT((b11 - explicit_branch_rho(1, 1)).cwiseAbs().maxCoeff(), 1e-15);
  const Eigen::MatrixXcd b21 = branch_density(equal_weight_state(2, 1)).matrix();
  EXPECT_LT((b21 - explicit_branch_rho(2, 1)).cwiseAbs().maxCoeff(), 1e-15);
  // Same matrix from the extended state.
  const Eigen::MatrixXcd e21 = branch_density(extend_with_second_env(equal_weight_state(2, 1))).matrix();
  EXPECT_LT((e21 - b21).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(BranchDensity, RejectsNonBranchInput) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(4);
  EXPECT_THROW(branch_density(TensorState({2, 2}, v)), DomainError);
}

TEST(BranchDensity, DistanceFromPureDensity) {
  const double d = frobenius_distance(pure_density(equal_weight_state(2, 1), {}, {0}),
                                      branch_density(equal_weight_state(2, 1)));
  EXPECT_NEAR(d, std::sqrt(2.0) / 3, 1e-15);
  for (std::size_t n = 1; n <= 8; ++n)
    for (std::size_t m = 1; m <= 8; ++m) {
      const TensorState s = equal_weight_state(n, m);
      const double dist = frobenius_distance(pure_density(s, {}, {0}), branch_density(s));
      const double oracle = (explicit_pure_rho(n, m) - explicit_branch_rho(n, m)).norm();
      EXPECT_NEAR(dist, oracle, 1e-14);
      EXPECT_NEAR(branch_coherence_norm(n, m), oracle, 1e-14);
    }
}

TEST(BranchDensity, EnvAverageAgrees) {
  for (std::size_t n = 1; n <= 8; ++n)
    for (std::size_t m = 1; m <= 8; ++m) {
      const TensorState s = equal_weight_state(n, m);
      const Eigen::MatrixXcd a = partial_trace(pure_density(s, {}, {0}), {1}).matrix();
      const Eigen::MatrixXcd b = partial_trace(branch_density(s), {1}).matrix();
      EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-12);
      const double N = double(n + m);
      EXPECT_NEAR(a(0, 0).real(), double(n) / N, 1e-15);
      EXPECT_NEAR(a(1, 1).real(), double(m) / N, 1e-15);
    }
}

}  // namespace
}  // namespace blochflow::envariance
