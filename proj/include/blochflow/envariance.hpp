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

#ifndef BLOCHFLOW_ENVARIANCE_HPP
#define BLOCHFLOW_ENVARIANCE_HPP

#include <cstddef>
#include <map>
#include <vector>

#include <Eigen/Dense>

/// Dense multi-party states, swap operators and the two post-measurement
/// density matrices of the envariance argument. Labels are zero-based;
/// subsystem 0 is the two-state system, 1 the first environment and 2 the
/// optional second environment.
namespace blochflow::envariance {

/// Largest total dimension accepted by any constructor.
inline constexpr std::size_t kMaxDimension = std::size_t{1} << 14;

/// Tolerance used by check_envariance and DensityMatrix::validate.
inline constexpr double kEnvarianceTolerance = 1e-12;

using Labels = std::vector<std::size_t>;

/// Row-major mixed-radix indexing: subsystem 0 is the most significant digit.
class Layout {
 public:
  explicit Layout(std::vector<std::size_t> dims);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t subsystems() const { return dims_.size(); }
  std::size_t dimension() const { return dimension_; }

  std::size_t index(const Labels& labels) const;
  Labels labels(std::size_t index) const;

  /// Layout of the listed subsystems, in the given order.
  Layout restrict(const std::vector<std::size_t>& subsystems) const;

 private:
  std::vector<std::size_t> dims_;
  std::size_t dimension_{1};
};

class TensorState {
 public:
  /// Throws DomainError on a length mismatch, a zero or non-finite vector,
  /// or a dimension above kMaxDimension.
  TensorState(std::vector<std::size_t> dims, Eigen::VectorXcd amplitudes);

  const Layout& layout() const { return layout_; }
  const std::vector<std::size_t>& dims() const { return layout_.dims(); }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  std::complex<double> amplitude(const Labels& labels) const { return amplitudes_(static_cast<Eigen::Index>(layout_.index(labels))); }
  double norm() const { return amplitudes_.norm(); }

 private:
  Layout layout_;
  Eigen::VectorXcd amplitudes_;
};

/// Permutation of joint basis states on a set of subsystems, identity on
/// every joint state it does not name. Each exchange swaps two distinct
/// label tuples; no tuple may appear in two exchanges, so the operator is a
/// product of disjoint transpositions: unitary and self-inverse.
class SwapOp {
 public:
  SwapOp() = default;

  /// |a><b| + |b><a| on one subsystem.
  static SwapOp local(std::size_t subsystem, std::size_t a, std::size_t b);
  /// |from><to| + |to><from| on the joint space of `subsystems`.
  static SwapOp joint(std::vector<std::size_t> subsystems, Labels from, Labels to);

  /// Adds one more exchange on the same subsystems.
  SwapOp& add(Labels from, Labels to);

  const std::vector<std::size_t>& subsystems() const { return subsystems_; }
  std::size_t exchanges() const { return map_.size() / 2; }
  bool is_identity() const { return map_.empty(); }

  /// Both directions of every exchange.
  const std::map<Labels, Labels>& mapping() const { return map_; }

  /// Image of a label tuple on this operator's subsystems.
  Labels image(const Labels& local) const;

 private:
  std::vector<std::size_t> subsystems_;
  std::map<Labels, Labels> map_;
};

/// sqrt(1/N) [sum_{i<n} |0>|i> + sum_{n<=j<N} |1>|j>], N = n + m.
TensorState equal_weight_state(std::size_t n, std::size_t m);

/// Gives every branch |s>|k> a second-environment partner |e_k>.
TensorState extend_with_second_env(const TensorState& s);

/// Throws DomainError when the operator names a subsystem or label the
/// state does not have.
TensorState apply_swap(const TensorState& s, const SwapOp& op);

struct EnvarianceCheck {
  bool envariant{false};
  /// |<s|s'>| / (|s| |s'|) with s' the state after both operators.
  double overlap{0};
  /// || s' - e^{i arg<s|s'>} s || / |s|.
  double residual{0};
};

/// Applies `first` then `second`; envariant iff s is recovered up to a
/// global phase within kEnvarianceTolerance.
EnvarianceCheck check_envariance(const TensorState& s, const SwapOp& first, const SwapOp& second = {});

class DensityMatrix {
 public:
  /// Throws DomainError unless the matrix is Hermitian and has unit trace
  /// within kEnvarianceTolerance, and no eigenvalue below -1e-10.
  DensityMatrix(std::vector<std::size_t> dims, Eigen::MatrixXcd rho);

  const Layout& layout() const { return layout_; }
  const std::vector<std::size_t>& dims() const { return layout_.dims(); }
  const Eigen::MatrixXcd& matrix() const { return rho_; }

 private:
  Layout layout_;
  Eigen::MatrixXcd rho_;
};

/// |s><s| / <s|s>, traced over `traced_out`, with coherences between
/// different labels of the `registered` subsystems removed (the record left
/// by a measurement of those subsystems alone). Both sets hold subsystem
/// indices of s; registered ones must not be traced out.
DensityMatrix pure_density(const TensorState& s, const std::vector<std::size_t>& traced_out,
                           const std::vector<std::size_t>& registered = {});

/// Branch-diagonal matrix on system and first environment,
/// sum_k |a_k|^2 |s_k>|k><k|<s_k|. Throws DomainError unless every
/// first-environment label carries at most one system label and, with a
/// second environment, e_k matches k.
DensityMatrix branch_density(const TensorState& s);

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& traced_out);

double frobenius_distance(const DensityMatrix& a, const DensityMatrix& b);

/// sqrt(n(n-1) + m(m-1)) / N: the coherences a system-only measurement
/// leaves inside each branch block.
double branch_coherence_norm(std::size_t n, std::size_t m);

}  // namespace blochflow::envariance

#endif  // BLOCHFLOW_ENVARIANCE_HPP
