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

#include "blochflow/envariance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "blochflow/errors.hpp"

namespace blochflow::envariance {

namespace {

void check_subsystems(const std::vector<std::size_t>& subsystems, std::size_t count, const char* what) {
  for (std::size_t i = 0; i < subsystems.size(); ++i) {
    if (subsystems[i] >= count) throw DomainError(std::string(what) + ": subsystem index out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (subsystems[j] == subsystems[i]) throw DomainError(std::string(what) + ": repeated subsystem");
  }
}

std::vector<std::size_t> complement(const std::vector<std::size_t>& subsystems, std::size_t count) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < count; ++k)
    if (std::find(subsystems.begin(), subsystems.end(), k) == subsystems.end()) out.push_back(k);
  return out;
}

Labels pick(const Labels& labels, const std::vector<std::size_t>& subsystems) {
  Labels out;
  out.reserve(subsystems.size());
  for (std::size_t k : subsystems) out.push_back(labels[k]);
  return out;
}

}  // namespace

Layout::Layout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw DomainError("layout needs at least one subsystem");
  for (std::size_t d : dims_) {
    if (d == 0) throw DomainError("subsystem dimension must be positive");
    if (dimension_ > kMaxDimension / d) throw DomainError("total dimension exceeds the dense limit");
    dimension_ *= d;
  }
  if (dimension_ > kMaxDimension) throw DomainError("total dimension exceeds the dense limit");
}

std::size_t Layout::index(const Labels& labels) const {
  if (labels.size() != dims_.size()) throw DomainError("label tuple has the wrong length");
  std::size_t idx = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (labels[k] >= dims_[k]) throw DomainError("label out of range");
    idx = idx * dims_[k] + labels[k];
  }
  return idx;
}

Labels Layout::labels(std::size_t index) const {
  Labels out(dims_.size());
  for (std::size_t k = dims_.size(); k-- > 0;) {
    out[k] = index % dims_[k];
    index /= dims_[k];
  }
  return out;
}

Layout Layout::restrict(const std::vector<std::size_t>& subsystems) const {
  std::vector<std::size_t> d;
  for (std::size_t k : subsystems) d.push_back(dims_.at(k));
  if (d.empty()) d.push_back(1);
  return Layout(std::move(d));
}

TensorState::TensorState(std::vector<std::size_t> dims, Eigen::VectorXcd amplitudes)
    : layout_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != layout_.dimension())
    throw DomainError("amplitude vector length does not match the dimensions");
  const double n = amplitudes_.norm();
  if (!(n > 0) || !std::isfinite(n)) throw DomainError("tensor state must have finite nonzero norm");
}

SwapOp SwapOp::local(std::size_t subsystem, std::size_t a, std::size_t b) {
  return joint({subsystem}, {a}, {b});
}

SwapOp SwapOp::joint(std::vector<std::size_t> subsystems, Labels from, Labels to) {
  if (subsystems.empty()) throw DomainError("swap needs at least one subsystem");
  check_subsystems(subsystems, *std::max_element(subsystems.begin(), subsystems.end()) + 1, "swap");
  SwapOp op;
  op.subsystems_ = std::move(subsystems);
  op.add(std::move(from), std::move(to));
  return op;
}

SwapOp& SwapOp::add(Labels from, Labels to) {
  if (subsystems_.empty()) throw DomainError("swap: add() needs subsystems; use local() or joint()");
  if (from.size() != subsystems_.size() || to.size() != subsystems_.size())
    throw DomainError("swap: label tuple length does not match its subsystems");
  if (from == to) throw DomainError("swap: an exchange needs two distinct basis states");
  if (map_.count(from) || map_.count(to)) throw DomainError("swap: exchanges must be disjoint");
  map_.emplace(from, to);
  map_.emplace(std::move(to), std::move(from));
  return *this;
}

Labels SwapOp::image(const Labels& local) const {
  const auto it = map_.find(local);
  return it == map_.end() ? local : it->second;
}

TensorState equal_weight_state(std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw DomainError("equal_weight_state: n and m must be positive");
  const std::size_t N = n + m;
  const Layout layout({2, N});
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(layout.dimension()));
  const double w = std::sqrt(1.0 / static_cast<double>(N));
  for (std::size_t k = 0; k < N; ++k)
    a(static_cast<Eigen::Index>(layout.index({k < n ? 0u : 1u, k}))) = w;
  return TensorState(layout.dims(), std::move(a));
}

TensorState extend_with_second_env(const TensorState& s) {
  if (s.dims().size() != 2 || s.dims()[0] != 2)
    throw DomainError("extend_with_second_env: expects a system (dim 2) times one environment");
  const std::size_t N = s.dims()[1];
  const Layout out({2, N, N});
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(out.dimension()));
  for (std::size_t k = 0; k < N; ++k) {
    const auto c0 = s.amplitude({0, k});
    const auto c1 = s.amplitude({1, k});
    if (c0 != 0.0 && c1 != 0.0)
      throw DomainError("extend_with_second_env: environment label carries both system states");
    a(static_cast<Eigen::Index>(out.index({0, k, k}))) = c0;
    a(static_cast<Eigen::Index>(out.index({1, k, k}))) = c1;
  }
  return TensorState(out.dims(), std::move(a));
}

TensorState apply_swap(const TensorState& s, const SwapOp& op) {
  if (op.is_identity()) return s;
  const Layout& layout = s.layout();
  check_subsystems(op.subsystems(), layout.subsystems(), "apply_swap");
  const Eigen::VectorXcd& in = s.amplitudes();
  Eigen::VectorXcd out(in.size());
  for (const auto& [from, to] : op.mapping())
    for (std::size_t k = 0; k < from.size(); ++k)
      if (from[k] >= layout.dims()[op.subsystems()[k]]) throw DomainError("apply_swap: label out of range");
  for (std::size_t idx = 0; idx < layout.dimension(); ++idx) {
    Labels labels = layout.labels(idx);
    const Labels local = pick(labels, op.subsystems());
    const Labels target = op.image(local);
    for (std::size_t k = 0; k < target.size(); ++k) labels[op.subsystems()[k]] = target[k];
    out(static_cast<Eigen::Index>(layout.index(labels))) = in(static_cast<Eigen::Index>(idx));
  }
  return TensorState(layout.dims(), std::move(out));
}

EnvarianceCheck check_envariance(const TensorState& s, const SwapOp& first, const SwapOp& second) {
  const TensorState t = apply_swap(apply_swap(s, first), second);
  const std::complex<double> inner = s.amplitudes().dot(t.amplitudes());
  EnvarianceCheck check;
  check.overlap = std::abs(inner) / (s.norm() * t.norm());
  const std::complex<double> phase = std::abs(inner) > 0 ? inner / std::abs(inner) : 1.0;
  check.residual = (t.amplitudes() - phase * s.amplitudes()).norm() / s.norm();
  check.envariant = check.residual <= kEnvarianceTolerance;
  return check;
}

DensityMatrix::DensityMatrix(std::vector<std::size_t> dims, Eigen::MatrixXcd rho)
    : layout_(std::move(dims)), rho_(std::move(rho)) {
  const auto d = static_cast<Eigen::Index>(layout_.dimension());
  if (rho_.rows() != d || rho_.cols() != d) throw DomainError("density matrix shape does not match the dimensions");
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kEnvarianceTolerance)
    throw DomainError("density matrix is not Hermitian");
  if (std::abs(rho_.trace() - 1.0) > kEnvarianceTolerance) throw DomainError("density matrix trace is not 1");
  const Eigen::MatrixXcd h = (rho_ + rho_.adjoint()) / 2.0;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) throw DomainError("density matrix is not positive semidefinite");
}

DensityMatrix pure_density(const TensorState& s, const std::vector<std::size_t>& traced_out,
                           const std::vector<std::size_t>& registered) {
  const Layout& layout = s.layout();
  check_subsystems(traced_out, layout.subsystems(), "pure_density");
  check_subsystems(registered, layout.subsystems(), "pure_density");
  for (std::size_t k : registered)
    if (std::find(traced_out.begin(), traced_out.end(), k) != traced_out.end())
      throw DomainError("pure_density: a registered subsystem cannot be traced out");

  const auto kept = complement(traced_out, layout.subsystems());
  const Layout kl = layout.restrict(kept);
  const Layout tl = layout.restrict(traced_out);

  // psi reshaped as (kept x traced); rho = M M^dagger.
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(kl.dimension()),
                                              static_cast<Eigen::Index>(tl.dimension()));
  const double norm2 = s.amplitudes().squaredNorm();
  for (std::size_t idx = 0; idx < layout.dimension(); ++idx) {
    const Labels labels = layout.labels(idx);
    const std::size_t r = kept.empty() ? 0 : kl.index(pick(labels, kept));
    const std::size_t c = traced_out.empty() ? 0 : tl.index(pick(labels, traced_out));
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = s.amplitudes()(static_cast<Eigen::Index>(idx));
  }
  Eigen::MatrixXcd rho = m * m.adjoint() / norm2;

  if (!registered.empty()) {
    std::vector<std::size_t> positions;
    for (std::size_t k : registered)
      positions.push_back(static_cast<std::size_t>(std::find(kept.begin(), kept.end(), k) - kept.begin()));
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
      const Labels li = kl.labels(static_cast<std::size_t>(i));
      for (Eigen::Index j = 0; j < rho.cols(); ++j) {
        const Labels lj = kl.labels(static_cast<std::size_t>(j));
        for (std::size_t p : positions) {
          if (li[p] != lj[p]) {
            rho(i, j) = 0;
            break;
          }
        }
      }
    }
  }
  return DensityMatrix(kl.dims(), std::move(rho));
}

DensityMatrix branch_density(const TensorState& s) {
  const auto& dims = s.dims();
  if ((dims.size() != 2 && dims.size() != 3) || dims[0] != 2 || (dims.size() == 3 && dims[2] != dims[1]))
    throw DomainError("branch_density: expects system x env1 [x env2] with matching environment sizes");
  const std::size_t N = dims[1];
  const Layout out({2, N});
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(out.dimension()),
                                                static_cast<Eigen::Index>(out.dimension()));
  std::vector<int> owner(N, -1);
  const double norm2 = s.amplitudes().squaredNorm();
  for (std::size_t idx = 0; idx < s.layout().dimension(); ++idx) {
    const double w = std::norm(s.amplitudes()(static_cast<Eigen::Index>(idx)));
    if (w == 0) continue;
    const Labels l = s.layout().labels(idx);
    if (dims.size() == 3 && l[2] != l[1]) throw DomainError("branch_density: second environment label differs from the first");
    if (owner[l[1]] >= 0 && owner[l[1]] != static_cast<int>(l[0]))
      throw DomainError("branch_density: environment label carries both system states");
    owner[l[1]] = static_cast<int>(l[0]);
    const auto k = static_cast<Eigen::Index>(out.index({l[0], l[1]}));
    rho(k, k) += w / norm2;
  }
  return DensityMatrix(out.dims(), std::move(rho));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& traced_out) {
  const Layout& layout = rho.layout();
  check_subsystems(traced_out, layout.subsystems(), "partial_trace");
  const auto kept = complement(traced_out, layout.subsystems());
  const Layout kl = layout.restrict(kept);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(kl.dimension()),
                                                static_cast<Eigen::Index>(kl.dimension()));
  for (std::size_t i = 0; i < layout.dimension(); ++i) {
    const Labels li = layout.labels(i);
    for (std::size_t j = 0; j < layout.dimension(); ++j) {
      const Labels lj = layout.labels(j);
      if (pick(li, traced_out) != pick(lj, traced_out)) continue;
      const std::size_t r = kept.empty() ? 0 : kl.index(pick(li, kept));
      const std::size_t c = kept.empty() ? 0 : kl.index(pick(lj, kept));
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) +=
          rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return DensityMatrix(kl.dims(), std::move(out));
}

double frobenius_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dims() != b.dims()) throw DomainError("frobenius_distance: dimension mismatch");
  return (a.matrix() - b.matrix()).norm();
}

double branch_coherence_norm(std::size_t n, std::size_t m) {
  const auto nn = static_cast<double>(n);
  const auto mm = static_cast<double>(m);
  return std::sqrt(nn * (nn - 1) + mm * (mm - 1)) / (nn + mm);
}

}  // namespace blochflow::envariance
