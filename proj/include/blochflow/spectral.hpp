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

#ifndef BLOCHFLOW_SPECTRAL_HPP
#define BLOCHFLOW_SPECTRAL_HPP

#include <cmath>
#include <complex>
#include <limits>

#include "blochflow/bloch_state.hpp"
#include "blochflow/generator.hpp"

namespace blochflow {

/// Eigenvector matrices with a larger condition number are treated as
/// defective (coalesced eigenvalues and eigenvectors).
inline constexpr double kDefectiveConditionThreshold = 1e8;

template <typename Scalar = double>
struct EigenDecomposition {
  Eigen::Matrix<std::complex<Scalar>, 2, 1> eigenvalues;
  /// Unit-norm eigenvectors as columns. For a defective generator both
  /// columns span (numerically) the same line.
  Matrix2c<Scalar> eigenvectors;
  /// 2-norm condition number of `eigenvectors`; infinite when singular.
  Scalar condition{1};
  bool defective{false};

  std::complex<Scalar> lambda(int k) const { return eigenvalues(k); }
  Amplitudes<Scalar> psi(int k) const { return eigenvectors.col(k); }
};

namespace detail {

template <typename Scalar>
Amplitudes<Scalar> pick_eigenvector(const Amplitudes<Scalar>& u, const Amplitudes<Scalar>& w,
                                    int fallback_axis) {
  const Scalar nu = u.norm();
  const Scalar nw = w.norm();
  if (nu == 0 && nw == 0) {
    // G is a multiple of the identity; any basis diagonalizes it.
    Amplitudes<Scalar> e = Amplitudes<Scalar>::Zero();
    e(fallback_axis) = 1;
    return e;
  }
  return nu >= nw ? Amplitudes<Scalar>(u / nu) : Amplitudes<Scalar>(w / nw);
}

}  // namespace detail

/// Closed-form eigendecomposition of a 2x2 complex matrix.
///
/// With m = (a + d)/2, h = (a - d)/2 and s = sqrt(h^2 + bc), the eigenvalues
/// are m + s and m - s. Each eigenvector is read off whichever row of
/// (G - lambda) has the larger norm; the products (s + h)(s - h) = bc are used
/// to avoid cancellation in the smaller of the two differences.
template <typename Scalar>
EigenDecomposition<Scalar> eigen_decompose(const Matrix2c<Scalar>& g) {
  using C = std::complex<Scalar>;
  const C a = g(0, 0), b = g(0, 1), c = g(1, 0), d = g(1, 1);
  const C m = (a + d) / Scalar(2);
  const C h = (a - d) / Scalar(2);
  const C s = std::sqrt(h * h + b * c);

  C p = s + h;
  C q = s - h;
  if (std::abs(p) >= std::abs(q)) {
    if (p != C(0)) q = b * c / p;
  } else {
    p = b * c / q;
  }

  EigenDecomposition<Scalar> out;
  out.eigenvalues << m + s, m - s;
  out.eigenvectors.col(0) = detail::pick_eigenvector<Scalar>(Amplitudes<Scalar>(b, q),
                                                             Amplitudes<Scalar>(p, c), 0);
  out.eigenvectors.col(1) = detail::pick_eigenvector<Scalar>(Amplitudes<Scalar>(b, -p),
                                                             Amplitudes<Scalar>(-q, c), 1);

  // For unit columns the singular values are sqrt(1 +- |<v1|v2>|), and their
  // product is |det V|.
  const Scalar overlap = std::abs(out.eigenvectors.col(0).dot(out.eigenvectors.col(1)));
  const Scalar det = std::abs(out.eigenvectors.determinant());
  out.condition = det > 0 ? (1 + overlap) / det : std::numeric_limits<Scalar>::infinity();
  out.defective = !(out.condition <= Scalar(kDefectiveConditionThreshold));
  return out;
}

template <typename Scalar>
EigenDecomposition<Scalar> eigen_decompose(const Generator<Scalar>& g) {
  return eigen_decompose<Scalar>(g.matrix());
}

/// Expansion coefficients of psi in the (generally non-orthogonal)
/// eigenbasis, psi = C1 psi1 + C2 psi2. Uses the dual (left-eigenvector)
/// basis, i.e. C = V^{-1} psi.
template <typename Scalar>
Amplitudes<Scalar> expansion_coefficients(const EigenDecomposition<Scalar>& dec,
                                          const Amplitudes<Scalar>& psi) {
  if (dec.defective)
    throw DomainError("expansion_coefficients: eigenbasis is defective");
  return dec.eigenvectors.inverse() * psi;
}

/// exp(m) by Taylor series with scaling and squaring.
template <typename Scalar>
Matrix2c<Scalar> series_exponential(const Matrix2c<Scalar>& m) {
  using Mat = Matrix2c<Scalar>;
  const Scalar norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > Scalar(0.5)) squarings = static_cast<int>(std::ceil(std::log2(norm1 / Scalar(0.5))));
  const Mat a = m / std::ldexp(Scalar(1), squarings);

  Mat result = Mat::Identity();
  Mat term = Mat::Identity();
  for (int k = 1; k <= 40; ++k) {
    term = (term * a) / Scalar(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() <= std::numeric_limits<Scalar>::epsilon() * result.cwiseAbs().maxCoeff())
      break;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

/// Propagator exp(-i G t).
template <typename Scalar>
Matrix2c<Scalar> propagator(const Generator<Scalar>& g, Scalar t) {
  using C = std::complex<Scalar>;
  const Matrix2c<Scalar> gm = g.matrix();
  const auto dec = eigen_decompose<Scalar>(gm);
  if (dec.defective) return series_exponential<Scalar>(C(0, -t) * gm);
  const Matrix2c<Scalar>& v = dec.eigenvectors;
  Eigen::Matrix<C, 2, 1> phases;
  phases << std::exp(C(0, -t) * dec.eigenvalues(0)), std::exp(C(0, -t) * dec.eigenvalues(1));
  return v * phases.asDiagonal() * v.inverse();
}

/// psi(t) = exp(-i lambda1 t) C1 psi1 + exp(-i lambda2 t) C2 psi2 for a
/// time-independent generator; defective generators fall back to the series
/// exponential.
template <typename Scalar>
Amplitudes<Scalar> exact_evolve(const Generator<Scalar>& g, const Amplitudes<Scalar>& psi0, Scalar t) {
  using C = std::complex<Scalar>;
  const Matrix2c<Scalar> gm = g.matrix();
  const auto dec = eigen_decompose<Scalar>(gm);
  if (dec.defective) return series_exponential<Scalar>(C(0, -t) * gm) * psi0;
  const Amplitudes<Scalar> coeffs = expansion_coefficients(dec, psi0);
  return std::exp(C(0, -t) * dec.eigenvalues(0)) * coeffs(0) * dec.psi(0) +
         std::exp(C(0, -t) * dec.eigenvalues(1)) * coeffs(1) * dec.psi(1);
}

template <typename Scalar>
BlochState<Scalar> exact_evolve(const Generator<Scalar>& g, const BlochState<Scalar>& s0, Scalar t) {
  return bloch_from_amplitudes<Scalar>(exact_evolve<Scalar>(g, amplitudes_from_bloch(s0), t));
}

}  // namespace blochflow

#endif  // BLOCHFLOW_SPECTRAL_HPP
