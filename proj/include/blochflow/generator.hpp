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

#ifndef BLOCHFLOW_GENERATOR_HPP
#define BLOCHFLOW_GENERATOR_HPP

#include <array>
#include <cmath>
#include <complex>
#include <string_view>

#include "blochflow/bloch_state.hpp"

namespace blochflow {

enum class GeneratorParameter {
  alpha_r, alpha_i, beta_r, beta_i, gamma_r, gamma_i, delta_r, delta_i
};

inline constexpr std::array<std::string_view, 8> kGeneratorParameterNames = {
    "alpha_r", "alpha_i", "beta_r", "beta_i", "gamma_r", "gamma_i", "delta_r", "delta_i"};

/// General linear generator of the flow psi' = -i G psi,
///
///   G = [ alpha_r + i alpha_i   beta_r + i beta_i  ]
///       [ gamma_r + i gamma_i   delta_r + i delta_i ]
///
/// in the pointer basis {|0>, |1>}. All entries have units of inverse time.
template <typename Scalar = double>
struct Generator {
  Scalar alpha_r{0}, alpha_i{0};
  Scalar beta_r{0}, beta_i{0};
  Scalar gamma_r{0}, gamma_i{0};
  Scalar delta_r{0}, delta_i{0};

  using Complex = std::complex<Scalar>;
  using Matrix = Matrix2c<Scalar>;

  static Generator from_matrix(const Matrix& m) {
    Generator g;
    g.alpha_r = m(0, 0).real(); g.alpha_i = m(0, 0).imag();
    g.beta_r = m(0, 1).real();  g.beta_i = m(0, 1).imag();
    g.gamma_r = m(1, 0).real(); g.gamma_i = m(1, 0).imag();
    g.delta_r = m(1, 1).real(); g.delta_i = m(1, 1).imag();
    return g;
  }

  Matrix matrix() const {
    Matrix m;
    m << Complex(alpha_r, alpha_i), Complex(beta_r, beta_i),
         Complex(gamma_r, gamma_i), Complex(delta_r, delta_i);
    return m;
  }

  Matrix hermitian_part() const {
    const Matrix m = matrix();
    return (m + m.adjoint()) / Scalar(2);
  }

  Matrix antihermitian_part() const {
    const Matrix m = matrix();
    return (m - m.adjoint()) / Scalar(2);
  }

  bool is_hermitian(Scalar tol = 0) const {
    return std::abs(alpha_i) <= tol && std::abs(delta_i) <= tol &&
           has_diagonal_antihermitian_part(tol);
  }

  /// Pointer-basis condition: |0> and |1> are eigenstates of the
  /// anti-Hermitian part.
  bool has_diagonal_antihermitian_part(Scalar tol = 0) const {
    return std::abs(beta_r - gamma_r) <= tol && std::abs(beta_i + gamma_i) <= tol;
  }

  Scalar& operator[](GeneratorParameter p) {
    switch (p) {
      case GeneratorParameter::alpha_r: return alpha_r;
      case GeneratorParameter::alpha_i: return alpha_i;
      case GeneratorParameter::beta_r: return beta_r;
      case GeneratorParameter::beta_i: return beta_i;
      case GeneratorParameter::gamma_r: return gamma_r;
      case GeneratorParameter::gamma_i: return gamma_i;
      case GeneratorParameter::delta_r: return delta_r;
      case GeneratorParameter::delta_i: return delta_i;
    }
    return alpha_r;
  }

  Scalar operator[](GeneratorParameter p) const {
    return const_cast<Generator&>(*this)[p];
  }

  friend bool operator==(const Generator&, const Generator&) = default;
};

using Generatord = Generator<double>;

/// Hermitian generator proportional to the Pauli matrix sigma_y; its flow is
/// a family of Rabi circles.
template <typename Scalar = double>
Generator<Scalar> sigma_y_generator(Scalar omega = 1) {
  Generator<Scalar> g;
  g.beta_i = -omega;
  g.gamma_i = omega;
  return g;
}

/// Diagonal non-Hermitian generator with alpha_i - delta_i = rate; |0> is
/// attractive for rate > 0.
template <typename Scalar = double>
Generator<Scalar> diagonal_collapse_generator(Scalar rate) {
  Generator<Scalar> g;
  g.alpha_i = rate / 2;
  g.delta_i = -rate / 2;
  return g;
}

}  // namespace blochflow

#endif  // BLOCHFLOW_GENERATOR_HPP
