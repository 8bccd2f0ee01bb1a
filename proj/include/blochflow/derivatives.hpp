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

#ifndef BLOCHFLOW_DERIVATIVES_HPP
#define BLOCHFLOW_DERIVATIVES_HPP

#include <cmath>
#include <numbers>
#include <optional>

#include "blochflow/bloch_state.hpp"
#include "blochflow/errors.hpp"
#include "blochflow/generator.hpp"

namespace blochflow {

/// States with theta this close to 0 or pi are treated as poles when
/// evaluating the 1/sin(theta) terms.
inline constexpr double kPoleTolerance = 1e-12;

/// Instantaneous rates of the Bloch coordinates under psi' = -i G psi.
template <typename Scalar = double>
struct BlochRates {
  Scalar theta_dot{0};
  Scalar log_n_dot{0};
  std::optional<Scalar> phi_rate;
  std::optional<Scalar> chi_rate;

  bool at_pole() const { return !phi_rate.has_value(); }

  Scalar phi_dot() const {
    if (!phi_rate) throw PoleSingularity("phi_dot is singular at the poles");
    return *phi_rate;
  }
  Scalar chi_dot() const {
    if (!chi_rate) throw PoleSingularity("chi_dot is singular at the poles");
    return *chi_rate;
  }
};

/// Right-hand sides of the Bloch-coordinate equations of motion.
///
/// theta_dot, phi_dot and log_n_dot are the first-order expansion of
/// exp(-i G dt) in the (theta, phi, chi, n) chart. chi_dot is the half-sum of
/// the phase rates of the two amplitudes,
///
///   chi_dot = -(a_r + d_r)/2 - [(b_r + g_r) cos phi + (b_i - g_i) sin phi] / (2 sin theta)
///                            + [(b_r - g_r) cos phi + (b_i + g_i) sin phi] / (2 tan theta).
///
/// Only theta and phi enter: the rates do not depend on the gauge (chi, n).
template <typename Scalar>
BlochRates<Scalar> derivatives(const BlochState<Scalar>& s, const Generator<Scalar>& g) {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar st = std::sin(s.theta);
  const Scalar ct = std::cos(s.theta);
  const Scalar sp = std::sin(s.phi);
  const Scalar cp = std::cos(s.phi);

  const Scalar b_plus_r = g.beta_r + g.gamma_r;
  const Scalar b_minus_r = g.beta_r - g.gamma_r;
  const Scalar b_plus_i = g.beta_i + g.gamma_i;
  const Scalar b_minus_i = g.beta_i - g.gamma_i;

  BlochRates<Scalar> r;
  r.theta_dot = (g.delta_i - g.alpha_i) * st + (b_plus_i * cp - b_minus_r * sp) * ct -
                (b_minus_i * cp - b_plus_r * sp);
  r.log_n_dot = Scalar(0.5) * (g.alpha_i + g.delta_i) -
                Scalar(0.5) * (b_minus_r * sp - b_plus_i * cp) * st +
                Scalar(0.5) * (g.alpha_i - g.delta_i) * ct;

  const Scalar tol = Scalar(kPoleTolerance);
  if (s.theta <= tol || pi - s.theta <= tol) return r;

  r.phi_rate = (g.delta_r - g.alpha_r) - (b_minus_r * cp + b_plus_i * sp) / st +
               (b_plus_r * cp + b_minus_i * sp) * ct / st;
  r.chi_rate = -(g.alpha_r + g.delta_r) / 2 - (b_plus_r * cp + b_minus_i * sp) / (2 * st) +
               (b_minus_r * cp + b_plus_i * sp) * ct / (2 * st);
  return r;
}

}  // namespace blochflow

#endif  // BLOCHFLOW_DERIVATIVES_HPP
