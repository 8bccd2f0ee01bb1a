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

#ifndef BLOCHFLOW_BLOCH_STATE_HPP
#define BLOCHFLOW_BLOCH_STATE_HPP

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "blochflow/errors.hpp"

namespace blochflow {

/// Coefficients (a0, a1) of |0> and |1>. Not normalized.
template <typename Scalar>
using Amplitudes = Eigen::Matrix<std::complex<Scalar>, 2, 1>;

template <typename Scalar>
using Matrix2c = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

/// Reduces an angle into [0, 2pi).
template <typename Scalar>
Scalar wrap_two_pi(Scalar angle) {
  constexpr Scalar two_pi = 2 * std::numbers::pi_v<Scalar>;
  Scalar r = std::fmod(angle, two_pi);
  if (r < 0) r += two_pi;
  if (r >= two_pi) r = 0;
  return r;
}

/// Distance between two angles on the circle, in [0, pi].
template <typename Scalar>
Scalar angle_distance(Scalar a, Scalar b) {
  const Scalar d = wrap_two_pi(a - b);
  return std::min(d, 2 * std::numbers::pi_v<Scalar> - d);
}

/// A two-state ray plus gauge:
///
///   |psi> = n e^{i chi} [ e^{i phi/2} cos(theta/2) |0> + e^{-i phi/2} sin(theta/2) |1> ]
///
/// theta in [0, pi], phi and chi in [0, 2pi), n > 0. Note that (phi, chi) and
/// (phi + 2pi, chi + pi) describe the same vector; the stored pair always has
/// phi in [0, 2pi) and chi compensates. At the poles phi is canonically 0.
template <typename Scalar = double>
struct BlochState {
  Scalar theta{0};
  Scalar phi{0};
  Scalar chi{0};
  Scalar n{1};

  /// Builds a state from arbitrary angles, reflecting theta back into
  /// [0, pi] and adjusting phi and chi so that the represented vector is
  /// unchanged.
  static BlochState canonical(Scalar theta, Scalar phi, Scalar chi = 0, Scalar n = 1) {
    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    if (!(n > 0) || !std::isfinite(n))
      throw InvalidState("BlochState: norm must be positive and finite");
    if (!std::isfinite(theta) || !std::isfinite(phi) || !std::isfinite(chi))
      throw InvalidState("BlochState: angles must be finite");

    // theta -> theta + 2pi flips the sign of both amplitudes.
    const Scalar turns = std::floor(theta / (2 * pi));
    theta -= turns * 2 * pi;
    chi += turns * pi;
    if (theta > pi) {
      theta = 2 * pi - theta;
      phi += pi;
      chi += pi / 2;
    }
    if (theta == 0) {
      chi += phi / 2;
      phi = 0;
    } else if (theta == pi) {
      chi -= phi / 2;
      phi = 0;
    }
    BlochState s;
    s.theta = theta;
    s.n = n;
    reduce_phases(phi, chi, s.phi, s.chi);
    return s;
  }

  bool at_pole() const { return theta == 0 || theta == std::numbers::pi_v<Scalar>; }

  /// Weight of |0> in the normalized state, cos^2(theta/2).
  Scalar weight0() const {
    const Scalar c = std::cos(theta / 2);
    return c * c;
  }

  /// Same ray with the gauge fixed to n = 1, chi = 0.
  BlochState gauge_fixed() const {
    BlochState s = *this;
    s.n = 1;
    s.chi = 0;
    return s;
  }

  /// Brings phi into [0, 2pi) by multiples of 2pi, shifting chi by the
  /// matching multiples of pi, then wraps chi.
  static void reduce_phases(Scalar phi, Scalar chi, Scalar& phi_out, Scalar& chi_out) {
    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    const Scalar k = std::floor(phi / (2 * pi));
    phi -= k * 2 * pi;
    chi += k * pi;
    if (phi >= 2 * pi) {
      phi = 0;
      chi += pi;
    } else if (phi < 0) {
      phi = 0;
    }
    phi_out = phi;
    chi_out = wrap_two_pi(chi);
  }
};

using BlochStated = BlochState<double>;

/// Exact equality with the pole convention: at theta in {0, pi} phi is ignored.
template <typename Scalar>
bool operator==(const BlochState<Scalar>& a, const BlochState<Scalar>& b) {
  if (a.theta != b.theta || a.n != b.n || a.chi != b.chi) return false;
  return a.at_pole() || a.phi == b.phi;
}

/// Tolerance comparison. Away from the poles the phases of both amplitudes
/// (chi + phi/2 and chi - phi/2) are compared, which is insensitive to the
/// phi/chi branch choice. Exactly at a pole only chi is compared; within tol
/// of a pole only the phase of the dominant amplitude is.
template <typename Scalar>
bool approx_equal(const BlochState<Scalar>& a, const BlochState<Scalar>& b, Scalar tol) {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  if (std::abs(a.theta - b.theta) > tol) return false;
  if (std::abs(a.n - b.n) > tol * std::max(a.n, b.n)) return false;
  const bool pole = a.theta <= tol || pi - a.theta <= tol;
  if (a.at_pole() || b.at_pole()) return pole && angle_distance(a.chi, b.chi) <= tol;
  if (pole) {
    const Scalar sign = a.theta <= tol ? Scalar(1) : Scalar(-1);
    return angle_distance(a.chi + sign * a.phi / 2, b.chi + sign * b.phi / 2) <= tol;
  }
  return angle_distance(a.chi + a.phi / 2, b.chi + b.phi / 2) <= tol &&
         angle_distance(a.chi - a.phi / 2, b.chi - b.phi / 2) <= tol;
}

template <typename Scalar>
BlochState<Scalar> bloch_from_amplitudes(const Amplitudes<Scalar>& a) {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar m0 = std::abs(a(0));
  const Scalar m1 = std::abs(a(1));
  const Scalar n = std::hypot(m0, m1);
  if (!(n > 0) || !std::isfinite(n))
    throw InvalidState("bloch_from_amplitudes: state vector is zero or non-finite");

  BlochState<Scalar> s;
  s.n = n;
  s.theta = 2 * std::atan2(m1, m0);
  if (m1 == 0) {
    s.theta = 0;
    s.chi = wrap_two_pi(std::arg(a(0)));
    return s;
  }
  if (m0 == 0) {
    s.theta = pi;
    s.chi = wrap_two_pi(std::arg(a(1)));
    return s;
  }
  const Scalar arg0 = std::arg(a(0));
  const Scalar arg1 = std::arg(a(1));
  BlochState<Scalar>::reduce_phases(arg0 - arg1, (arg0 + arg1) / 2, s.phi, s.chi);
  return s;
}

template <typename Scalar>
Amplitudes<Scalar> amplitudes_from_bloch(const BlochState<Scalar>& s) {
  using C = std::complex<Scalar>;
  const C global = std::polar(s.n, s.chi);
  Amplitudes<Scalar> a;
  a(0) = global * std::polar(Scalar(1), s.phi / 2) * std::cos(s.theta / 2);
  a(1) = global * std::polar(Scalar(1), -s.phi / 2) * std::sin(s.theta / 2);
  return a;
}

}  // namespace blochflow

#endif  // BLOCHFLOW_BLOCH_STATE_HPP
