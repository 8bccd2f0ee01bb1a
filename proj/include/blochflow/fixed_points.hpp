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

#ifndef BLOCHFLOW_FIXED_POINTS_HPP
#define BLOCHFLOW_FIXED_POINTS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <string_view>
#include <vector>

#include "blochflow/spectral.hpp"

namespace blochflow {

enum class FixedPointCharacter { attractive, repulsive, center, half_attractive };

inline std::string_view to_string(FixedPointCharacter c) {
  switch (c) {
    case FixedPointCharacter::attractive: return "attractive";
    case FixedPointCharacter::repulsive: return "repulsive";
    case FixedPointCharacter::center: return "center";
    case FixedPointCharacter::half_attractive: return "half-attractive";
  }
  return "unknown";
}

template <typename Scalar = double>
struct FixedPoint {
  BlochState<Scalar> location;
  std::complex<Scalar> eigenvalue;
  FixedPointCharacter character;
};

template <typename Scalar = double>
struct FixedPointReport {
  std::vector<FixedPoint<Scalar>> points;

  const FixedPoint<Scalar>* find(FixedPointCharacter c) const {
    auto it = std::find_if(points.begin(), points.end(),
                           [c](const auto& p) { return p.character == c; });
    return it == points.end() ? nullptr : &*it;
  }
};

/// Eigenstates of G are the fixed points of the flow. The component along
/// the eigenvalue with the larger imaginary part grows relative to the other,
/// so that eigenstate attracts and the other repels. Equal imaginary parts
/// give a pair of centers; a defective G has a single half-attractive point.
template <typename Scalar>
FixedPointReport<Scalar> classify_fixed_points(const Generator<Scalar>& g,
                                               Scalar center_tol = Scalar(1e-10)) {
  const auto dec = eigen_decompose(g);
  FixedPointReport<Scalar> report;
  auto location = [&](int k) { return bloch_from_amplitudes<Scalar>(dec.psi(k)).gauge_fixed(); };

  if (dec.defective) {
    report.points.push_back({location(0), dec.lambda(0), FixedPointCharacter::half_attractive});
    return report;
  }
  const Scalar im0 = dec.lambda(0).imag();
  const Scalar im1 = dec.lambda(1).imag();
  const Scalar scale = std::max({Scalar(1), std::abs(dec.lambda(0)), std::abs(dec.lambda(1))});
  if (std::abs(im0 - im1) <= center_tol * scale) {
    report.points.push_back({location(0), dec.lambda(0), FixedPointCharacter::center});
    report.points.push_back({location(1), dec.lambda(1), FixedPointCharacter::center});
    return report;
  }
  const bool first_wins = im0 > im1;
  report.points.push_back({location(0), dec.lambda(0),
                           first_wins ? FixedPointCharacter::attractive : FixedPointCharacter::repulsive});
  report.points.push_back({location(1), dec.lambda(1),
                           first_wins ? FixedPointCharacter::repulsive : FixedPointCharacter::attractive});
  return report;
}

}  // namespace blochflow

#endif  // BLOCHFLOW_FIXED_POINTS_HPP
