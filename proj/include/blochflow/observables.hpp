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

#ifndef BLOCHFLOW_OBSERVABLES_HPP
#define BLOCHFLOW_OBSERVABLES_HPP

#include "blochflow/bloch_state.hpp"
#include "blochflow/errors.hpp"

namespace blochflow {

/// <psi|O|psi> / <psi|psi>. Invariant under psi -> c psi for any nonzero c,
/// so the norm of a non-unitarily evolved state carries no weight.
template <typename Scalar>
Scalar expectation(const Matrix2c<Scalar>& observable, const Amplitudes<Scalar>& psi,
                   Scalar hermitian_tol = Scalar(1e-12)) {
  const Scalar scale = std::max(Scalar(1), observable.cwiseAbs().maxCoeff());
  if ((observable - observable.adjoint()).cwiseAbs().maxCoeff() > hermitian_tol * scale)
    throw DomainError("expectation: observable is not Hermitian");
  const Scalar norm2 = psi.squaredNorm();
  if (!(norm2 > 0)) throw InvalidState("expectation: zero state");
  return psi.dot(observable * psi).real() / norm2;
}

}  // namespace blochflow

#endif  // BLOCHFLOW_OBSERVABLES_HPP
