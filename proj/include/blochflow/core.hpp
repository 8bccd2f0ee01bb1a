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

#ifndef BLOCHFLOW_CORE_HPP
#define BLOCHFLOW_CORE_HPP

#include "blochflow/bloch_state.hpp"
#include "blochflow/derivatives.hpp"
#include "blochflow/errors.hpp"
#include "blochflow/fixed_points.hpp"
#include "blochflow/generator.hpp"
#include "blochflow/observables.hpp"
#include "blochflow/spectral.hpp"

#endif  // BLOCHFLOW_CORE_HPP
