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

#ifndef BLOCHFLOW_CLI_COMMANDS_HPP
#define BLOCHFLOW_CLI_COMMANDS_HPP

#include <string>

#include "blochflow/cli/config.hpp"

namespace blochflow::cli {

/// CSV: theta,phi,theta_dot,phi_dot,speed,pole. Pole rows carry nan rates.
void run_flow_field(const FlowFieldConfig& config);

/// CSV: ic,t,theta,phi,weight0. Initial state ic uses make_stream(seed, ic, 0).
void run_trajectory(const TrajectoryConfig& config);

/// JSON summary at config.out, per-theta0 CSV table at config.table.
void run_ensemble(const EnsembleCmdConfig& config);

/// JSON summary at config.out, per-theta0 CSV table at config.table.
void run_nonlinear(const NonlinearConfig& config);

/// JSON report at config.out.
void run_envariance(const EnvarianceConfig& config);

/// Shortest representation that reads back to the same double; "nan" and
/// "inf" for non-finite values.
std::string format_number(double x);

}  // namespace blochflow::cli

#endif  // BLOCHFLOW_CLI_COMMANDS_HPP
