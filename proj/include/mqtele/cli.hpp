// Copyright 2026 The mqtele Authors
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

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mqtele::cli {

enum ExitCode : int {
  kOk = 0,
  kShortfall = 1,      // verify: capacity below the requested d
  kMalformed = 2,      // unreadable or invalid state file, bad usage
  kNotNormalized = 3,  // amplitude norm off by more than 1e-6
  kInfeasible = 4,     // payload/capacity mismatch, bad generate or GHZ parameters
  kFidelity = 5,       // a branch or check fell below 1 - 1e-9
  kUnsupported = 6,    // party too large for dense unitaries
  kInternal = 70,      // unexpected failure
};

/// Runs the command line `args` (without the program name). Normal output
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mqtele::cli
