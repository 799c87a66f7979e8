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

#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mqtele/capacity.hpp"
#include "mqtele/qstate.hpp"

namespace mqtele {

// State files are JSON objects:
//
//   {
//     "n_qubits": 2,
//     "alice": [0],
//     "bob": [1],
//     "amplitudes": [[0.0, 0.0], [0.7071067811865476, 0.0], ...]
//   }
//
// `amplitudes` lists [real, imaginary] pairs in big-endian basis order
// (qubit 0 is the most significant bit). `alice` and `bob` are optional for
// payload files but must appear together. Numbers are written in the
// shortest form that reads back to the same double.

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The amplitudes' norm is off by more than kFileNormTolerance.
class NormalizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kFileNormTolerance = 1e-6;

struct StateFile {
  int n_qubits = 0;
  std::optional<std::vector<int>> alice;
  std::optional<std::vector<int>> bob;
  ComplexVector amplitudes;
};

/// Parses and validates a state file. Norm deviations between 1e-9 and
/// kFileNormTolerance are renormalized with a note on `warnings`.
StateFile parse_state_file(std::string_view text, std::ostream* warnings = nullptr);
StateFile read_state_file(const std::filesystem::path& path,
                          std::ostream* warnings = nullptr);

std::string format_state_file(const StateFile& file);
void write_state_file(const std::filesystem::path& path, const StateFile& file);

StateFile to_state_file(const ChannelState& channel);
StateFile to_state_file(const PureState& state);

/// Throws FormatError when the file has no valid bipartition.
ChannelState to_channel(const StateFile& file);
PureState to_pure_state(const StateFile& file);

/// JSON rendering of an analysis report; matrices are nested arrays of
/// [real, imaginary] rows.
std::string format_report(const AnalysisReport& report);

}  // namespace mqtele
