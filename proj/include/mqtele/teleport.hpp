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

#include <cstdint>
#include <string>
#include <vector>

#include "mqtele/capacity.hpp"
#include "mqtele/qstate.hpp"

namespace mqtele {

/// Classical message i in {1, 2, 3, 4} of one teleportation round. On the
/// wire it is the two bits of i - 1.
class CorrectionIndex {
 public:
  explicit CorrectionIndex(int i) : i_(i) {
    if (i < 1 || i > 4)
      throw std::out_of_range("CorrectionIndex must be in {1,2,3,4}, got " +
                              std::to_string(i));
  }
  int value() const { return i_; }
  std::string bits() const;
  friend bool operator==(CorrectionIndex, CorrectionIndex) = default;

 private:
  int i_;
};

/// U^i for i = 1..4: I, sigma_z, -sigma_x, i sigma_y.
ComplexMatrix correction_operator(CorrectionIndex i);

/// H_a C^a_1 on the ordered pair (1, a): CNOT with control a and target 1,
/// followed by a Hadamard on a.
ComplexMatrix circuit_unitary();

/// Computational outcome (bit of qubit 1, bit of qubit a) mapped to the
/// correction index: |11> -> 1, |10> -> 2, |01> -> 3, |00> -> 4.
CorrectionIndex circuit_message(int bit_payload, int bit_alice);

enum class Mode { exhaustive, sample };
enum class Method { bell, circuit };

struct RoundQubits {
  int payload;
  int alice;
  int bob;
};

struct RoundResult {
  CorrectionIndex message;
  double probability;  // conditional on the state passed in
  PureState state;     // after measurement and correction
};

/// Bell measurement of (payload, alice) forced to outcome `i`, then U^i on
/// bob. Throws std::domain_error when the outcome is unreachable.
RoundResult bell_round(const PureState& state, RoundQubits qubits,
                       CorrectionIndex outcome);
/// As above with the outcome drawn from the branch distribution.
RoundResult bell_round(const PureState& state, RoundQubits qubits,
                       std::uint64_t seed);

/// circuit_unitary on (payload, alice), both measured in {|0>, |1>}.
RoundResult circuit_round(const PureState& state, RoundQubits qubits,
                          CorrectionIndex outcome);
RoundResult circuit_round(const PureState& state, RoundQubits qubits,
                          std::uint64_t seed);

struct TeleportOutcome {
  std::vector<CorrectionIndex> messages;  // one per round, round-major
  double branch_probability = 0;
  PureState receiver_state;  // on Bob's d target qubits
  double payload_fidelity = 0;

  std::string message_bits() const;  // e.g. "00 11"
};

/// Canonicalizes the channel with the report's unitaries, tensors the
/// payload in front, and runs report.capacity rounds over the Bell pairs
/// (alice[i], bob[i]). Exhaustive mode returns every reachable branch in
/// lexicographic message order; sample mode returns one sampled branch.
std::vector<TeleportOutcome> teleport_bell(const ChannelState& channel,
                                           const PureState& payload,
                                           const AnalysisReport& report, Mode mode,
                                           std::uint64_t seed = 0);

/// Measurement-free variant: each round uses circuit_unitary plus two
/// single-qubit measurements. Applied independently per Bell pair.
std::vector<TeleportOutcome> teleport_circuit(const ChannelState& channel,
                                              const PureState& payload,
                                              const AnalysisReport& report,
                                              Mode mode, std::uint64_t seed = 0);

std::vector<TeleportOutcome> teleport(Method method, const ChannelState& channel,
                                      const PureState& payload,
                                      const AnalysisReport& report, Mode mode,
                                      std::uint64_t seed = 0);

/// Max-norm difference between |Psi>_{1..N} phi^1_{ab} and
/// -1/2 sum_i phi^i_{1a} U^i_b |Psi>_{b 2..N}, compared in qubit order
/// (1, 2, ..., N, a, b).
double expansion_identity_check(const PureState& payload);

}  // namespace mqtele
