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

#include "mqtele/teleport.hpp"

#include <array>
#include <functional>
#include <stdexcept>

#include "mqtele/random.hpp"

namespace mqtele {

std::string CorrectionIndex::bits() const {
  const int v = i_ - 1;
  return {static_cast<char>('0' + (v >> 1)), static_cast<char>('0' + (v & 1))};
}

std::string TeleportOutcome::message_bits() const {
  std::string out;
  for (const auto& m : messages) {
    if (!out.empty()) out += ' ';
    out += m.bits();
  }
  return out;
}

ComplexMatrix correction_operator(CorrectionIndex i) {
  switch (i.value()) {
    case 1: return ComplexMatrix::Identity(2, 2);
    case 2: return pauli_z();
    case 3: return -pauli_x();
    default: return std::complex<double>(0, 1) * pauli_y();
  }
}

ComplexMatrix circuit_unitary() {
  const ComplexMatrix h_a = kron(ComplexMatrix(ComplexMatrix::Identity(2, 2)), hadamard());
  return h_a * cnot_gate(2, /*control=*/1, /*target=*/0);
}

CorrectionIndex circuit_message(int bit_payload, int bit_alice) {
  detail::require((bit_payload == 0 || bit_payload == 1) &&
                      (bit_alice == 0 || bit_alice == 1),
                  "circuit_message: bits must be 0 or 1");
  return CorrectionIndex(4 - (2 * bit_payload + bit_alice));
}

namespace {

const std::vector<PureState>& computational_pair_basis() {
  static const std::vector<PureState> basis{basis_state({0, 0}), basis_state({0, 1}),
                                            basis_state({1, 0}), basis_state({1, 1})};
  return basis;
}

const std::vector<PureState>& bell_pair_basis() {
  static const std::vector<PureState> basis = bell_basis();
  return basis;
}

RoundResult finish_round(const Measurement<double>& m, CorrectionIndex i, int bob) {
  if (!m.reachable())
    throw std::domain_error("teleport round: outcome " + std::to_string(i.value()) +
                            " is unreachable");
  const std::array<int, 1> target{bob};
  return {i, m.probability, apply_unitary(*m.collapsed, correction_operator(i), target)};
}

// Index into `probabilities` drawn with a seeded uniform; only reachable
// entries can be selected.
int draw(const std::array<double, 4>& probabilities, std::uint64_t seed) {
  Rng rng(seed);
  const double u = uniform01(rng);
  double acc = 0;
  int last = -1;
  for (int k = 0; k < 4; ++k) {
    if (probabilities[k] < kUnreachableProbability) continue;
    last = k;
    acc += probabilities[k];
    if (u < acc) return k;
  }
  if (last < 0) throw std::domain_error("teleport round: no reachable outcome");
  return last;
}

PureState rotate_for_circuit(const PureState& state, RoundQubits q) {
  const std::array<int, 2> pair{q.payload, q.alice};
  return apply_unitary(state, circuit_unitary(), pair);
}

// Position of chi^i in the computational pair basis.
std::size_t chi_position(CorrectionIndex i) {
  return static_cast<std::size_t>(4 - i.value());
}

RoundResult circuit_round_rotated(const PureState& rotated, RoundQubits q,
                                  CorrectionIndex outcome) {
  const std::array<int, 2> pair{q.payload, q.alice};
  const auto m = project_and_collapse<double>(rotated, pair, computational_pair_basis(),
                                              chi_position(outcome));
  return finish_round(m, outcome, q.bob);
}

using ForcedRound = std::function<RoundResult(const PureState&, RoundQubits, CorrectionIndex)>;
using SampledRound = std::function<RoundResult(const PureState&, RoundQubits, std::uint64_t)>;

TeleportOutcome make_outcome(const PureState& state, std::span<const int> targets,
                             const PureState& payload,
                             std::vector<CorrectionIndex> messages, double probability) {
  const ComplexMatrix rho = reduced_density(state, targets);
  const double fid = std::real(payload.amplitudes().dot(rho * payload.amplitudes()));
  const auto eig = hermitian_eig(rho);
  ComplexVector top = eig.vectors.col(0);
  const auto overlap = payload.amplitudes().dot(top);
  if (std::abs(overlap) > 0) top *= std::conj(overlap) / std::abs(overlap);
  return {std::move(messages), probability,
          PureState::normalized(payload.n_qubits(), std::move(top)), fid};
}

std::vector<TeleportOutcome> run_protocol(const ChannelState& channel,
                                          const PureState& payload,
                                          const AnalysisReport& report, Mode mode,
                                          std::uint64_t seed, const ForcedRound& forced,
                                          const SampledRound& sampled) {
  const int d = report.capacity;
  if (d < 1) throw std::invalid_argument("teleport: channel capacity is 0");
  if (payload.n_qubits() != d)
    throw std::invalid_argument("teleport: payload has " +
                                std::to_string(payload.n_qubits()) +
                                " qubits but the channel capacity is " +
                                std::to_string(d));
  const ChannelState canon = canonicalize(channel, report);
  const PureState start = tensor(payload, canon.state());

  std::vector<RoundQubits> rounds;
  std::vector<int> targets;
  for (int r = 0; r < d; ++r) {
    rounds.push_back({r, d + canon.alice()[r], d + canon.bob()[r]});
    targets.push_back(d + canon.bob()[r]);
  }

  std::vector<TeleportOutcome> out;
  if (mode == Mode::sample) {
    PureState state = start;
    std::vector<CorrectionIndex> messages;
    double probability = 1;
    for (int r = 0; r < d; ++r) {
      auto result = sampled(state, rounds[r], derive_seed(seed, "round", r));
      messages.push_back(result.message);
      probability *= result.probability;
      state = std::move(result.state);
    }
    out.push_back(make_outcome(state, targets, payload, std::move(messages), probability));
    return out;
  }

  std::vector<CorrectionIndex> messages;
  std::function<void(const PureState&, int, double)> descend =
      [&](const PureState& state, int r, double probability) {
        if (r == d) {
          out.push_back(make_outcome(state, targets, payload, messages, probability));
          return;
        }
        for (int i = 1; i <= 4; ++i) {
          std::optional<RoundResult> result;
          try {
            result = forced(state, rounds[r], CorrectionIndex(i));
          } catch (const std::domain_error&) {
            continue;  // unreachable branch
          }
          messages.push_back(result->message);
          descend(result->state, r + 1, probability * result->probability);
          messages.pop_back();
        }
      };
  descend(start, 0, 1.0);
  return out;
}

}  // namespace

RoundResult bell_round(const PureState& state, RoundQubits q, CorrectionIndex outcome) {
  const std::array<int, 2> pair{q.payload, q.alice};
  const auto m = project_and_collapse<double>(
      state, pair, bell_pair_basis(), static_cast<std::size_t>(outcome.value() - 1));
  return finish_round(m, outcome, q.bob);
}

RoundResult bell_round(const PureState& state, RoundQubits q, std::uint64_t seed) {
  const std::array<int, 2> pair{q.payload, q.alice};
  std::array<double, 4> probabilities{};
  for (std::size_t k = 0; k < 4; ++k)
    probabilities[k] =
        project_and_collapse<double>(state, pair, bell_pair_basis(), k).probability;
  return bell_round(state, q, CorrectionIndex(draw(probabilities, seed) + 1));
}

RoundResult circuit_round(const PureState& state, RoundQubits q, CorrectionIndex outcome) {
  return circuit_round_rotated(rotate_for_circuit(state, q), q, outcome);
}

RoundResult circuit_round(const PureState& state, RoundQubits q, std::uint64_t seed) {
  const PureState rotated = rotate_for_circuit(state, q);
  const std::array<int, 2> pair{q.payload, q.alice};
  std::array<double, 4> probabilities{};
  for (int i = 1; i <= 4; ++i)
    probabilities[i - 1] = project_and_collapse<double>(rotated, pair,
                                                        computational_pair_basis(),
                                                        chi_position(CorrectionIndex(i)))
                               .probability;
  return circuit_round_rotated(rotated, q, CorrectionIndex(draw(probabilities, seed) + 1));
}

std::vector<TeleportOutcome> teleport_bell(const ChannelState& channel,
                                           const PureState& payload,
                                           const AnalysisReport& report, Mode mode,
                                           std::uint64_t seed) {
  return run_protocol(
      channel, payload, report, mode, seed,
      [](const PureState& s, RoundQubits q, CorrectionIndex i) { return bell_round(s, q, i); },
      [](const PureState& s, RoundQubits q, std::uint64_t k) { return bell_round(s, q, k); });
}

std::vector<TeleportOutcome> teleport_circuit(const ChannelState& channel,
                                              const PureState& payload,
                                              const AnalysisReport& report, Mode mode,
                                              std::uint64_t seed) {
  return run_protocol(
      channel, payload, report, mode, seed,
      [](const PureState& s, RoundQubits q, CorrectionIndex i) {
        return circuit_round(s, q, i);
      },
      [](const PureState& s, RoundQubits q, std::uint64_t k) {
        return circuit_round(s, q, k);
      });
}

std::vector<TeleportOutcome> teleport(Method method, const ChannelState& channel,
                                      const PureState& payload,
                                      const AnalysisReport& report, Mode mode,
                                      std::uint64_t seed) {
  return method == Method::bell ? teleport_bell(channel, payload, report, mode, seed)
                                : teleport_circuit(channel, payload, report, mode, seed);
}

double expansion_identity_check(const PureState& payload) {
  const int n = payload.n_qubits();
  detail::require(n >= 1 && n + 2 <= kMaxQubits,
                  "expansion_identity_check: payload too large");
  const ComplexVector lhs = tensor(payload, bell_state(BellIndex(1))).amplitudes();

  // Right-hand side in qubit order (1, a, b, 2, ..., N).
  ComplexVector rhs = ComplexVector::Zero(lhs.size());
  const std::array<int, 1> first{0};
  for (int i = 1; i <= 4; ++i) {
    const PureState moved = apply_unitary(payload, correction_operator(CorrectionIndex(i)), first);
    rhs -= 0.5 * kron(bell_state(BellIndex(i)).amplitudes(), moved.amplitudes());
  }
  // Position q of the comparison order holds rhs qubit order[q].
  std::vector<int> order{0};
  for (int q = 3; q < n + 2; ++q) order.push_back(q);
  order.push_back(1);
  order.push_back(2);
  const std::vector<int> none;
  const ComplexMatrix permuted = bipartite_matrix(rhs, n + 2, order, none);
  return max_abs(lhs - permuted.col(0));
}

}  // namespace mqtele
