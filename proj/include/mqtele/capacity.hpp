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

#include <optional>
#include <vector>

#include "mqtele/linalg.hpp"
#include "mqtele/qstate.hpp"

namespace mqtele {

// Faithful-teleportation capacity of a bipartite pure channel.
//
// A channel |X>_AB can teleport d qubits faithfully iff some unitary U_B on
// Bob's side brings his reduced density matrix to the product form
//   rho'_B = I_{2^d} / 2^d (x) eta,
// i.e. iff every eigenvalue of rho_B occurs with multiplicity divisible by
// 2^d. The Bell pairs occupy the first d qubits of each party's list; eta
// lives on Bob's remaining n - d qubits.
//
// Canonical form reached by U_A (x) U_B, up to global phase:
//   |lambda> = prod_{i<d} phi^1_{A_i B_i} (x) sum_j sqrt(q_j) |j>_{A'} |j>_{B'}
// with q_j the eigenvalues of eta in descending order.

using SpectrumClustersD = SpectrumClusters<double>;

/// Dense local unitaries are built for parties of at most this many qubits.
inline constexpr int kMaxDenseParty = 12;

enum class Party { alice, bob };

struct AnalysisReport {
  double entropy_bits = 0;
  int capacity = 0;
  ComplexMatrix u_a;                 // on Alice's 2^m space
  ComplexMatrix u_b;                 // on Bob's 2^n space
  std::optional<ComplexMatrix> eta;  // Bob's residual density; empty if d = n
  SpectrumClustersD clusters;        // spectrum of the analysed side
  // Qubit relabeling folded into the spectral-side unitary: position q of
  // the relabeled register holds original position relabeling[q]. Acts on
  // Bob's qubits, or on Alice's when roles_swapped.
  std::vector<int> relabeling;
  // Set when m < n: the spectrum of Alice's (smaller) side was analysed and
  // Bob's unitary came from purification freedom.
  bool roles_swapped = false;
};

/// Von Neumann entropy in bits of one party's reduced density matrix.
double entanglement_entropy(const ChannelState& channel, Party side = Party::bob);

/// Reduced density matrix of one party, in that party's list order.
ComplexMatrix party_density(const ChannelState& channel, Party side);

/// Largest d <= min(m, n) with every cluster multiplicity divisible by 2^d.
int max_capacity(const SpectrumClustersD& clusters, int m, int n);

/// Exponent of the largest power of two dividing `value` (value > 0).
int two_adic_valuation(int value);

struct BobSynthesis {
  ComplexMatrix u_b;
  ComplexMatrix eta;            // diagonal, descending, on n - d qubits
  std::vector<int> relabeling;  // see AnalysisReport::relabeling
};

/// Builds U_B mapping the eigenbasis of rho_B onto |i>_{B_1..B_d} (x) |j>_{B'}.
/// `clusters` must come from Bob's rho_B and carry eigenspace bases.
/// Clusters whose value is at most `eps` are treated as exact zeros.
BobSynthesis synthesize_u_b(const ChannelState& channel,
                            const SpectrumClustersD& clusters, int d,
                            double eps = kDefaultEps);

/// true iff ||rho'_B - I/2^d (x) eta||_max <= eps where rho'_B is Bob's
/// density after u_b and eta is rho'_B traced over its first d qubits.
bool verify_condition(const ChannelState& channel, const ComplexMatrix& u_b,
                      int d, double eps = kDefaultEps);

/// Builds U_A with (U_A (x) U_B)|X> equal to the canonical form up to global
/// phase. Throws std::domain_error when (u_b, d) fails verify_condition.
ComplexMatrix synthesize_u_a(const ChannelState& channel,
                             const ComplexMatrix& u_b, int d,
                             double eps = kDefaultEps);

/// Full pipeline: entropy, clustering, capacity, U_B and U_A.
AnalysisReport analyze(const ChannelState& channel, double eps = kDefaultEps);

/// (U_A (x) U_B)|X> for the report's unitaries.
ChannelState canonicalize(const ChannelState& channel,
                          const AnalysisReport& report);

}  // namespace mqtele
