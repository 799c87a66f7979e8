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

#include "mqtele/corpus.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mqtele/capacity.hpp"
#include "mqtele/random.hpp"

namespace mqtele {
namespace {

std::vector<int> range(int begin, int end) {
  std::vector<int> out(static_cast<std::size_t>(end - begin));
  std::iota(out.begin(), out.end(), begin);
  return out;
}

// Amplitude matrix of a two-qubit state, rows on the first qubit.
ComplexMatrix pair_block(const PureState& pair) {
  ComplexMatrix b(2, 2);
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c) b(a, c) = pair[2 * a + c];
  return b;
}

void check_ghz_split(int n, int m) {
  if (n < 2 || n > 14 || m < 1 || m > n - 1)
    throw std::invalid_argument("GHZ split needs 2 <= n <= 14 and 1 <= m <= n-1, got n=" +
                                std::to_string(n) + " m=" + std::to_string(m));
}

ComplexMatrix cnot_fan(int qubits, int control, const std::vector<int>& targets) {
  ComplexMatrix u = ComplexMatrix::Identity(detail::pow2(qubits), detail::pow2(qubits));
  for (int t : targets) u = cnot_gate(qubits, control, t) * u;
  return u;
}

}  // namespace

ChannelState n_bell_channel(int n, BellIndex k) {
  if (n < 1 || n > 7)
    throw std::invalid_argument("n_bell_channel: need 1 <= n <= 7");
  const ComplexMatrix m = kron_power(pair_block(bell_state(k)), n);
  return ChannelState::from_amplitude_matrix(m, range(0, n), range(n, 2 * n));
}

ChannelState ghz_channel(int n, int m) {
  check_ghz_split(n, m);
  return ChannelState(ghz_state(n), range(0, m), range(m, n));
}

LocalUnitaries ghz_cnot_chain(int n, int m) {
  check_ghz_split(n, m);
  if (std::max(m, n - m) > kMaxDenseParty)
    throw std::length_error("ghz_cnot_chain: party exceeds the dense unitary limit");
  // Alice: control on her first qubit, targets 2..m. Bob: control on the
  // last qubit n, targets m+1..n-1; local index of label i is i - m - 1.
  const int bob_qubits = n - m;
  return {cnot_fan(m, 0, range(1, m)), cnot_fan(bob_qubits, bob_qubits - 1, range(0, bob_qubits - 1))};
}

PureState ghz_canonical_form(int n) {
  detail::require(n >= 2 && n <= kMaxQubits, "ghz_canonical_form: bad size");
  ComplexVector v = ComplexVector::Zero(detail::pow2(n));
  const double s = 1.0 / std::sqrt(2.0);
  v(0) = s;
  v((Eigen::Index{1} << (n - 1)) | 1) = s;
  return PureState(n, std::move(v));
}

ComplexMatrix singlet_to_phi4_frame() { return pauli_z() * pauli_x(); }

PlantedChannel generate_planted(int m, int n, int d, std::uint64_t seed, double eps) {
  if (m < 1 || n < 1 || d < 0 || d > std::min(m, n) || m + n > kMaxQubits ||
      std::max(m, n) > kMaxDenseParty)
    throw std::invalid_argument("generate_planted: infeasible parameters m=" +
                                std::to_string(m) + " n=" + std::to_string(n) +
                                " d=" + std::to_string(d));
  const int s = std::min(m, n);
  const Eigen::Index rank = detail::pow2(s - d);
  const double block = static_cast<double>(detail::pow2(d));

  // Residual Schmidt weights, descending, with every gap in rho_B's
  // spectrum (weights / 2^d, and the last weight against zero) above 10 eps.
  RealVector weights = RealVector::Ones(1);
  if (rank > 1) {
    Rng rng(derive_seed(seed, "planted.residual"));
    bool accepted = false;
    for (int attempt = 0; attempt < 1000 && !accepted; ++attempt) {
      weights = complex_gaussian(rank, rng).cwiseAbs2();
      weights /= weights.sum();
      std::sort(weights.begin(), weights.end(), std::greater<>());
      accepted = weights(rank - 1) / block > 10 * eps;
      for (Eigen::Index k = 0; k + 1 < rank && accepted; ++k)
        accepted = (weights(k) - weights(k + 1)) / block > 10 * eps;
    }
    if (!accepted)
      throw std::runtime_error("generate_planted: could not draw a generic residual");
  }

  ComplexMatrix phi = ComplexMatrix::Zero(detail::pow2(m - d), detail::pow2(n - d));
  for (Eigen::Index k = 0; k < rank; ++k) phi(k, k) = std::sqrt(weights(k));
  const ComplexMatrix lambda = kron(kron_power(pair_block(bell_state(BellIndex(1))), d), phi);

  ComplexMatrix v_a = haar_unitary(detail::pow2(m), derive_seed(seed, "planted.u_a"));
  ComplexMatrix v_b = haar_unitary(detail::pow2(n), derive_seed(seed, "planted.u_b"));
  const ComplexMatrix amp = v_a * lambda * v_b.transpose();

  const auto alice = range(0, m);
  const auto bob = range(m, m + n);
  auto canonical = ChannelState::from_amplitude_matrix(lambda, alice, bob).state();
  return {ChannelState::from_amplitude_matrix(amp, alice, bob), d, std::move(v_a),
          std::move(v_b), std::move(canonical), seed};
}

}  // namespace mqtele
