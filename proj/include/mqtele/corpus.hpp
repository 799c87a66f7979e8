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

#include "mqtele/linalg.hpp"
#include "mqtele/qstate.hpp"

namespace mqtele {

/// prod_i phi^k_{A_i B_i}; Alice holds qubits 0..n-1, Bob n..2n-1, and pair
/// i is (i, n + i).
ChannelState n_bell_channel(int n, BellIndex k = BellIndex(1));

/// GHZ(n) with Alice holding qubits 0..m-1 and Bob m..n-1.
ChannelState ghz_channel(int n, int m);

struct LocalUnitaries {
  ComplexMatrix u_a;
  ComplexMatrix u_b;
};

/// U_A = prod_{i=2..m} C^1_i and U_B = prod_{i=m+1..n-1} C^n_i (control
/// first, target second; 1-based qubit labels as in GHZ(n)). Together they
/// take GHZ(n) to phi^4_{1n} (x) |0...0>.
LocalUnitaries ghz_cnot_chain(int n, int m);

/// phi^4_{(0, n-1)} (x) |0> on every other qubit of an n-qubit register.
PureState ghz_canonical_form(int n);

/// Single-qubit unitary F with (I (x) F) phi^1 = phi^4, i.e. F = sigma_z sigma_x.
ComplexMatrix singlet_to_phi4_frame();

struct PlantedChannel {
  ChannelState channel;
  int planted_capacity;
  ComplexMatrix hidden_u_a;  // V_A: channel = (V_A (x) V_B) lambda
  ComplexMatrix hidden_u_b;
  PureState canonical;       // lambda, same qubit layout as channel
  std::uint64_t seed;
};

/// Channel with exactly d faithful qubits: Haar-random local unitaries
/// applied to d singlets (x) a residual with strictly decreasing nonzero
/// Schmidt coefficients. Residual spectra are redrawn until every gap
/// between eigenvalues of rho_B exceeds 10 * eps. Alice holds qubits
/// 0..m-1, Bob m..m+n-1.
PlantedChannel generate_planted(int m, int n, int d, std::uint64_t seed,
                                double eps = kDefaultEps);

}  // namespace mqtele
