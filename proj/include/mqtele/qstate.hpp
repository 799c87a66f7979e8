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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mqtele/linalg.hpp"
#include "mqtele/random.hpp"

namespace mqtele {

/// Normalized pure state of n qubits. Qubit 0 is the most significant bit of
/// the basis index.
template <typename Scalar>
class BasicPureState {
 public:
  using Vector = CVector<Scalar>;

  BasicPureState(int n_qubits, Vector amplitudes)
      : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    detail::require(n_qubits_ >= 0 && n_qubits_ <= kMaxQubits,
                    "PureState: qubit count out of range");
    detail::require(amplitudes_.size() == detail::pow2(n_qubits_),
                    "PureState: amplitude length must be 2^n_qubits");
    detail::require(amplitudes_.allFinite(),
                    "PureState: amplitudes must be finite");
    detail::require(std::abs(amplitudes_.norm() - Scalar(1)) <= Scalar(kCheckTol),
                    "PureState: state is not normalized");
  }

  /// Normalizes `amplitudes` before validating.
  static BasicPureState normalized(int n_qubits, Vector amplitudes) {
    const Scalar norm = amplitudes.norm();
    detail::require(norm > 0, "PureState: zero vector");
    amplitudes /= norm;
    return BasicPureState(n_qubits, std::move(amplitudes));
  }

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dimension() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }
  std::complex<Scalar> operator[](Eigen::Index i) const { return amplitudes_(i); }

 private:
  int n_qubits_;
  Vector amplitudes_;
};

using PureState = BasicPureState<double>;

/// A pure state shared between Alice and Bob. The two ordered qubit lists
/// partition the register; list order is the big-endian order of each
/// party's local index.
template <typename Scalar>
class BasicChannelState {
 public:
  BasicChannelState(BasicPureState<Scalar> state, std::vector<int> alice,
                    std::vector<int> bob)
      : state_(std::move(state)), alice_(std::move(alice)), bob_(std::move(bob)) {
    detail::require(!alice_.empty() && !bob_.empty(),
                    "ChannelState: both parties need at least one qubit");
    detail::require(
        static_cast<int>(alice_.size() + bob_.size()) == state_.n_qubits(),
        "ChannelState: alice and bob must cover every qubit");
    std::vector<int> all = alice_;
    all.insert(all.end(), bob_.begin(), bob_.end());
    check_qubit_list(state_.n_qubits(), all);
  }

  /// Channel whose Alice x Bob amplitude matrix is `m`.
  static BasicChannelState from_amplitude_matrix(const CMatrix<Scalar>& m,
                                                 std::vector<int> alice,
                                                 std::vector<int> bob) {
    const int n = static_cast<int>(alice.size() + bob.size());
    auto v = from_bipartite_matrix(m, n, alice, bob);
    return BasicChannelState(BasicPureState<Scalar>::normalized(n, std::move(v)),
                             std::move(alice), std::move(bob));
  }

  const BasicPureState<Scalar>& state() const { return state_; }
  const std::vector<int>& alice() const { return alice_; }
  const std::vector<int>& bob() const { return bob_; }
  int m() const { return static_cast<int>(alice_.size()); }
  int n() const { return static_cast<int>(bob_.size()); }

  /// M(a, b) = <a|_A <b|_B |X>.
  CMatrix<Scalar> amplitude_matrix() const {
    return bipartite_matrix(state_.amplitudes(), state_.n_qubits(), alice_, bob_);
  }

 private:
  BasicPureState<Scalar> state_;
  std::vector<int> alice_;
  std::vector<int> bob_;
};

using ChannelState = BasicChannelState<double>;

/// Label k of the Bell state phi^k, k in {1, 2, 3, 4}.
class BellIndex {
 public:
  explicit BellIndex(int k) : k_(k) {
    if (k < 1 || k > 4)
      throw std::out_of_range("BellIndex must be in {1,2,3,4}, got " +
                              std::to_string(k));
  }
  int value() const { return k_; }
  friend bool operator==(BellIndex, BellIndex) = default;

 private:
  int k_;
};

// ---------------------------------------------------------------------------
// Gates. Multi-qubit operators use the same big-endian order as states.

template <typename Scalar = double>
CMatrix<Scalar> pauli_x() {
  CMatrix<Scalar> m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

template <typename Scalar = double>
CMatrix<Scalar> pauli_y() {
  using C = std::complex<Scalar>;
  CMatrix<Scalar> m(2, 2);
  m << C(0), C(0, -1), C(0, 1), C(0);
  return m;
}

template <typename Scalar = double>
CMatrix<Scalar> pauli_z() {
  CMatrix<Scalar> m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

template <typename Scalar = double>
CMatrix<Scalar> hadamard() {
  const Scalar s = Scalar(1) / std::sqrt(Scalar(2));
  CMatrix<Scalar> m(2, 2);
  m << s, s, s, -s;
  return m;
}

/// CNOT on an n-qubit register (local indices), as a permutation matrix.
template <typename Scalar = double>
CMatrix<Scalar> cnot_gate(int n_qubits, int control, int target) {
  detail::require(n_qubits >= 2 && n_qubits <= kMaxQubits,
                  "cnot_gate: register size out of range");
  const std::vector<int> pair{control, target};
  check_qubit_list(n_qubits, pair);
  const Eigen::Index dim = detail::pow2(n_qubits);
  const Eigen::Index cbit = Eigen::Index{1} << (n_qubits - 1 - control);
  const Eigen::Index tbit = Eigen::Index{1} << (n_qubits - 1 - target);
  CMatrix<Scalar> m = CMatrix<Scalar>::Zero(dim, dim);
  for (Eigen::Index x = 0; x < dim; ++x) m((x & cbit) ? (x ^ tbit) : x, x) = 1;
  return m;
}

// ---------------------------------------------------------------------------
// Canonical states.

/// phi^1 = (|01> - |10>)/sqrt2, phi^2 = (|01> + |10>)/sqrt2,
/// phi^3 = (|00> - |11>)/sqrt2, phi^4 = (|00> + |11>)/sqrt2.
template <typename Scalar = double>
BasicPureState<Scalar> bell_state(BellIndex k) {
  const Scalar s = Scalar(1) / std::sqrt(Scalar(2));
  CVector<Scalar> v = CVector<Scalar>::Zero(4);
  switch (k.value()) {
    case 1: v(1) = s; v(2) = -s; break;
    case 2: v(1) = s; v(2) = s; break;
    case 3: v(0) = s; v(3) = -s; break;
    default: v(0) = s; v(3) = s; break;
  }
  return BasicPureState<Scalar>(2, std::move(v));
}

/// The four Bell states in label order, as a measurement basis.
template <typename Scalar = double>
std::vector<BasicPureState<Scalar>> bell_basis() {
  std::vector<BasicPureState<Scalar>> basis;
  for (int k = 1; k <= 4; ++k) basis.push_back(bell_state<Scalar>(BellIndex(k)));
  return basis;
}

template <typename Scalar = double>
BasicPureState<Scalar> ghz_state(int n) {
  detail::require(n >= 2 && n <= kMaxQubits, "ghz_state: need 2 <= n <= 16");
  const Scalar s = Scalar(1) / std::sqrt(Scalar(2));
  CVector<Scalar> v = CVector<Scalar>::Zero(detail::pow2(n));
  v(0) = s;
  v(v.size() - 1) = s;
  return BasicPureState<Scalar>(n, std::move(v));
}

template <typename Scalar = double>
BasicPureState<Scalar> basis_state(std::span<const int> bits) {
  const int n = static_cast<int>(bits.size());
  detail::require(n >= 1 && n <= kMaxQubits, "basis_state: bad bit count");
  Eigen::Index index = 0;
  for (int b : bits) {
    detail::require(b == 0 || b == 1, "basis_state: bits must be 0 or 1");
    index = (index << 1) | b;
  }
  CVector<Scalar> v = CVector<Scalar>::Zero(detail::pow2(n));
  v(index) = 1;
  return BasicPureState<Scalar>(n, std::move(v));
}

template <typename Scalar = double>
BasicPureState<Scalar> basis_state(std::initializer_list<int> bits) {
  const std::vector<int> b(bits);
  return basis_state<Scalar>(std::span<const int>(b));
}

/// Haar-random pure state: normalized complex Gaussian vector.
template <typename Scalar = double>
BasicPureState<Scalar> random_pure_state(int n, std::uint64_t seed) {
  detail::require(n >= 1 && n <= kMaxQubits,
                  "random_pure_state: need 1 <= n <= 16");
  Rng rng(seed);
  return BasicPureState<Scalar>::normalized(
      n, complex_gaussian<Scalar>(detail::pow2(n), rng));
}

// ---------------------------------------------------------------------------
// Operations.

/// Applies `u` to `targets`; target order is the operator's big-endian
/// qubit order.
template <typename Scalar, typename Derived>
BasicPureState<Scalar> apply_unitary(const BasicPureState<Scalar>& state,
                                     const Eigen::MatrixBase<Derived>& u,
                                     std::span<const int> targets) {
  const int n = state.n_qubits();
  check_qubit_list(n, targets);
  const Eigen::Index dim = detail::pow2(static_cast<int>(targets.size()));
  detail::require(u.rows() == dim && u.cols() == dim,
                  "apply_unitary: operator size does not match targets");
  detail::require(is_unitary(u, Scalar(kCheckTol)),
                  "apply_unitary: operator is not unitary");
  const auto rest = complement_qubits(n, targets);
  CMatrix<Scalar> m = bipartite_matrix(state.amplitudes(), n, targets, rest);
  m = (u * m).eval();
  return BasicPureState<Scalar>(n, from_bipartite_matrix(m, n, targets, rest));
}

template <typename Scalar, typename Derived>
BasicPureState<Scalar> apply_unitary(const BasicPureState<Scalar>& state,
                                     const Eigen::MatrixBase<Derived>& u,
                                     std::initializer_list<int> targets) {
  const std::vector<int> t(targets);
  return apply_unitary(state, u, std::span<const int>(t));
}

/// Tensor product; qubits of later factors follow those of earlier ones.
template <typename Scalar>
BasicPureState<Scalar> tensor(std::span<const BasicPureState<Scalar>> states) {
  detail::require(!states.empty(), "tensor: no states");
  int total = 0;
  for (const auto& s : states) total += s.n_qubits();
  if (total > kMaxQubits) throw std::length_error("tensor: more than 16 qubits");
  CVector<Scalar> v = states.front().amplitudes();
  for (std::size_t k = 1; k < states.size(); ++k)
    v = kron(v, states[k].amplitudes());
  return BasicPureState<Scalar>(total, std::move(v));
}

template <typename Scalar>
BasicPureState<Scalar> tensor(const std::vector<BasicPureState<Scalar>>& states) {
  return tensor<Scalar>(std::span<const BasicPureState<Scalar>>(states));
}

template <typename Scalar>
BasicPureState<Scalar> tensor(const BasicPureState<Scalar>& a,
                              const BasicPureState<Scalar>& b) {
  const std::vector<BasicPureState<Scalar>> both{a, b};
  return tensor<Scalar>(std::span<const BasicPureState<Scalar>>(both));
}

/// Reorders qubits: qubit q of the result is qubit order[q] of `state`.
template <typename Scalar>
BasicPureState<Scalar> permute_qubits(const BasicPureState<Scalar>& state,
                                      std::span<const int> order) {
  const int n = state.n_qubits();
  detail::require(static_cast<int>(order.size()) == n,
                  "permute_qubits: order must list every qubit");
  const std::vector<int> none;
  CMatrix<Scalar> col = bipartite_matrix(state.amplitudes(), n, order, none);
  return BasicPureState<Scalar>(n, col.col(0));
}

/// |<a|b>|^2.
template <typename Scalar>
Scalar fidelity(const BasicPureState<Scalar>& a, const BasicPureState<Scalar>& b) {
  detail::require(a.n_qubits() == b.n_qubits(), "fidelity: qubit count mismatch");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

template <typename Scalar>
CMatrix<Scalar> reduced_density(const BasicPureState<Scalar>& state,
                                std::span<const int> keep) {
  return reduced_density(state.amplitudes(), state.n_qubits(), keep);
}

/// Branches with probability below this are reported unreachable.
inline constexpr double kUnreachableProbability = 1e-12;

template <typename Scalar>
struct Measurement {
  Scalar probability;
  std::optional<BasicPureState<Scalar>> collapsed;  // empty when unreachable

  bool reachable() const { return collapsed.has_value(); }
};

/// Projects `targets` onto basis[outcome]. The measured qubits stay in the
/// register, left in the observed basis state.
template <typename Scalar>
Measurement<Scalar> project_and_collapse(
    const BasicPureState<Scalar>& state, std::span<const int> targets,
    std::span<const BasicPureState<Scalar>> basis, std::size_t outcome) {
  const int n = state.n_qubits();
  const int k = static_cast<int>(targets.size());
  check_qubit_list(n, targets);
  if (outcome >= basis.size())
    throw std::out_of_range("project_and_collapse: outcome out of range");
  detail::require(basis.size() <= static_cast<std::size_t>(detail::pow2(k)),
                  "project_and_collapse: too many basis states");
  for (std::size_t i = 0; i < basis.size(); ++i) {
    detail::require(basis[i].n_qubits() == k,
                    "project_and_collapse: basis state has wrong qubit count");
    for (std::size_t j = 0; j < i; ++j)
      detail::require(std::abs(basis[j].amplitudes().dot(basis[i].amplitudes())) <=
                          Scalar(kCheckTol),
                      "project_and_collapse: basis is not orthonormal");
  }
  const auto rest = complement_qubits(n, targets);
  const CMatrix<Scalar> m = bipartite_matrix(state.amplitudes(), n, targets, rest);
  const auto& b = basis[outcome].amplitudes();
  const Eigen::Matrix<std::complex<Scalar>, 1, Eigen::Dynamic> relative =
      b.adjoint() * m;
  const Scalar probability = relative.squaredNorm();
  if (probability < Scalar(kUnreachableProbability)) return {probability, std::nullopt};
  const CMatrix<Scalar> collapsed = b * (relative / std::sqrt(probability));
  return {probability, BasicPureState<Scalar>(
                           n, from_bipartite_matrix(collapsed, n, targets, rest))};
}

}  // namespace mqtele
