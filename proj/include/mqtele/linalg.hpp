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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace mqtele {

/// Hard cap on the number of qubits in any dense state (dimension 65536).
inline constexpr int kMaxQubits = 16;

/// Default absolute tolerance for eigenvalue clustering and factorization
/// checks on trace-one spectra.
inline constexpr double kDefaultEps = 1e-9;

/// Tolerance used for Hermiticity, unitarity and normalization
/// preconditions.
inline constexpr double kCheckTol = 1e-9;

template <typename Scalar>
using CMatrix =
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using RVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ComplexMatrix = CMatrix<double>;
using ComplexVector = CVector<double>;
using RealVector = RVector<double>;

namespace detail {

inline void require(bool condition, const std::string& what) {
  if (!condition) throw std::invalid_argument(what);
}

inline Eigen::Index pow2(int bits) { return Eigen::Index{1} << bits; }

}  // namespace detail

/// Returns n such that 2^n == dim, or -1 when dim is not a power of two.
inline int qubits_for_dimension(Eigen::Index dim) {
  if (dim <= 0 || (dim & (dim - 1)) != 0) return -1;
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

template <typename Derived>
typename Derived::RealScalar max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0;
  return m.cwiseAbs().maxCoeff();
}

template <typename Derived>
CMatrix<typename Derived::RealScalar> identity_like(
    const Eigen::MatrixBase<Derived>& m) {
  return CMatrix<typename Derived::RealScalar>::Identity(m.rows(), m.cols());
}

/// Kronecker product. Rejects results wider than 2^16 in either direction.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a,
    const Eigen::MatrixBase<DerivedB>& b) {
  static_assert(std::is_same_v<typename DerivedA::Scalar,
                               typename DerivedB::Scalar>,
                "kron operands must share a scalar type");
  constexpr Eigen::Index kCap = Eigen::Index{1} << kMaxQubits;
  if (a.rows() * b.rows() > kCap || a.cols() * b.cols() > kCap)
    throw std::length_error("kron: result exceeds 2^16 dimension");
  detail::require(a.allFinite() && b.allFinite(),
                  "kron: operands must be finite");
  Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(
      a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Kronecker power; kron_power(m, 0) is the 1x1 identity.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
kron_power(const Eigen::MatrixBase<Derived>& m, int power) {
  using Out =
      Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Out out = Out::Identity(1, 1);
  for (int k = 0; k < power; ++k) out = kron(out, m);
  return out;
}

// ---------------------------------------------------------------------------
// Qubit index bookkeeping. Basis index of an n-qubit register is
// sum_q bit_q * 2^(n-1-q): qubit 0 is the most significant bit.

/// Throws unless `qubits` are distinct and within [0, n_qubits).
inline void check_qubit_list(int n_qubits, std::span<const int> qubits) {
  std::vector<bool> seen(static_cast<std::size_t>(std::max(n_qubits, 0)));
  for (int q : qubits) {
    detail::require(q >= 0 && q < n_qubits,
                    "qubit index " + std::to_string(q) + " out of range");
    detail::require(!seen[static_cast<std::size_t>(q)],
                    "qubit index " + std::to_string(q) + " repeated");
    seen[static_cast<std::size_t>(q)] = true;
  }
}

/// Ascending list of the qubits of an n-qubit register not in `qubits`.
inline std::vector<int> complement_qubits(int n_qubits,
                                          std::span<const int> qubits) {
  std::vector<bool> used(static_cast<std::size_t>(n_qubits));
  for (int q : qubits) used[static_cast<std::size_t>(q)] = true;
  std::vector<int> rest;
  for (int q = 0; q < n_qubits; ++q)
    if (!used[static_cast<std::size_t>(q)]) rest.push_back(q);
  return rest;
}

/// For each local index r over `qubits` (first listed = most significant),
/// the corresponding bit pattern inside the n-qubit global index.
inline std::vector<std::size_t> basis_offsets(int n_qubits,
                                              std::span<const int> qubits) {
  const auto k = static_cast<int>(qubits.size());
  std::vector<std::size_t> offsets(std::size_t{1} << k, 0);
  for (std::size_t r = 0; r < offsets.size(); ++r) {
    std::size_t off = 0;
    for (int j = 0; j < k; ++j)
      if ((r >> (k - 1 - j)) & 1U)
        off |= std::size_t{1} << (n_qubits - 1 - qubits[j]);
    offsets[r] = off;
  }
  return offsets;
}

/// Reshapes an n-qubit amplitude vector into the matrix M with
/// M(r, c) = <r|_rows <c|_cols |psi>. `rows` and `cols` must partition the
/// register; each list fixes the big-endian order of its own index.
template <typename Derived>
CMatrix<typename Derived::RealScalar> bipartite_matrix(
    const Eigen::MatrixBase<Derived>& amplitudes, int n_qubits,
    std::span<const int> rows, std::span<const int> cols) {
  detail::require(amplitudes.size() == detail::pow2(n_qubits),
                  "bipartite_matrix: amplitude length is not 2^n");
  detail::require(static_cast<int>(rows.size() + cols.size()) == n_qubits,
                  "bipartite_matrix: rows and cols must partition the qubits");
  std::vector<int> all(rows.begin(), rows.end());
  all.insert(all.end(), cols.begin(), cols.end());
  check_qubit_list(n_qubits, all);
  const auto row_off = basis_offsets(n_qubits, rows);
  const auto col_off = basis_offsets(n_qubits, cols);
  CMatrix<typename Derived::RealScalar> m(row_off.size(), col_off.size());
  for (std::size_t c = 0; c < col_off.size(); ++c)
    for (std::size_t r = 0; r < row_off.size(); ++r)
      m(r, c) = amplitudes(static_cast<Eigen::Index>(row_off[r] | col_off[c]));
  return m;
}

/// Inverse of bipartite_matrix.
template <typename Derived>
CVector<typename Derived::RealScalar> from_bipartite_matrix(
    const Eigen::MatrixBase<Derived>& m, int n_qubits,
    std::span<const int> rows, std::span<const int> cols) {
  detail::require(m.rows() == detail::pow2(static_cast<int>(rows.size())) &&
                      m.cols() == detail::pow2(static_cast<int>(cols.size())),
                  "from_bipartite_matrix: shape does not match qubit lists");
  detail::require(static_cast<int>(rows.size() + cols.size()) == n_qubits,
                  "from_bipartite_matrix: rows and cols must partition");
  const auto row_off = basis_offsets(n_qubits, rows);
  const auto col_off = basis_offsets(n_qubits, cols);
  CVector<typename Derived::RealScalar> v(detail::pow2(n_qubits));
  for (std::size_t c = 0; c < col_off.size(); ++c)
    for (std::size_t r = 0; r < row_off.size(); ++r)
      v(static_cast<Eigen::Index>(row_off[r] | col_off[c])) = m(r, c);
  return v;
}

// ---------------------------------------------------------------------------

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& h,
                  typename Derived::RealScalar tol) {
  if (h.rows() != h.cols()) return false;
  return max_abs(h - h.adjoint()) <= tol;
}

/// true iff ||U^dagger U - I||_max <= tol.
template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& u,
                typename Derived::RealScalar tol) {
  detail::require(u.rows() == u.cols(), "is_unitary: matrix must be square");
  return max_abs(u.adjoint() * u - identity_like(u)) <= tol;
}

/// Traces out `traced_out` from a 2^n square density matrix. The kept
/// qubits appear in ascending index order. Trace is preserved, so inputs
/// need not be trace one.
template <typename Derived>
CMatrix<typename Derived::RealScalar> partial_trace(
    const Eigen::MatrixBase<Derived>& rho, int qubit_count,
    std::span<const int> traced_out) {
  detail::require(qubit_count >= 0 && qubit_count <= kMaxQubits,
                  "partial_trace: qubit count out of range");
  detail::require(rho.rows() == detail::pow2(qubit_count) &&
                      rho.cols() == rho.rows(),
                  "partial_trace: rho must be 2^n square");
  detail::require(is_hermitian(rho, kCheckTol),
                  "partial_trace: rho is not Hermitian");
  check_qubit_list(qubit_count, traced_out);
  const auto kept = complement_qubits(qubit_count, traced_out);
  const auto keep_off = basis_offsets(qubit_count, kept);
  const auto trace_off = basis_offsets(qubit_count, traced_out);
  CMatrix<typename Derived::RealScalar> out(keep_off.size(), keep_off.size());
  for (std::size_t i = 0; i < keep_off.size(); ++i)
    for (std::size_t j = 0; j < keep_off.size(); ++j) {
      std::complex<typename Derived::RealScalar> acc = 0;
      for (std::size_t t : trace_off)
        acc += rho(static_cast<Eigen::Index>(keep_off[i] | t),
                   static_cast<Eigen::Index>(keep_off[j] | t));
      out(i, j) = acc;
    }
  return out;
}

/// Reduced density matrix of a pure n-qubit state on `keep`, in the order
/// given.
template <typename Derived>
CMatrix<typename Derived::RealScalar> reduced_density(
    const Eigen::MatrixBase<Derived>& amplitudes, int n_qubits,
    std::span<const int> keep) {
  check_qubit_list(n_qubits, keep);
  const auto rest = complement_qubits(n_qubits, keep);
  const auto m = bipartite_matrix(amplitudes, n_qubits, keep, rest);
  return m * m.adjoint();
}

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition and spectrum clustering.

template <typename Scalar>
struct EigenDecomposition {
  RVector<Scalar> values;   // descending
  CMatrix<Scalar> vectors;  // orthonormal columns, matching `values`
};

namespace detail {

// Rotates each column so its first non-negligible entry is real positive.
template <typename Scalar>
void canonicalize_phases(CMatrix<Scalar>& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const Scalar mag = std::abs(vectors(r, c));
      if (mag > Scalar(1e-10)) {
        vectors.col(c) *= std::conj(vectors(r, c)) / mag;
        vectors(r, c) = mag;
        break;
      }
    }
  }
}

template <typename Derived>
bool is_numerically_diagonal(const Eigen::MatrixBase<Derived>& h) {
  using Real = typename Derived::RealScalar;
  const Real scale = std::max(Real(1), max_abs(h));
  const Real tol = Real(1e-14) * scale;
  for (Eigen::Index j = 0; j < h.cols(); ++j)
    for (Eigen::Index i = 0; i < h.rows(); ++i)
      if (i != j && std::abs(h(i, j)) > tol) return false;
  return true;
}

}  // namespace detail

/// Eigenvalues descending with orthonormal eigenvectors. A numerically
/// diagonal input returns permuted computational basis vectors (stable in
/// index within ties), so already-diagonal spectra map to the identity.
template <typename Derived>
EigenDecomposition<typename Derived::RealScalar> hermitian_eig(
    const Eigen::MatrixBase<Derived>& h) {
  using Real = typename Derived::RealScalar;
  detail::require(h.rows() == h.cols(), "hermitian_eig: matrix must be square");
  detail::require(is_hermitian(h, Real(kCheckTol)),
                  "hermitian_eig: matrix is not Hermitian");
  const Eigen::Index dim = h.rows();
  EigenDecomposition<Real> out;
  out.values.resize(dim);
  out.vectors = CMatrix<Real>::Zero(dim, dim);

  if (detail::is_numerically_diagonal(h)) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) {
                       return std::real(h(a, a)) > std::real(h(b, b));
                     });
    for (Eigen::Index k = 0; k < dim; ++k) {
      out.values(k) = std::real(h(order[k], order[k]));
      out.vectors(order[k], k) = 1;
    }
    return out;
  }

  const CMatrix<Real> sym = (h + h.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(sym);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver did not converge");
  for (Eigen::Index k = 0; k < dim; ++k) {
    out.values(k) = solver.eigenvalues()(dim - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(dim - 1 - k);
  }
  detail::canonicalize_phases(out.vectors);
  return out;
}

/// Eigenvalues only, descending.
template <typename Derived>
RVector<typename Derived::RealScalar> hermitian_eigenvalues(
    const Eigen::MatrixBase<Derived>& h) {
  using Real = typename Derived::RealScalar;
  detail::require(h.rows() == h.cols() && is_hermitian(h, Real(kCheckTol)),
                  "hermitian_eigenvalues: matrix is not Hermitian");
  const CMatrix<Real> sym = (h + h.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(sym,
                                                      Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigenvalues: no convergence");
  return solver.eigenvalues().reverse();
}

template <typename Scalar>
struct SpectrumCluster {
  Scalar value;            // the cluster's leading (largest) eigenvalue
  int multiplicity;
  CMatrix<Scalar> basis;   // dim x multiplicity, empty when not requested
};

template <typename Scalar>
struct SpectrumClusters {
  std::vector<SpectrumCluster<Scalar>> clusters;

  int dimension() const {
    int total = 0;
    for (const auto& c : clusters) total += c.multiplicity;
    return total;
  }
  bool has_basis() const {
    return std::all_of(clusters.begin(), clusters.end(), [](const auto& c) {
      return c.basis.cols() == c.multiplicity;
    });
  }
};

/// Greedy clustering of a descending spectrum: a value joins the current
/// cluster while it is within eps of that cluster's first value.
template <typename Derived>
SpectrumClusters<typename Derived::Scalar> cluster_spectrum(
    const Eigen::MatrixBase<Derived>& eigenvalues,
    typename Derived::Scalar eps) {
  using Real = typename Derived::Scalar;
  detail::require(eps > 0, "cluster_spectrum: eps must be positive");
  SpectrumClusters<Real> out;
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
    const Real v = eigenvalues(k);
    detail::require(k == 0 || v <= eigenvalues(k - 1),
                    "cluster_spectrum: eigenvalues must be descending");
    if (!out.clusters.empty() && out.clusters.back().value - v <= eps)
      ++out.clusters.back().multiplicity;
    else
      out.clusters.push_back({v, 1, CMatrix<Real>()});
  }
  return out;
}

/// Clustering that also carries each cluster's eigenspace basis.
template <typename Scalar>
SpectrumClusters<Scalar> cluster_spectrum(
    const EigenDecomposition<Scalar>& eig, Scalar eps) {
  auto out = cluster_spectrum(eig.values, eps);
  Eigen::Index offset = 0;
  for (auto& c : out.clusters) {
    c.basis = eig.vectors.middleCols(offset, c.multiplicity);
    offset += c.multiplicity;
  }
  return out;
}

/// -sum p log2 p over the positive entries.
template <typename Derived>
typename Derived::Scalar von_neumann_entropy_bits(
    const Eigen::MatrixBase<Derived>& eigenvalues) {
  using Real = typename Derived::Scalar;
  Real s = 0;
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
    const Real p = eigenvalues(k);
    if (p > 0) s -= p * std::log2(p);
  }
  return s;
}

// ---------------------------------------------------------------------------

template <typename Scalar>
struct SchmidtDecomposition {
  RVector<Scalar> coefficients;  // non-negative, descending
  CMatrix<Scalar> a_vectors;     // dim_a x r
  CMatrix<Scalar> b_vectors;     // dim_b x r
};

/// state = sum_k c_k a_k (x) b_k for a vector indexed as i_a * dim_b + i_b.
template <typename Derived>
SchmidtDecomposition<typename Derived::RealScalar> schmidt_decompose(
    const Eigen::MatrixBase<Derived>& state, Eigen::Index dim_a,
    Eigen::Index dim_b) {
  using Real = typename Derived::RealScalar;
  detail::require(dim_a > 0 && dim_b > 0 && state.size() == dim_a * dim_b,
                  "schmidt_decompose: length must equal dim_a * dim_b");
  detail::require(std::abs(state.norm() - Real(1)) <= Real(kCheckTol),
                  "schmidt_decompose: state is not normalized");
  CMatrix<Real> m(dim_a, dim_b);
  for (Eigen::Index i = 0; i < dim_a; ++i)
    for (Eigen::Index j = 0; j < dim_b; ++j) m(i, j) = state(i * dim_b + j);
  Eigen::BDCSVD<CMatrix<Real>> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.singularValues(), svd.matrixU(), svd.matrixV().conjugate()};
}

}  // namespace mqtele
