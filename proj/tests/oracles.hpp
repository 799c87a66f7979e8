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

// Reference implementations used only by the tests. They favour the most
// literal formulation over speed and share no code paths with the library.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline int bit(std::uint64_t index, int qubit, int n) {
  return static_cast<int>((index >> (n - 1 - qubit)) & 1U);
}

/// (a (x) b)(i, j) = a(i / rb, j / cb) b(i % rb, j % cb), entry by entry.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index j = 0; j < out.cols(); ++j)
      out(i, j) = a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
  return out;
}

/// Partial trace by scanning every (row, col) pair and keeping those whose
/// traced bits agree. Kept qubits stay in ascending order.
inline Matrix partial_trace(const Matrix& rho, int n, const std::vector<int>& traced) {
  std::vector<int> kept;
  for (int q = 0; q < n; ++q)
    if (std::find(traced.begin(), traced.end(), q) == traced.end()) kept.push_back(q);
  const auto compress = [&](std::uint64_t x) {
    std::uint64_t k = 0;
    for (int q : kept) k = (k << 1) | static_cast<std::uint64_t>(bit(x, q, n));
    return k;
  };
  const Eigen::Index kdim = Eigen::Index{1} << kept.size();
  Matrix out = Matrix::Zero(kdim, kdim);
  for (std::uint64_t r = 0; r < static_cast<std::uint64_t>(rho.rows()); ++r)
    for (std::uint64_t c = 0; c < static_cast<std::uint64_t>(rho.cols()); ++c) {
      bool same = true;
      for (int q : traced) same = same && bit(r, q, n) == bit(c, q, n);
      if (same) out(compress(r), compress(c)) += rho(r, c);
    }
  return out;
}

/// Full 2^n operator for `u` acting on `targets` (in order).
inline Matrix embed(const Matrix& u, int n, const std::vector<int>& targets) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  const auto sub = [&](std::uint64_t x) {
    std::uint64_t k = 0;
    for (int q : targets) k = (k << 1) | static_cast<std::uint64_t>(bit(x, q, n));
    return k;
  };
  std::uint64_t mask = 0;
  for (int q : targets) mask |= std::uint64_t{1} << (n - 1 - q);
  Matrix out = Matrix::Zero(dim, dim);
  for (std::uint64_t y = 0; y < static_cast<std::uint64_t>(dim); ++y)
    for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(dim); ++x)
      if ((y & ~mask) == (x & ~mask)) out(y, x) = u(sub(y), sub(x));
  return out;
}

/// Amplitude matrix with rows on `rows` and columns on every other qubit in
/// ascending order, built by direct bit extraction.
inline Matrix reshape(const Vector& amps, int n, const std::vector<int>& rows,
                      const std::vector<int>& cols) {
  Matrix m(Eigen::Index{1} << rows.size(), Eigen::Index{1} << cols.size());
  for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(amps.size()); ++x) {
    std::uint64_t r = 0, c = 0;
    for (int q : rows) r = (r << 1) | static_cast<std::uint64_t>(bit(x, q, n));
    for (int q : cols) c = (c << 1) | static_cast<std::uint64_t>(bit(x, q, n));
    m(r, c) = amps(x);
  }
  return m;
}

inline int valuation(int v) {
  int k = 0;
  while (v % 2 == 0) {
    v /= 2;
    ++k;
  }
  return k;
}

/// Spectral-divisibility capacity from raw multiplicities. Bob's spectrum is
/// the squared singular values of the m x n amplitude matrix (Jacobi SVD),
/// padded with zeros to 2^n. Two eigenvalues are degenerate when they are
/// linked by a chain of neighbours closer than `tol`.
inline int capacity(const Matrix& amplitude_matrix, int m, int n, double tol) {
  Eigen::JacobiSVD<Matrix> svd(amplitude_matrix);
  std::vector<double> spectrum(static_cast<std::size_t>(amplitude_matrix.cols()), 0.0);
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
    spectrum[static_cast<std::size_t>(k)] = svd.singularValues()(k) * svd.singularValues()(k);
  std::sort(spectrum.begin(), spectrum.end());
  int d = std::min(m, n);
  int run = 1;
  for (std::size_t k = 1; k <= spectrum.size(); ++k) {
    if (k < spectrum.size() && spectrum[k] - spectrum[k - 1] <= tol) {
      ++run;
      continue;
    }
    d = std::min(d, valuation(run));
    run = 1;
  }
  return d;
}

/// Trace distance (half the nuclear norm) between two Hermitian matrices.
inline double trace_distance(const Matrix& a, const Matrix& b) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a - b, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace oracle
