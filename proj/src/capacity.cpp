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

#include "mqtele/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mqtele {
namespace {

// Relative-vector pairs lighter than this carry no probability and are left
// to the completion.
constexpr double kWeightFloor = 1e-13;

void check_dense_party(int qubits) {
  if (qubits > kMaxDenseParty)
    throw std::length_error("party of " + std::to_string(qubits) +
                            " qubits exceeds the dense local unitary limit of " +
                            std::to_string(kMaxDenseParty));
}

// Reduced density on the column index of an amplitude matrix.
ComplexMatrix column_density(const ComplexMatrix& amp) {
  return amp.transpose() * amp.conjugate();
}

// Traces out the `d` most significant qubits of a 2^total square matrix.
ComplexMatrix trace_leading(const ComplexMatrix& rho, int d) {
  const Eigen::Index blocks = detail::pow2(d);
  const Eigen::Index res = rho.rows() / blocks;
  ComplexMatrix out = ComplexMatrix::Zero(res, res);
  for (Eigen::Index i = 0; i < blocks; ++i) out += rho.block(i * res, i * res, res, res);
  return (out + out.adjoint()) / 2.0;
}

// Amplitude matrix of phi^1 with rows on the first qubit.
ComplexMatrix singlet_block(bool transposed) {
  const double s = 1.0 / std::sqrt(2.0);
  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  b(0, 1) = s;
  b(1, 0) = -s;
  return transposed ? ComplexMatrix(b.transpose()) : b;
}

struct SpectralSynthesis {
  ComplexMatrix unitary;
  RealVector eta;
  std::vector<int> relabeling;
};

// Maps each eigenvector to a product label. Within a cluster of multiplicity
// c * 2^d, eigenvector k goes to residual label base + k / 2^d and uniform
// label k % 2^d, first laid out as |residual>|uniform>; the uniform qubits
// are then relabeled to the front.
SpectralSynthesis spectral_unitary(const SpectrumClustersD& clusters, int d,
                                   int side_qubits, double eps) {
  const Eigen::Index dim = detail::pow2(side_qubits);
  detail::require(clusters.dimension() == dim,
                  "synthesize: clusters do not span the party's space");
  detail::require(clusters.has_basis(), "synthesize: clusters carry no basis");
  detail::require(d >= 0 && d <= side_qubits, "synthesize: d out of range");
  const Eigen::Index block = detail::pow2(d);
  const int res_qubits = side_qubits - d;

  ComplexMatrix w = ComplexMatrix::Zero(dim, dim);
  RealVector eta = RealVector::Zero(detail::pow2(res_qubits));
  Eigen::Index residual = 0;
  for (const auto& c : clusters.clusters) {
    if (c.multiplicity % block != 0)
      throw std::invalid_argument("synthesize_u_b: capacity " + std::to_string(d) +
                                  " is not admissible for this spectrum");
    for (Eigen::Index k = 0; k < c.multiplicity; ++k) {
      const Eigen::Index layout = (residual + k / block) * block + k % block;
      w.row(layout) = c.basis.col(k).adjoint();
    }
    const Eigen::Index labels = c.multiplicity / block;
    for (Eigen::Index t = 0; t < labels; ++t)
      eta(residual + t) = c.value > eps ? c.value * static_cast<double>(block) : 0.0;
    residual += labels;
  }

  ComplexMatrix perm = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    const Eigen::Index uniform = x & (block - 1);
    const Eigen::Index res = x >> d;
    perm((uniform << res_qubits) | res, x) = 1;
  }
  std::vector<int> relabeling;
  for (int q = 0; q < d; ++q) relabeling.push_back(res_qubits + q);
  for (int q = 0; q < res_qubits; ++q) relabeling.push_back(q);
  return {perm * w, eta, relabeling};
}

// Orthonormalizes columns in order (twice-iterated Gram-Schmidt, phases
// kept).
ComplexMatrix orthonormalize(const ComplexMatrix& cols) {
  ComplexMatrix q(cols.rows(), cols.cols());
  for (Eigen::Index k = 0; k < cols.cols(); ++k) {
    ComplexVector v = cols.col(k);
    for (int pass = 0; pass < 2; ++pass)
      if (k > 0) v -= q.leftCols(k) * (q.leftCols(k).adjoint() * v);
    const double norm = v.norm();
    if (norm < 0.5)
      throw std::runtime_error("synthesize_u_a: relative vectors are degenerate");
    q.col(k) = v / norm;
  }
  return q;
}

// Unitary whose leading columns are `orthonormal`; the remaining columns come
// from the Householder reflections that triangularize it.
ComplexMatrix complete_basis(const ComplexMatrix& orthonormal, Eigen::Index dim) {
  if (orthonormal.cols() == 0) return ComplexMatrix::Identity(dim, dim);
  Eigen::HouseholderQR<ComplexMatrix> qr(orthonormal);
  ComplexMatrix q = qr.householderQ();
  q.leftCols(orthonormal.cols()) = orthonormal;
  return q;
}

// Given amp (rows: purifying side, cols: spectral side) and a spectral-side
// unitary that factorizes the spectral density, returns the purifying-side
// unitary reaching the canonical form.
ComplexMatrix purifying_unitary(const ComplexMatrix& amp, const ComplexMatrix& u_s,
                                int d, bool transposed_bells) {
  const int p = qubits_for_dimension(amp.rows());
  const int s = qubits_for_dimension(amp.cols());
  detail::require(d >= 0 && d <= std::min(p, s), "synthesize_u_a: d out of range");
  const ComplexMatrix rotated = amp * u_s.transpose();
  const ComplexMatrix eta = trace_leading(column_density(rotated), d);
  // The spectral unitary leaves eta diagonal; keep its labels rather than
  // re-sorting entries that tie up to rounding.
  // Nonzero entries go first so the residual fits the other party.
  EigenDecomposition<double> eig;
  if (detail::is_numerically_diagonal(eta)) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(eta.rows()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_partition(order.begin(), order.end(), [&](Eigen::Index k) {
      return eta(k, k).real() > kWeightFloor;
    });
    eig.values.resize(eta.rows());
    eig.vectors = ComplexMatrix::Zero(eta.rows(), eta.cols());
    for (std::size_t k = 0; k < order.size(); ++k) {
      eig.values(static_cast<Eigen::Index>(k)) = eta(order[k], order[k]).real();
      eig.vectors(order[k], static_cast<Eigen::Index>(k)) = 1;
    }
  } else {
    eig = hermitian_eig(eta);
  }

  const Eigen::Index res_s = detail::pow2(s - d);
  const Eigen::Index res_p = detail::pow2(p - d);
  ComplexMatrix phi = ComplexMatrix::Zero(res_p, res_s);
  for (Eigen::Index j = 0; j < res_s; ++j) {
    const double q = std::max(eig.values(j), 0.0);
    if (j >= res_p) {
      if (q > kDefaultEps)
        throw std::domain_error("synthesize_u_a: residual rank exceeds the other party");
      continue;
    }
    phi.row(j) = std::sqrt(q) * eig.vectors.col(j).transpose();
  }
  const ComplexMatrix target =
      kron(kron_power(singlet_block(transposed_bells), d), phi);
  const ComplexMatrix basis =
      kron(ComplexMatrix::Identity(detail::pow2(d), detail::pow2(d)), eig.vectors);
  const ComplexMatrix source_rel = rotated * basis.conjugate();
  const ComplexMatrix target_rel = target * basis.conjugate();

  std::vector<Eigen::Index> support;
  for (Eigen::Index k = 0; k < target_rel.cols(); ++k)
    if (target_rel.col(k).squaredNorm() > kWeightFloor &&
        source_rel.col(k).squaredNorm() > kWeightFloor)
      support.push_back(k);
  ComplexMatrix x(amp.rows(), static_cast<Eigen::Index>(support.size()));
  ComplexMatrix y(amp.rows(), static_cast<Eigen::Index>(support.size()));
  for (std::size_t i = 0; i < support.size(); ++i) {
    const auto k = support[i];
    x.col(static_cast<Eigen::Index>(i)) = source_rel.col(k).normalized();
    y.col(static_cast<Eigen::Index>(i)) = target_rel.col(k).normalized();
  }
  const ComplexMatrix x_full = complete_basis(orthonormalize(x), amp.rows());
  const ComplexMatrix y_full = complete_basis(orthonormalize(y), amp.rows());
  return y_full * x_full.adjoint();
}

}  // namespace

ComplexMatrix party_density(const ChannelState& channel, Party side) {
  const ComplexMatrix amp = channel.amplitude_matrix();
  if (side == Party::bob) return column_density(amp);
  return amp * amp.adjoint();
}

double entanglement_entropy(const ChannelState& channel, Party side) {
  return von_neumann_entropy_bits(hermitian_eigenvalues(party_density(channel, side)));
}

int two_adic_valuation(int value) {
  detail::require(value > 0, "two_adic_valuation: value must be positive");
  int v = 0;
  while ((value & 1) == 0) {
    value >>= 1;
    ++v;
  }
  return v;
}

int max_capacity(const SpectrumClustersD& clusters, int m, int n) {
  int d = std::min(m, n);
  for (const auto& c : clusters.clusters) d = std::min(d, two_adic_valuation(c.multiplicity));
  return std::max(d, 0);
}

BobSynthesis synthesize_u_b(const ChannelState& channel,
                            const SpectrumClustersD& clusters, int d, double eps) {
  detail::require(d >= 0 && d <= std::min(channel.m(), channel.n()),
                  "synthesize_u_b: capacity exceeds min(m, n)");
  check_dense_party(channel.n());
  auto spectral = spectral_unitary(clusters, d, channel.n(), eps);
  ComplexMatrix eta = spectral.eta.cast<std::complex<double>>().asDiagonal();
  return {std::move(spectral.unitary), std::move(eta), std::move(spectral.relabeling)};
}

bool verify_condition(const ChannelState& channel, const ComplexMatrix& u_b, int d,
                      double eps) {
  const Eigen::Index dim = detail::pow2(channel.n());
  detail::require(u_b.rows() == dim && u_b.cols() == dim,
                  "verify_condition: U_B has the wrong size");
  detail::require(is_unitary(u_b, kCheckTol), "verify_condition: U_B is not unitary");
  if (d == 0) return true;
  if (d < 0 || d > channel.n()) return false;
  const ComplexMatrix rho = column_density(channel.amplitude_matrix() * u_b.transpose());
  const ComplexMatrix eta = trace_leading(rho, d);
  const Eigen::Index block = detail::pow2(d);
  const ComplexMatrix expected =
      kron(ComplexMatrix(ComplexMatrix::Identity(block, block) / static_cast<double>(block)),
           eta);
  return max_abs(rho - expected) <= eps;
}

ComplexMatrix synthesize_u_a(const ChannelState& channel, const ComplexMatrix& u_b,
                             int d, double eps) {
  detail::require(d >= 0 && d <= std::min(channel.m(), channel.n()),
                  "synthesize_u_a: capacity exceeds min(m, n)");
  check_dense_party(channel.m());
  if (!verify_condition(channel, u_b, d, eps))
    throw std::domain_error("synthesize_u_a: U_B does not factorize rho_B at d = " +
                            std::to_string(d));
  return purifying_unitary(channel.amplitude_matrix(), u_b, d, false);
}

AnalysisReport analyze(const ChannelState& channel, double eps) {
  detail::require(eps > 0, "analyze: eps must be positive");
  const int m = channel.m();
  const int n = channel.n();
  check_dense_party(m);
  check_dense_party(n);

  AnalysisReport report;
  report.roles_swapped = m < n;
  const ComplexMatrix amp = channel.amplitude_matrix();
  // Rows: purifying side. Columns: the smaller, spectrally analysed side.
  const ComplexMatrix work = report.roles_swapped ? ComplexMatrix(amp.transpose()) : amp;
  const int s = std::min(m, n);

  const auto eig = hermitian_eig(column_density(work));
  report.entropy_bits = von_neumann_entropy_bits(eig.values);
  report.clusters = cluster_spectrum(eig, eps);
  report.capacity = max_capacity(report.clusters, m, n);

  auto spectral = spectral_unitary(report.clusters, report.capacity, s, eps);
  ComplexMatrix u_p = purifying_unitary(work, spectral.unitary, report.capacity,
                                        report.roles_swapped);
  report.relabeling = std::move(spectral.relabeling);
  if (report.roles_swapped) {
    report.u_a = std::move(spectral.unitary);
    report.u_b = std::move(u_p);
  } else {
    report.u_a = std::move(u_p);
    report.u_b = std::move(spectral.unitary);
  }

  if (report.capacity < n) {
    const ComplexMatrix canon = report.u_a * amp * report.u_b.transpose();
    report.eta = trace_leading(column_density(canon), report.capacity);
  }
  if (!verify_condition(channel, report.u_b, report.capacity, eps))
    throw std::logic_error("analyze: synthesized U_B fails the factorization check");
  return report;
}

ChannelState canonicalize(const ChannelState& channel, const AnalysisReport& report) {
  const ComplexMatrix amp = report.u_a * channel.amplitude_matrix() * report.u_b.transpose();
  return ChannelState::from_amplitude_matrix(amp, channel.alice(), channel.bob());
}

}  // namespace mqtele
