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
#include <random>
#include <string_view>

#include "mqtele/linalg.hpp"

namespace mqtele {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Named child seed: mix64(mix64(base ^ fnv1a(label)) + index). Every
/// consumer of randomness derives its own stream from the user seed through
/// a distinct label, so adding a consumer never perturbs another one.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::string_view label,
                                    std::uint64_t index = 0) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return mix64(mix64(base ^ h) + index);
}

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Vector of i.i.d. standard complex normals (real and imaginary parts each
/// N(0, 1/2)).
template <typename Scalar = double>
CVector<Scalar> complex_gaussian(Eigen::Index n, Rng& rng) {
  std::normal_distribution<Scalar> normal(Scalar(0), Scalar(std::sqrt(0.5)));
  CVector<Scalar> v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar re = normal(rng);
    const Scalar im = normal(rng);
    v(i) = {re, im};
  }
  return v;
}

/// Haar-random unitary: QR of a complex Ginibre matrix with the phases of
/// R's diagonal divided out.
template <typename Scalar = double>
CMatrix<Scalar> haar_unitary(Eigen::Index dim, Rng& rng) {
  CMatrix<Scalar> g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) g.col(j) = complex_gaussian<Scalar>(dim, rng);
  Eigen::HouseholderQR<CMatrix<Scalar>> qr(g);
  CMatrix<Scalar> q = qr.householderQ();
  const CMatrix<Scalar> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const auto d = r(j, j);
    const Scalar mag = std::abs(d);
    if (mag > 0) q.col(j) *= d / mag;
  }
  return q;
}

template <typename Scalar = double>
CMatrix<Scalar> haar_unitary(Eigen::Index dim, std::uint64_t seed) {
  Rng rng(seed);
  return haar_unitary<Scalar>(dim, rng);
}

}  // namespace mqtele
