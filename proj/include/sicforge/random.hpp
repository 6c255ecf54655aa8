// Copyright 2026 The sicforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SICFORGE_RANDOM_HPP
#define SICFORGE_RANDOM_HPP

#include <cstdint>
#include <random>

#include "sicforge/hermitian.hpp"

namespace sicforge {

/// All randomness goes through an explicitly passed engine of this type.
using Rng = std::mt19937_64;

/// Independent engine for stream `index` of a seeded family.
inline Rng derive_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x5157u};
  return Rng(seq);
}

/// Entries i.i.d. standard complex normal (variance 1 split across re/im).
inline ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = Complex(n(rng), n(rng));
  return m;
}

/// Uniform (Fubini-Study) random unit vector.
inline ComplexVector random_unit_vector(int d, Rng& rng) {
  ComplexVector v = ginibre(d, 1, rng);
  return v / v.norm();
}

/// Hermitian matrix with GUE-like entries.
inline HermitianOperator random_hermitian(int d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  return HermitianOperator((g + g.adjoint()) / 2.0);
}

/// d^2 independent random Hermitian operators (a basis with probability one).
inline OperatorBasis random_hermitian_basis(int d, Rng& rng) {
  std::vector<HermitianOperator> ops;
  for (int j = 0; j < d * d; ++j) ops.push_back(random_hermitian(d, rng));
  return OperatorBasis(std::move(ops));
}

}  // namespace sicforge

#endif  // SICFORGE_RANDOM_HPP
