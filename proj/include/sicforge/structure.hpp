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

#ifndef SICFORGE_STRUCTURE_HPP
#define SICFORGE_STRUCTURE_HPP

#include <cmath>
#include <string>
#include <vector>

#include "sicforge/error.hpp"
#include "sicforge/hermitian.hpp"

namespace sicforge {

/// Structure constants of a bilinear product in a basis:
/// L_j * L_k = sum_l C_jkl L_l, stored as the structure matrices
/// (C_j)_kl = C_jkl.
struct StructureTensor {
  int dim = 0;
  std::vector<ComplexMatrix> matrices;
  /// max_{j,k} ||L_j * L_k - sum_l C_jkl L_l||_max
  double reconstruction_residual = 0.0;

  int size() const { return static_cast<int>(matrices.size()); }
  Complex operator()(int j, int k, int l) const { return matrices[static_cast<std::size_t>(j)](k, l); }
};

namespace detail {

/// Expands product(L_j, L_k) for all pairs in the basis by solving the Gram
/// system tr(product L_m) = sum_l C_jkl M_lm, with one Cholesky factorization
/// of M shared by all right-hand sides.
template <typename Product>
StructureTensor expand_products(const OperatorBasis& basis, Product&& product, const char* who) {
  const int d = basis.dim();
  const int n = basis.size();
  Eigen::LLT<RealMatrix> llt(basis.gram());
  if (llt.info() != Eigen::Success || basis.gram_condition_floor() < 1e-13) {
    throw PreconditionError(std::string(who) + ": Gram matrix is singular; the operators do not form a basis");
  }
  // Column l of w is vec(L_l^T), so w^T vec(X) = (tr(X L_l))_l; column l of v is vec(L_l).
  ComplexMatrix w(d * d, n), v(d * d, n);
  for (int l = 0; l < n; ++l) {
    w.col(l) = vectorize(ComplexMatrix(basis[l].matrix().transpose()));
    v.col(l) = vectorize(basis[l].matrix());
  }
  ComplexMatrix products(d * d, static_cast<Eigen::Index>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      products.col(static_cast<Eigen::Index>(j) * n + k) = vectorize(product(basis[j].matrix(), basis[k].matrix()));
  const ComplexMatrix rhs = w.transpose() * products;  // n x n^2
  // M is real symmetric positive definite; solve real and imaginary parts separately.
  const RealMatrix re = llt.solve(RealMatrix(rhs.real()));
  const RealMatrix im = llt.solve(RealMatrix(rhs.imag()));
  ComplexMatrix coeffs(n, static_cast<Eigen::Index>(n) * n);
  coeffs.real() = re;
  coeffs.imag() = im;

  StructureTensor out;
  out.dim = d;
  out.reconstruction_residual = max_abs(products - v * coeffs);
  out.matrices.assign(static_cast<std::size_t>(n), ComplexMatrix(n, n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) out.matrices[static_cast<std::size_t>(j)].row(k) =
        coeffs.col(static_cast<Eigen::Index>(j) * n + k).transpose();
  return out;
}

/// Largest |entry| over all structure matrices.
inline double structure_scale(const StructureTensor& s) {
  double m = 0.0;
  for (const auto& c : s.matrices) m = std::max(m, max_abs(c));
  return m;
}

}  // namespace detail

}  // namespace sicforge

#endif  // SICFORGE_STRUCTURE_HPP
