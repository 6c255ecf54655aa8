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

#ifndef SICFORGE_TESTS_FIXTURES_HPP
#define SICFORGE_TESTS_FIXTURES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sicforge/sicforge.hpp"

namespace sicforge::testing {

/// Solver fiducial for dimension d (seed 1), computed once per process.
inline const Fiducial& solver_fiducial(int d) {
  static std::mutex mu;
  static std::array<std::optional<Fiducial>, 16> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache.at(static_cast<std::size_t>(d));
  if (!slot) {
    SolverConfig cfg;
    cfg.seed = 1;
    slot = minimize_frame_potential(d, cfg).fiducial;
  }
  return *slot;
}

inline SicEnsemble solver_sic(int d) { return SicEnsemble::from_fiducial(solver_fiducial(d)); }

/// A basis obeying sum_j |L_j>><<L_j| = alpha I + beta |1>><<1| exactly:
/// L_j = sum_k M_jk B_k over the orthonormal Gell-Mann basis B with
/// M = O (alpha I + beta b b^T)^{1/2}, b_k = tr B_k and O Haar-orthogonal.
inline OperatorBasis tight_frame_basis(int d, double alpha, double beta, Rng& rng) {
  const OperatorBasis b = gell_mann_basis(d);
  const int n = d * d;
  RealVector t(n);
  for (int k = 0; k < n; ++k) t(k) = b[k].trace();
  const RealMatrix proj = t * t.transpose() / t.squaredNorm();
  const RealMatrix root = std::sqrt(alpha) * (RealMatrix::Identity(n, n) - proj) +
                          std::sqrt(std::max(0.0, alpha + t.squaredNorm() * beta)) * proj;
  const RealMatrix m = haar_orthogonal(n, rng) * root;
  std::vector<HermitianOperator> ops;
  for (int j = 0; j < n; ++j) {
    ComplexMatrix acc = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < n; ++k) acc += m(j, k) * b[k].matrix();
    ops.emplace_back(acc);
  }
  return OperatorBasis(std::move(ops));
}

/// Generic basis: Gaussian mixing of the Gell-Mann basis.
inline OperatorBasis generic_basis(int d, Rng& rng) {
  const OperatorBasis b = gell_mann_basis(d);
  const int n = d * d;
  std::normal_distribution<double> g;
  std::vector<HermitianOperator> ops;
  for (int j = 0; j < n; ++j) {
    ComplexMatrix acc = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < n; ++k) acc += g(rng) * b[k].matrix();
    ops.emplace_back(acc);
  }
  return OperatorBasis(std::move(ops));
}

/// L_j = a_j Pi_j + b_j with a_j = e_j sqrt(alpha(d+1)/d) and
/// b_j = -(a_j/d)(1 - e s), s = sqrt((alpha + d beta)/(alpha(d+1))).
inline OperatorBasis sic_rank1_basis(const SicEnsemble& sic, double alpha, double beta, int eps,
                                     const std::vector<int>& eps_j) {
  const int d = sic.dim();
  const double s = std::sqrt((alpha + d * beta) / (alpha * (d + 1.0)));
  std::vector<HermitianOperator> ops;
  for (int j = 0; j < sic.size(); ++j) {
    const double a = eps_j[static_cast<std::size_t>(j)] * std::sqrt(alpha * (d + 1.0) / d);
    const double b = -(a / d) * (1.0 - eps * s);
    ops.push_back(a * sic[j] + HermitianOperator(b * ComplexMatrix::Identity(d, d)));
  }
  return OperatorBasis(std::move(ops));
}

inline std::vector<int> random_signs(int n, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<int> s(static_cast<std::size_t>(n));
  for (auto& x : s) x = coin(rng) ? 1 : -1;
  return s;
}

/// Rank-k Hermitian operator with random nonzero spectrum in [0.5, 2] up to sign.
inline HermitianOperator random_rank_k(int d, int k, Rng& rng) {
  const ComplexMatrix u = haar_unitary(d, rng);
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  std::bernoulli_distribution coin(0.5);
  RealVector lam = RealVector::Zero(d);
  for (int i = 0; i < k; ++i) lam(i) = (coin(rng) ? 1.0 : -1.0) * mag(rng);
  return HermitianOperator(u * lam.cast<Complex>().asDiagonal() * u.adjoint());
}

// One-line dump of the failing parts of a report, for assertion messages.
inline std::string describe(const CheckReport& r) {
  std::ostringstream os;
  os << r.check << (r.pass ? " pass" : " FAIL");
  for (const auto& [k, v] : r.verdicts)
    if (!v) os << " !" << k;
  for (const auto& [k, v] : r.residuals) os << " " << k << "=" << v;
  for (const auto& n : r.notes) os << " [" << n << "]";
  return os.str();
}

}  // namespace sicforge::testing

#endif  // SICFORGE_TESTS_FIXTURES_HPP
