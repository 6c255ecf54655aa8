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

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "fixtures.hpp"
#include "sicforge/group.hpp"
#include "sicforge/jordan.hpp"

namespace sicforge {
namespace {

using testing::describe;
using testing::generic_basis;
using testing::random_signs;
using testing::solver_sic;

// Oracle: expand {L_j, L_k} by a least-squares solve on vectorized operators.
ComplexMatrix anticommutator_coefficients(const OperatorBasis& basis, int j) {
  const int d = basis.dim(), n = basis.size();
  ComplexMatrix v(d * d, n);
  for (int l = 0; l < n; ++l) v.col(l) = Eigen::Map<const ComplexVector>(basis[l].matrix().data(), d * d);
  ComplexMatrix out(n, n);
  const auto qr = v.colPivHouseholderQr();
  for (int k = 0; k < n; ++k) {
    const ComplexMatrix c = basis[j].matrix() * basis[k].matrix() + basis[k].matrix() * basis[j].matrix();
    out.row(k) = qr.solve(ComplexVector(Eigen::Map<const ComplexVector>(c.data(), d * d))).transpose();
  }
  return out;
}

// e c (Pi_j - a) with per-element signs e_j.
OperatorBasis signed_jordan_basis(const SicEnsemble& sic, int eps, const std::vector<int>& signs, double c,
                                  double a) {
  std::vector<HermitianOperator> ops;
  for (int j = 0; j < sic.size(); ++j) ops.push_back((eps * signs[j] * c) * sic[j].shifted(-a));
  return OperatorBasis(std::move(ops));
}

TEST(JordanStructure, MatchesLeastSquaresOracle) {
  Rng rng = derive_rng(81, 0);
  for (int d = 2; d <= 4; ++d) {
    const OperatorBasis basis = generic_basis(d, rng);
    const JordanStructure s = jordan_structure(basis);
    EXPECT_LT(s.max_imag_part, 1e-9);
    EXPECT_LT(s.symmetry_error, 1e-9);
    for (int j = 0; j < basis.size(); ++j) {
      EXPECT_LT(max_abs(s.tensor.matrices[static_cast<std::size_t>(j)] - anticommutator_coefficients(basis, j)), 1e-8);
      EXPECT_LT(max_abs(jordan_matrix(basis[j], basis) - s.matrix(j)), 1e-9);
    }
  }
}

TEST(JordanSpectrum, PairwiseSums) {
  ComplexMatrix a = ComplexMatrix::Zero(3, 3);
  a(0, 0) = 2.0;
  a(1, 1) = -1.0;
  const auto spec = jordan_spectrum(HermitianOperator(a));
  const std::vector<double> expected{-2, -1, -1, 0, 1, 1, 2, 2, 4};
  ASSERT_EQ(spec.size(), expected.size());
  for (std::size_t i = 0; i < spec.size(); ++i) EXPECT_NEAR(spec[i], expected[i], 1e-12);
}

TEST(JordanSpectrum, ShiftedProjectorHasRank2dMinus1) {
  for (int d = 2; d <= 6; ++d) {
    const double a = jordan_shift(d, 1);
    const auto spec = jordan_spectrum(solver_sic(d)[0].shifted(-a));
    const auto at_shift = std::count_if(spec.begin(), spec.end(), [a](double x) { return std::abs(x + 2 * a) < 1e-9; });
    EXPECT_EQ(at_shift, (d - 1) * (d - 1)) << d;
    EXPECT_EQ(static_cast<long>(spec.size()) - at_shift, 2 * d - 1) << d;
  }
}

TEST(JordanDecomposition, ReconstructsForRandomOperators) {
  Rng rng = derive_rng(82, 0);
  for (int d = 2; d <= 4; ++d) {
    const auto basis = random_orthonormal_hermitian_basis(d, rng);
    ComplexMatrix m = ComplexMatrix::Random(d, d);
    const HermitianOperator a(ComplexMatrix((m + m.adjoint()) / 2.0));
    const auto dec = jordan_2s_h_ht_decompose(a, basis);
    EXPECT_LT(dec.residual, 1e-12);
    EXPECT_LT(dec.orthogonality, 1e-12);
    EXPECT_LT(dec.spectrum_error, 1e-12);
    EXPECT_LT(max_abs(dec.c - jordan_matrix(a, basis)), 1e-12);
  }
}

TEST(JordanDecomposition, ProjectorGivesProjectorChannels) {
  Rng rng = derive_rng(83, 0);
  for (int d = 2; d <= 5; ++d) {
    const auto basis = random_orthonormal_hermitian_basis(d, rng);
    const auto dec = jordan_2s_h_ht_decompose(solver_sic(d)[1], basis);
    EXPECT_TRUE(dec.s_rank1_projector) << d;
    EXPECT_TRUE(dec.h_projector_rank_d_minus_1) << d;
  }
}

TEST(JordanDecomposition, ScaledOrthonormalBasisAccepted) {
  Rng rng = derive_rng(84, 0);
  const auto basis = random_orthonormal_hermitian_basis(3, rng);
  std::vector<HermitianOperator> scaled;
  for (const auto& op : basis.operators()) scaled.push_back(3.0 * op);
  const auto dec = jordan_2s_h_ht_decompose(solver_sic(3)[0], OperatorBasis(scaled));
  EXPECT_TRUE(dec.s_rank1_projector);
  EXPECT_LT(dec.residual, 1e-12);
  EXPECT_THROW(jordan_2s_h_ht_decompose(solver_sic(3)[0], generic_basis(3, rng)), PreconditionError);
}

TEST(JordanShift, Values) {
  EXPECT_NEAR(jordan_shift(2, 1), 0.211325, 1e-6);
  EXPECT_NEAR(jordan_shift(2, -1), (3.0 + std::sqrt(3.0)) / 6.0, 1e-15);
  // a solves d a^2 - 2a + 1/(d+1) = 0, so the shifted projectors are
  // orthogonal with tr((Pi_j - a)^2) = d/(d+1).
  for (int d = 2; d <= 6; ++d) {
    for (int e : {1, -1}) {
      const auto basis = build_jordan_sic_basis(solver_sic(d), e);
      const auto ell = basis.orthonormal_scale();
      ASSERT_TRUE(ell.has_value()) << d;
      EXPECT_NEAR(*ell * *ell, d / (d + 1.0), 1e-10);
    }
  }
}

TEST(JordanSicCriterion, RecoversSignedScaledBases) {
  for (int d = 3; d <= 5; ++d) {
    Rng rng = derive_rng(85, static_cast<std::uint64_t>(d));
    const auto sic = solver_sic(d);
    for (int eps : {1, -1}) {
      const auto signs = random_signs(d * d, rng);
      const double c = 0.8;
      const auto res = check_jordan_sic_criterion(signed_jordan_basis(sic, eps, signs, c, jordan_shift(d, eps)));
      ASSERT_TRUE(res.report.pass) << describe(res.report);
      EXPECT_EQ(res.epsilon, eps);
      EXPECT_NEAR(res.c, c, 1e-9);
      EXPECT_NEAR(res.a, jordan_shift(d, eps), 1e-9);
      for (int j = 0; j < d * d; ++j) EXPECT_EQ(res.signs[j], signs[j]) << j;
    }
  }
}

TEST(JordanSicCriterion, RejectsOtherShiftsAndRandomBases) {
  Rng rng = derive_rng(86, 0);
  for (int d = 3; d <= 4; ++d) {
    const auto sic = solver_sic(d);
    const std::vector<int> ones(static_cast<std::size_t>(d * d), 1);
    EXPECT_FALSE(check_jordan_sic_criterion(signed_jordan_basis(sic, 1, ones, 1.0, 0.1)).report.pass) << d;
    EXPECT_FALSE(check_jordan_sic_criterion(random_orthonormal_hermitian_basis(d, rng)).report.pass) << d;
    EXPECT_FALSE(check_jordan_sic_criterion(generic_basis(d, rng)).report.pass) << d;
  }
  EXPECT_THROW(check_jordan_sic_criterion(build_jordan_sic_basis(solver_sic(2))), PreconditionError);
}

TEST(JordanSicForm, AcceptsUnitScaleBases) {
  for (int d = 2; d <= 5; ++d) {
    for (int eps : {1, -1}) {
      const auto r = check_jordan_sic_form(build_jordan_sic_basis(solver_sic(d), eps));
      EXPECT_TRUE(r.pass) << d << " " << describe(r);
      EXPECT_EQ(r.values.at("epsilon"), eps);
      EXPECT_NEAR(r.values.at("a"), jordan_shift(d, eps), 1e-9);
    }
  }
}

TEST(JordanSicForm, ScaleMustBeOne) {
  for (int d = 2; d <= 4; ++d) {
    const auto r = check_jordan_sic_form(build_jordan_sic_basis(solver_sic(d), 1, 2.0));
    EXPECT_FALSE(r.pass);
    ASSERT_FALSE(r.notes.empty());
    EXPECT_EQ(r.notes.front().rfind("scale must be 1", 0), 0u) << r.notes.front();
  }
}

TEST(JordanSicForm, RejectsNonSicBases) {
  Rng rng = derive_rng(87, 0);
  for (int d = 2; d <= 4; ++d) {
    EXPECT_FALSE(check_jordan_sic_form(random_orthonormal_hermitian_basis(d, rng)).pass);
    const auto g = check_jordan_sic_form(generic_basis(d, rng));
    EXPECT_FALSE(g.pass);
    EXPECT_FALSE(g.verdict("orthonormal_up_to_scale"));
  }
}

}  // namespace
}  // namespace sicforge
