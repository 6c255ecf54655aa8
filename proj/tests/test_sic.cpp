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

#include <chrono>
#include <vector>

#include "fixtures.hpp"
#include "sicforge/sic.hpp"

namespace sicforge {
namespace {

using testing::solver_fiducial;
using testing::solver_sic;

// Independent construction of X^p Z^q with tau^{pq}: dense matrices, no
// index arithmetic shared with apply_displacement.
ComplexMatrix displacement_oracle(int d, int p, int q) {
  const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / d);
  ComplexMatrix x = ComplexMatrix::Zero(d, d), z = ComplexMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    x((k + 1) % d, k) = 1.0;
    z(k, k) = std::pow(omega, k);
  }
  ComplexMatrix xp = ComplexMatrix::Identity(d, d), zq = ComplexMatrix::Identity(d, d);
  for (int i = 0; i < p; ++i) xp = x * xp;
  for (int i = 0; i < q; ++i) zq = z * zq;
  const Complex tau = -std::polar(1.0, std::numbers::pi / d);
  return std::pow(tau, p * q) * xp * zq;
}

TEST(Displacement, MatchesDenseOracle) {
  Rng rng = derive_rng(21, 0);
  for (int d = 2; d <= 5; ++d) {
    const ComplexVector psi = random_unit_vector(d, rng);
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q)
        EXPECT_LT(max_abs(apply_displacement(p, q, psi) - displacement_oracle(d, p, q) * psi), 1e-12)
            << "d=" << d << " p=" << p << " q=" << q;
  }
}

TEST(Displacement, MatricesAreUnitaryAndStartWithIdentity) {
  for (int d = 2; d <= 5; ++d) {
    const auto ds = wh_displacements(d);
    ASSERT_EQ(static_cast<int>(ds.size()), d * d);
    EXPECT_LT(max_abs(ds.front() - ComplexMatrix::Identity(d, d)), 1e-15);
    for (const auto& m : ds) EXPECT_LT(max_abs(m * m.adjoint() - ComplexMatrix::Identity(d, d)), 1e-12);
  }
}

TEST(Displacement, TraceOrthogonality) {
  // tr(D_a^dagger D_b) = d delta_ab
  const int d = 4;
  const auto ds = wh_displacements(d);
  for (std::size_t a = 0; a < ds.size(); ++a)
    for (std::size_t b = 0; b < ds.size(); ++b)
      EXPECT_NEAR(std::abs((ds[a].adjoint() * ds[b]).trace()), a == b ? d : 0.0, 1e-12);
}

TEST(Fiducial, NormalizesAndFixesPhase) {
  ComplexVector v(3);
  v << Complex(0, 2.0), 1.0, 0.5;
  const Fiducial f(v);
  EXPECT_NEAR(f.vector().norm(), 1.0, 1e-15);
  EXPECT_GT(f.vector()(0).real(), 0.0);
  EXPECT_EQ(f.vector()(0).imag(), 0.0);
  EXPECT_THROW(Fiducial(ComplexVector::Zero(3)), PreconditionError);
  EXPECT_THROW(Fiducial(ComplexVector::Ones(1)), DimensionError);
}

TEST(AnalyticFiducial, KnownSolutionsCertify) {
  for (int d : {2, 3}) {
    const auto f = analytic_fiducial(d);
    ASSERT_TRUE(f.has_value());
    const auto r = verify_sic(wh_orbit(*f));
    EXPECT_TRUE(r.pass) << d;
    EXPECT_LT(r.residuals.at("max_fidelity_error"), 1e-14);
  }
  EXPECT_FALSE(analytic_fiducial(4).has_value());
}

TEST(VerifySic, RejectsWrongCountAndNonProjectors) {
  auto orbit = wh_orbit(*analytic_fiducial(2));
  std::vector<HermitianOperator> short_list(orbit.begin(), orbit.begin() + 3);
  EXPECT_THROW(verify_sic(short_list), DimensionError);
  orbit[1] = 2.0 * orbit[1];
  EXPECT_THROW(verify_sic(orbit), PreconditionError);
}

TEST(VerifySic, FailsForRandomStates) {
  Rng rng = derive_rng(22, 0);
  std::vector<HermitianOperator> ops;
  for (int j = 0; j < 9; ++j) ops.push_back(HermitianOperator::projector(random_unit_vector(3, rng)));
  const auto r = verify_sic(ops);
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.residuals.at("max_fidelity_error"), 1e-3);
}

TEST(SicEnsemble, CertifyThrowsOnNonSic) {
  Rng rng = derive_rng(23, 0);
  EXPECT_THROW(SicEnsemble::from_fiducial(Fiducial(random_unit_vector(3, rng))), PreconditionError);
}

TEST(Solver, ConvergesForSmallDimensions) {
  for (int d = 2; d <= 7; ++d) {
    const auto start = std::chrono::steady_clock::now();
    SolverConfig cfg;
    const auto res = minimize_frame_potential(d, cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_TRUE(res.success) << d;
    EXPECT_LT(res.gap, 1e-10) << d;
    EXPECT_LT(max_fidelity_error(wh_orbit(res.fiducial)), 1e-9) << d;
    EXPECT_LT(secs, 60.0) << d;
    EXPECT_EQ(res.fiducial.provenance().kind, Provenance::Kind::Solver);
  }
}

TEST(Solver, DeterministicAcrossRunsAndThreadCounts) {
  SolverConfig a;
  a.seed = 42;
  a.threads = 1;
  a.restarts = 8;
  a.stop_on_success = false;
  SolverConfig b = a;
  b.threads = 3;
  const auto ra = minimize_frame_potential(4, a);
  const auto rb = minimize_frame_potential(4, b);
  const auto rc = minimize_frame_potential(4, a);
  EXPECT_EQ(ra.fiducial.vector(), rb.fiducial.vector());
  EXPECT_EQ(ra.fiducial.vector(), rc.fiducial.vector());
  EXPECT_EQ(ra.best_restart, rb.best_restart);
  EXPECT_EQ(ra.restarts.size(), 8u);
}

TEST(Solver, ForcedNonconvergenceReportsGap) {
  SolverConfig cfg;
  cfg.max_iters = 1;
  cfg.restarts = 1;
  const auto res = minimize_frame_potential(3, cfg);
  EXPECT_FALSE(res.success);
  EXPECT_GT(res.gap, 1e-6);
  EXPECT_NEAR(res.frame_potential - 2.0 * 3 / 4.0, res.gap, 1e-12);
}

TEST(Solver, InitialVectorIsPolished) {
  // Start from a slightly rotated known fiducial; restart 0 must recover a SIC.
  ComplexVector v = analytic_fiducial(3)->vector();
  v(0) += 1e-3;
  SolverConfig cfg;
  cfg.initial = v;
  cfg.restarts = 1;
  const auto res = minimize_frame_potential(3, cfg);
  EXPECT_TRUE(res.success);
}

TEST(Solver, UnconstrainedModeFindsTwoDimensionalSic) {
  SolverConfig cfg;
  cfg.unconstrained = true;
  cfg.restarts = 8;
  const auto res = minimize_frame_potential(2, cfg);
  ASSERT_EQ(res.states.size(), 4u);
  std::vector<HermitianOperator> ops;
  for (const auto& s : res.states) ops.push_back(HermitianOperator::projector(s));
  EXPECT_TRUE(res.success);
  EXPECT_TRUE(verify_sic(ops, 1e-6).pass);
}

TEST(Solver, RejectsBadConfig) {
  EXPECT_THROW(minimize_frame_potential(1), DimensionError);
  SolverConfig cfg;
  cfg.restarts = 0;
  EXPECT_THROW(minimize_frame_potential(3, cfg), PreconditionError);
  cfg.restarts = 1;
  cfg.initial = ComplexVector::Ones(2);
  EXPECT_THROW(minimize_frame_potential(3, cfg), DimensionError);
}

TEST(FramePotential, GapMatchesDirectEvaluation) {
  Rng rng = derive_rng(24, 0);
  for (int d = 2; d <= 6; ++d) {
    const ComplexVector psi = random_unit_vector(d, rng);
    EXPECT_NEAR(wh_frame_potential_gap(psi), wh_frame_potential(psi) - 2.0 * d / (d + 1.0), 1e-12);
    // Covariant shortcut versus the full d^2 x d^2 double sum.
    std::vector<ComplexVector> states;
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) states.push_back(apply_displacement(p, q, psi));
    EXPECT_NEAR(frame_potential(WeightedStateSet::uniform(states), 2), wh_frame_potential(psi), 1e-12);
  }
}

TEST(FramePotential, BoundHoldsOnRandomWeightedSets) {
  for (int trial = 0; trial < 60; ++trial) {
    Rng rng = derive_rng(25, static_cast<std::uint64_t>(trial));
    const int d = 2 + trial % 4;
    const int n = d * d + trial % 5;
    std::uniform_real_distribution<double> u(0.1, 1.0);
    std::vector<ComplexVector> states;
    std::vector<double> w;
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
      states.push_back(random_unit_vector(d, rng));
      w.push_back(u(rng));
      total += w.back();
    }
    for (auto& x : w) x *= d / total;
    const WeightedStateSet s(states, w);
    for (int t = 1; t <= 3; ++t) EXPECT_GE(frame_potential(s, t), frame_potential_bound(d, t) - 1e-12);
  }
}

TEST(FramePotential, SicAttainsBoundForTwoDesigns) {
  for (int d = 2; d <= 5; ++d) {
    std::vector<ComplexVector> states;
    const ComplexVector psi = solver_fiducial(d).vector();
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) states.push_back(apply_displacement(p, q, psi));
    EXPECT_NEAR(frame_potential(WeightedStateSet::uniform(states), 2), frame_potential_bound(d, 2), 1e-12);
    EXPECT_NEAR(frame_potential_bound(d, 2), 2.0 * d / (d + 1.0), 1e-15);
  }
}

TEST(WeightedStateSet, ValidatesWeights) {
  std::vector<ComplexVector> s(2, ComplexVector::Ones(2));
  EXPECT_THROW(WeightedStateSet(s, {1.0, 0.5}), PreconditionError);
  EXPECT_THROW(WeightedStateSet(s, {2.5, -0.5}), PreconditionError);
  EXPECT_THROW(WeightedStateSet(s, {2.0}), DimensionError);
  EXPECT_NO_THROW(WeightedStateSet(s, {1.0, 1.0}));
}

TEST(Designs, BoundsAndWelch) {
  EXPECT_EQ(t_design_lower_bound(3, 2), 9u);
  EXPECT_EQ(t_design_lower_bound(2, 3), 6u);
  EXPECT_EQ(t_design_lower_bound(4, 1), 4u);
  EXPECT_EQ(binomial(8, 4), 70u);
  // d^2 lines at the SIC overlap saturate the Welch bound.
  for (int d = 2; d <= 6; ++d) EXPECT_NEAR(welch_bound(d, 1.0 / (d + 1.0)), d * d, 1e-9);
  EXPECT_THROW(welch_bound(3, 1.0 / 3.0), PreconditionError);
  EXPECT_THROW(welch_bound(3, -0.1), PreconditionError);
}

TEST(Designs, SicIsMinimalTwoDesign) {
  for (int d = 2; d <= 5; ++d) {
    std::vector<ComplexVector> states;
    const ComplexVector psi = solver_fiducial(d).vector();
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) states.push_back(apply_displacement(p, q, psi));
    const auto r = check_2design(WeightedStateSet::uniform(states));
    EXPECT_TRUE(r.pass) << d;
    EXPECT_TRUE(r.verdict("sic"));
    EXPECT_TRUE(r.verdict("minimal"));
  }
}

TEST(Designs, RandomStatesAreNotTwoDesigns) {
  Rng rng = derive_rng(26, 0);
  std::vector<ComplexVector> states;
  for (int j = 0; j < 16; ++j) states.push_back(random_unit_vector(4, rng));
  EXPECT_FALSE(check_2design(WeightedStateSet::uniform(states)).pass);
}

TEST(TightIc, SicPovmIsEfficient) {
  for (int d = 2; d <= 5; ++d) {
    const SicEnsemble sic = solver_sic(d);
    std::vector<HermitianOperator> povm;
    for (const auto& p : sic.projectors()) povm.push_back((1.0 / d) * p);
    const auto r = check_tight_ic(povm);
    EXPECT_TRUE(r.pass) << d;
    EXPECT_TRUE(r.verdict("efficient")) << d;
    ASSERT_TRUE(r.constants);
    EXPECT_NEAR(r.constants->alpha, d / (d + 1.0), 1e-10);
  }
}

TEST(TightIc, PauliEigenbasesAreEfficient) {
  // Any rank-1 2-design POVM has the SIC frame after normalization.
  std::vector<HermitianOperator> povm;
  const double s = 1.0 / std::sqrt(2.0);
  for (auto [a, b] : std::vector<std::pair<Complex, Complex>>{{1, 0}, {0, 1}, {s, s}, {s, -s}, {s, Complex(0, s)},
                                                              {s, Complex(0, -s)}}) {
    ComplexVector v(2);
    v << a, b;
    povm.push_back((1.0 / 3.0) * HermitianOperator::projector(v));
  }
  const auto r = check_tight_ic(povm);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.verdict("efficient"));
}

TEST(TightIc, NoisySicIsTightButNotEfficient) {
  const int d = 3;
  const SicEnsemble sic = solver_sic(d);
  std::vector<HermitianOperator> povm;
  for (const auto& p : sic.projectors()) povm.push_back((0.5 / d) * p.shifted(1.0 / d));
  const auto r = check_tight_ic(povm);
  EXPECT_TRUE(r.pass);
  EXPECT_FALSE(r.verdict("efficient"));
  EXPECT_GT(r.residuals.at("efficiency_gap"), 0.1);
}

TEST(TightIc, RejectsInvalidPovms) {
  std::vector<HermitianOperator> not_complete{HermitianOperator::identity(2)};
  EXPECT_NO_THROW(check_tight_ic(not_complete));
  std::vector<HermitianOperator> half{0.5 * HermitianOperator::identity(2)};
  EXPECT_THROW(check_tight_ic(half), PreconditionError);
  ComplexMatrix neg = ComplexMatrix::Identity(2, 2);
  neg(1, 1) = -0.5;
  std::vector<HermitianOperator> bad{HermitianOperator(neg), HermitianOperator::identity(2) - HermitianOperator(neg)};
  EXPECT_THROW(check_tight_ic(bad), PreconditionError);
}

}  // namespace
}  // namespace sicforge
