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

#ifndef SICFORGE_LIE_HPP
#define SICFORGE_LIE_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sicforge/error.hpp"
#include "sicforge/hermitian.hpp"
#include "sicforge/report.hpp"
#include "sicforge/sic.hpp"
#include "sicforge/simplex.hpp"
#include "sicforge/structure.hpp"

namespace sicforge {

inline constexpr double kLieTol = 1e-9;

/// Lie structure constants in the physicist's convention:
/// [L_j, L_k] = sum_l C_jkl L_l with Hermitian L_j and pure-imaginary C.
struct LieStructure {
  StructureTensor tensor;
  /// max |Re C_jkl| (zero up to rounding).
  double max_real_part = 0.0;
  /// max |C_jkl + C_kjl|
  double antisymmetry_error = 0.0;

  int size() const { return tensor.size(); }
  const ComplexMatrix& matrix(int j) const { return tensor.matrices[static_cast<std::size_t>(j)]; }
};

/// Throws PreconditionError if the basis does not span.
inline LieStructure lie_structure(const OperatorBasis& basis) {
  LieStructure out;
  out.tensor = detail::expand_products(
      basis, [](const ComplexMatrix& a, const ComplexMatrix& b) { return ComplexMatrix(a * b - b * a); },
      "lie_structure");
  const int n = out.size();
  for (int j = 0; j < n; ++j) {
    out.max_real_part = std::max(out.max_real_part, out.matrix(j).real().cwiseAbs().maxCoeff());
    for (int k = 0; k < n; ++k)
      out.antisymmetry_error =
          std::max(out.antisymmetry_error, max_abs(out.matrix(j).row(k) + out.matrix(k).row(j)));
  }
  return out;
}

/// Largest Jacobi-identity violation sum_m (C_jkm C_mlp + C_klm C_mjp + C_ljm C_mkp).
inline double jacobi_residual(const LieStructure& s) {
  const int n = s.size();
  double worst = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        // coefficient vector of [[L_j,L_k],L_l] etc.
        ComplexVector acc = ComplexVector::Zero(n);
        for (int m = 0; m < n; ++m) {
          acc += s.tensor(j, k, m) * s.matrix(m).row(l).transpose();
          acc += s.tensor(k, l, m) * s.matrix(m).row(j).transpose();
          acc += s.tensor(l, j, m) * s.matrix(m).row(k).transpose();
        }
        worst = std::max(worst, acc.cwiseAbs().maxCoeff());
      }
  return worst;
}

/// Split of a Hermitian structure matrix C_j = H_j - H_j^T with H_j >= 0.
struct HminusHTDecomposition {
  std::vector<ComplexMatrix> h;
  /// max_j ||N_j - H_j^T|| where -N_j is the negative spectral part of C_j.
  double transpose_residual = 0.0;
  double reconstruction_residual = 0.0;
  /// max_j ||H_j H_j^T||
  double orthogonality = 0.0;
  /// H_j is a rank-(d-1) projector for every j.
  bool projectors = false;
  /// H_j is a positive multiple of a rank-(d-1) projector for every j.
  bool scaled_projectors = false;
};

inline HminusHTDecomposition h_minus_ht_decompose(const LieStructure& s, double tol = kLieTol) {
  HminusHTDecomposition out;
  const int d = s.tensor.dim;
  const double scale = std::max(detail::structure_scale(s.tensor), 1e-300);
  bool proj = true, scaled = true;
  for (int j = 0; j < s.size(); ++j) {
    const ComplexMatrix c = s.matrix(j);
    const ComplexMatrix herm = (c + c.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm);
    const RealVector& lam = es.eigenvalues();
    const ComplexMatrix& vec = es.eigenvectors();
    ComplexMatrix h = ComplexMatrix::Zero(c.rows(), c.cols());
    ComplexMatrix neg = ComplexMatrix::Zero(c.rows(), c.cols());
    std::vector<double> positive;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      const ComplexMatrix p = vec.col(i) * vec.col(i).adjoint();
      if (lam(i) > 0.0) h += lam(i) * p; else neg -= lam(i) * p;
      if (lam(i) > tol * scale) positive.push_back(lam(i));
    }
    const ComplexMatrix ht = h.transpose();
    out.transpose_residual = std::max(out.transpose_residual, max_abs(neg - ht) / scale);
    out.reconstruction_residual = std::max(out.reconstruction_residual, max_abs(c - (h - ht)) / scale);
    out.orthogonality = std::max(out.orthogonality, max_abs(h * ht) / (scale * scale));
    const bool rank_ok = static_cast<int>(positive.size()) == d - 1;
    const bool flat = rank_ok && detail::spread(positive) <= 1e-8 * scale;
    scaled = scaled && flat;
    proj = proj && flat && std::abs(positive.front() - 1.0) <= 1e-8;
    out.h.push_back(std::move(h));
  }
  out.projectors = proj;
  out.scaled_projectors = scaled;
  return out;
}

/// Checks the four equivalent conditions: (1) Hermitian structure matrices,
/// (2) completely antisymmetric constants, (3) C_j = H_j - H_j^T with H_j >= 0
/// orthogonal to H_j^T, (4) the trichotomy identities.
inline CheckReport check_antisymmetry_equivalences(const OperatorBasis& basis, double tol = kLieTol) {
  const LieStructure s = lie_structure(basis);
  const int n = s.size();
  const double scale = std::max(detail::structure_scale(s.tensor), 1e-300);
  CheckReport r("check_antisymmetry_equivalences",
                "C_j Hermitian  <=>  C_jkl completely antisymmetric  <=>  C_j = H_j - H_j^T  <=>  tr(L_j L_k) = "
                "alpha delta_jk + gamma tr L_j tr L_k");
  double herm = 0.0, anti = 0.0;
  for (int j = 0; j < n; ++j) {
    herm = std::max(herm, max_abs(s.matrix(j) - s.matrix(j).adjoint()));
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        const Complex c = s.tensor(j, k, l);
        anti = std::max({anti, std::abs(c + s.tensor(j, l, k)), std::abs(c + s.tensor(l, k, j))});
      }
  }
  herm /= scale;
  anti /= scale;
  const HminusHTDecomposition h = h_minus_ht_decompose(s, tol);
  const double hres = std::max({h.transpose_residual, h.reconstruction_residual, h.orthogonality});
  const CheckReport tri = check_trichotomy(basis, tol);

  r.residuals["hermitian"] = herm;
  r.residuals["complete_antisymmetry"] = anti;
  r.residuals["h_minus_ht"] = hres;
  r.residuals["trichotomy"] = tri.residuals.at("frame_form");
  r.residuals["reconstruction"] = s.tensor.reconstruction_residual;
  for (const char* k : {"hermitian", "complete_antisymmetry", "h_minus_ht", "trichotomy"}) r.tolerances[k] = tol;
  r.verdicts["hermitian"] = herm <= tol;
  r.verdicts["complete_antisymmetry"] = anti <= tol;
  r.verdicts["h_minus_ht"] = hres <= tol;
  r.verdicts["trichotomy"] = tri.pass;
  r.verdicts["h_projectors"] = h.projectors;
  r.constants = tri.constants;
  const bool first = r.verdict("hermitian");
  const bool agree = first == r.verdict("complete_antisymmetry") && first == r.verdict("h_minus_ht") &&
                     first == r.verdict("trichotomy");
  r.verdicts["agree"] = agree;
  if (!agree) r.note("the four equivalent conditions disagree");
  r.pass = agree;
  return r;
}

/// Spectrum {lambda_j - lambda_k : j, k} of ad_A, ascending, cross-checked
/// against the matrix of ad_A in the Gell-Mann basis.
inline std::vector<double> ad_spectrum(const HermitianOperator& a) {
  const int d = a.dim();
  const auto lam = hermitian_eigenvalues(a.matrix());
  std::vector<double> out;
  for (double x : lam)
    for (double y : lam) out.push_back(x - y);
  std::sort(out.begin(), out.end());

  const OperatorBasis gm = gell_mann_basis(d);
  const int n = d * d;
  ComplexMatrix ad(n, n);
  for (int k = 0; k < n; ++k) {
    const ComplexMatrix img = a.matrix() * gm[k].matrix() - gm[k].matrix() * a.matrix();
    for (int l = 0; l < n; ++l) ad(k, l) = gm[l].matrix().cwiseProduct(img.transpose()).sum();
  }
  const auto check = hermitian_eigenvalues((ad + ad.adjoint()) / 2.0);
  double err = 0.0;
  for (int i = 0; i < n; ++i) err = std::max(err, std::abs(check[i] - out[i]));
  if (err > 1e-9 * std::max(1.0, max_abs(a.matrix()))) {
    throw Error("ad_spectrum: spectrum of ad_A disagrees with pairwise differences");
  }
  return out;
}

struct LieSicResult {
  CheckReport report;
  std::optional<Rank1PlusIdentityDecomposition> decomposition;
  /// Recovered parameters of L_j = e_j ell (Pi_j + eta).
  std::vector<int> signs;
  double ell = 0.0;
  double eta = 0.0;
};

/// d >= 3: a basis is L_j = e_j ell (Pi_j + eta) for a SIC {Pi_j} exactly when
/// every structure matrix is Hermitian of rank 2(d-1). Throws
/// PreconditionError for d = 2, where the criterion does not apply.
inline LieSicResult check_lie_sic_criterion(const OperatorBasis& basis, double tol = kLieTol,
                                            double rank_tol = kDefaultRankTol) {
  const int d = basis.dim();
  if (d == 2) {
    throw PreconditionError(
        "check_lie_sic_criterion: the Hermitian rank-2(d-1) criterion characterizes SICs only for d >= 3; in d = 2 "
        "it needs the additional Q - Q^T structure, which is not implemented");
  }
  LieSicResult out;
  CheckReport& r = out.report;
  r = CheckReport("check_lie_sic_criterion",
                  "structure matrices Hermitian of rank 2(d-1)  <=>  L_j = e_j ell (Pi_j + eta), {Pi_j} a SIC");
  const LieStructure s = lie_structure(basis);
  const double scale = std::max(detail::structure_scale(s.tensor), 1e-300);
  const int target = 2 * (d - 1);
  double herm = 0.0, min_gap_ratio = INFINITY;
  bool ranks = true, unstable = false;
  int worst_rank = target;
  for (int j = 0; j < s.size(); ++j) {
    const ComplexMatrix& c = s.matrix(j);
    herm = std::max(herm, max_abs(c - c.adjoint()) / scale);
    const Eigen::JacobiSVD<ComplexMatrix> svd(c);
    const RealVector sv = svd.singularValues();  // descending
    const double top = sv(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > rank_tol * top) ++rank;
    if (rank != target) {
      ranks = false;
      worst_rank = rank;
    }
    // Stability: both neighbours of the cut must sit clearly on their side.
    const double last_kept = sv(target - 1) / top;
    const double first_dropped = target < sv.size() ? sv(target) / top : 0.0;
    min_gap_ratio = std::min(min_gap_ratio, last_kept / std::max(first_dropped, 1e-300));
    if ((last_kept > rank_tol / 10 && last_kept < 10 * rank_tol) ||
        (first_dropped > rank_tol / 10 && first_dropped < 10 * rank_tol)) {
      unstable = true;
    }
  }
  r.residuals["hermitian"] = herm;
  r.tolerances["hermitian"] = tol;
  r.values["target_rank"] = target;
  r.values["rank_gap_ratio"] = min_gap_ratio;
  r.tolerances["rank"] = rank_tol;
  r.verdicts["hermitian"] = herm <= tol;
  r.verdicts["rank"] = ranks;
  r.verdicts["rank_stable"] = !unstable;
  if (!ranks) r.note("a structure matrix has rank " + std::to_string(worst_rank) + ", expected " + std::to_string(target));
  if (unstable) r.note("rank verdict unstable: a singular value lies within 10x of the rank tolerance");
  r.pass = r.verdict("hermitian") && ranks && !unstable;
  if (!r.pass) return out;

  try {
    const DesignConstants c = fit_alpha_beta(basis);
    auto dec = decompose_rank1_plus_identity(basis, c, tol);
    const int n = basis.size();
    std::vector<double> ells(n), etas(n);
    for (int j = 0; j < n; ++j) {
      ells[j] = std::abs(dec.a[j]);
      etas[j] = dec.b[j] / dec.a[j];
      out.signs.push_back(dec.epsilon_j[j]);
    }
    out.ell = ells[0];
    out.eta = etas[0];
    r.values["ell"] = out.ell;
    r.values["eta"] = out.eta;
    r.residuals["ell_spread"] = detail::spread(ells) / out.ell;
    r.residuals["eta_spread"] = detail::spread(etas);
    r.residuals["max_fidelity_error"] = dec.report.residuals.at("max_fidelity_error");
    r.tolerances["ell_spread"] = r.tolerances["eta_spread"] = 10 * std::max(tol, kShapeTol);
    r.verdicts["sic_recovered"] = true;
    r.constants = c.frame();
    r.pass = r.residuals["ell_spread"] <= 10 * std::max(tol, kShapeTol) &&
             r.residuals["eta_spread"] <= 10 * std::max(tol, kShapeTol);
    out.decomposition = std::move(dec);
  } catch (const Error& e) {
    r.verdicts["sic_recovered"] = false;
    r.note(std::string("decomposition failed: ") + e.what());
    r.pass = false;
  }
  return out;
}

/// L_j = e_j ell (Pi_j + eta). Throws PreconditionError for ell = 0 or
/// eta = -1/d (the elements would be traceless and not a basis with I).
inline OperatorBasis build_lie_sic_basis(const SicEnsemble& sic, std::span<const int> signs, double ell, double eta) {
  const int d = sic.dim();
  if (static_cast<int>(signs.size()) != sic.size()) throw DimensionError("build_lie_sic_basis: one sign per element");
  if (ell == 0.0) throw PreconditionError("build_lie_sic_basis: ell must be non-zero");
  if (std::abs(eta + 1.0 / d) <= 1e-12) throw PreconditionError("build_lie_sic_basis: eta = -1/d is excluded");
  std::vector<HermitianOperator> ops;
  for (int j = 0; j < sic.size(); ++j) {
    if (signs[j] != 1 && signs[j] != -1) throw PreconditionError("build_lie_sic_basis: signs must be +1 or -1");
    ops.push_back((signs[j] * ell) * sic[j].shifted(eta));
  }
  return OperatorBasis(std::move(ops));
}

/// For bases with constant tr(L_j^2) (first form) or constant |tr L_j|
/// (second form): complete antisymmetry  <=>  {e_j L_j} is a regular simplex
/// (first form: and |tr L_j| is a non-zero constant unless the e_j L_j are
/// orthogonal). Here e_j = +1 when tr L_j >= 0, else -1.
inline CheckReport check_normalized_basis_theorems(const OperatorBasis& basis, double tol = kLieTol) {
  const int n = basis.size();
  const double scale = detail::norm_scale(basis.operators());
  const double ell = std::sqrt(scale);
  std::vector<double> q(n), at(n);
  std::vector<int> eps(n);
  for (int j = 0; j < n; ++j) {
    q[j] = basis[j].matrix().squaredNorm() / scale;
    const double t = basis[j].trace();
    at[j] = std::abs(t) / ell;
    eps[j] = t >= 0.0 ? 1 : -1;
  }
  const bool const_norm = detail::spread(q) <= tol;
  const bool const_trace = detail::spread(at) <= tol;
  if (!const_norm && !const_trace) {
    throw PreconditionError(
        "check_normalized_basis_theorems: neither tr(L_j^2) nor |tr L_j| is constant; the theorems do not apply");
  }
  CheckReport r("check_normalized_basis_theorems",
                "tr(L_j^2) or |tr L_j| constant: C_jkl completely antisymmetric  <=>  {e_j L_j} regular simplex");
  const CheckReport anti = check_antisymmetry_equivalences(basis, tol);
  const bool antisym = anti.verdict("complete_antisymmetry");

  const RealMatrix& m = basis.gram();
  std::vector<double> diag(n), off;
  double off_max = 0.0;
  for (int j = 0; j < n; ++j) {
    diag[j] = m(j, j) / scale;
    for (int k = j + 1; k < n; ++k) {
      off.push_back(eps[j] * eps[k] * m(j, k) / scale);
      off_max = std::max(off_max, std::abs(off.back()));
    }
  }
  const bool simplex = detail::spread(diag) <= tol && detail::spread(off) <= tol;
  const bool orthogonal = off_max <= tol;
  const bool nonzero_trace = const_trace && at[0] > 10 * tol;

  r.verdicts["constant_norm"] = const_norm;
  r.verdicts["constant_abs_trace"] = const_trace;
  r.verdicts["complete_antisymmetry"] = antisym;
  r.verdicts["signed_regular_simplex"] = simplex;
  r.verdicts["signed_orthogonal"] = orthogonal;
  r.residuals["complete_antisymmetry"] = anti.residuals.at("complete_antisymmetry");
  r.residuals["simplex_diagonal_spread"] = detail::spread(diag);
  r.residuals["simplex_offdiagonal_spread"] = detail::spread(off);
  bool pass = true;
  if (const_norm) {
    const bool side = simplex && (orthogonal || nonzero_trace);
    r.verdicts["norm_form_agrees"] = side == antisym;
    pass = pass && side == antisym;
  }
  if (const_trace) {
    r.verdicts["trace_form_agrees"] = simplex == antisym;
    pass = pass && simplex == antisym;
  }
  r.pass = pass;
  return r;
}

}  // namespace sicforge

#endif  // SICFORGE_LIE_HPP
