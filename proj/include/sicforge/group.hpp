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

#ifndef SICFORGE_GROUP_HPP
#define SICFORGE_GROUP_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sicforge/error.hpp"
#include "sicforge/hermitian.hpp"
#include "sicforge/random.hpp"
#include "sicforge/report.hpp"
#include "sicforge/sic.hpp"

namespace sicforge {

inline constexpr double kUnitaryTol = 1e-12;
inline constexpr double kOrthonormalTol = 1e-10;
inline constexpr double kStochasticTol = 1e-9;

// ---------------------------------------------------------------------------
// Haar sampling

/// Haar-random unitary: QR of a Ginibre matrix with the phases of R's
/// diagonal moved into Q.
inline ComplexMatrix haar_unitary(int d, Rng& rng) {
  Eigen::HouseholderQR<ComplexMatrix> qr(ginibre(d, d, rng));
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    const Complex rk = r(k, k);
    q.col(k) *= std::abs(rk) > 0.0 ? rk / std::abs(rk) : Complex(1.0);
  }
  return q;
}

/// Haar-random real orthogonal matrix (same construction over the reals).
inline RealMatrix haar_orthogonal(int n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  RealMatrix g(n, n);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = gauss(rng);
  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ();
  for (int k = 0; k < n; ++k)
    if (qr.matrixQR()(k, k) < 0.0) q.col(k) *= -1.0;
  return q;
}

/// Orthonormal Hermitian basis obtained by a Haar-random real rotation of
/// the Gell-Mann basis.
inline OperatorBasis random_orthonormal_hermitian_basis(int d, Rng& rng) {
  const OperatorBasis gm = gell_mann_basis(d);
  const RealMatrix o = haar_orthogonal(d * d, rng);
  std::vector<HermitianOperator> ops;
  for (int j = 0; j < d * d; ++j) {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < d * d; ++k) m += o(j, k) * gm[k].matrix();
    ops.emplace_back(m);
  }
  return OperatorBasis(std::move(ops));
}

// ---------------------------------------------------------------------------
// Adjoint representation

/// Real d^2 x d^2 matrix U^L_jk = tr(L_j U L_k U^dagger) (or, for an
/// antiunitary X -> U conj(X) U^dagger, tr(L_j U conj(L_k) U^dagger)).
struct AdjointMatrix {
  int dim = 0;
  RealMatrix matrix;
  ComplexMatrix source;
  bool antiunitary = false;
};

namespace detail {

inline void require_unitary(const ComplexMatrix& u, double tol, const char* who) {
  if (u.rows() != u.cols()) throw DimensionError(std::string(who) + ": U must be square");
  const double err = max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
  if (err > tol) throw PreconditionError(std::string(who) + ": U is not unitary (error " + std::to_string(err) + ")");
}

inline void require_orthonormal(const OperatorBasis& basis, const char* who) {
  if (!basis.is_orthonormal(kOrthonormalTol)) throw PreconditionError(std::string(who) + ": basis is not orthonormal");
}

inline AdjointMatrix adjoint_impl(const ComplexMatrix& u, const OperatorBasis& basis, bool anti, const char* who) {
  require_unitary(u, kUnitaryTol * std::max(1.0, double(u.rows())), who);
  require_orthonormal(basis, who);
  const int d = basis.dim();
  if (u.rows() != d) throw DimensionError(std::string(who) + ": U and basis dimensions differ");
  const int n = basis.size();
  AdjointMatrix out{d, RealMatrix(n, n), u, anti};
  double worst_imag = 0.0;
  for (int k = 0; k < n; ++k) {
    const ComplexMatrix lk = anti ? ComplexMatrix(basis[k].matrix().conjugate()) : basis[k].matrix();
    const ComplexMatrix img = u * lk * u.adjoint();
    for (int j = 0; j < n; ++j) {
      // tr(L_j X) = sum_ab L_j(a,b) X(b,a)
      const Complex v = basis[j].matrix().cwiseProduct(img.transpose()).sum();
      worst_imag = std::max(worst_imag, std::abs(v.imag()));
      out.matrix(j, k) = v.real();
    }
  }
  if (worst_imag > 1e-10) throw PreconditionError(std::string(who) + ": adjoint entries are not real");
  return out;
}

}  // namespace detail

inline AdjointMatrix adjoint_matrix(const ComplexMatrix& u, const OperatorBasis& basis) {
  return detail::adjoint_impl(u, basis, false, "adjoint_matrix");
}

/// Antiunitary convention: entrywise conjugation in the computational basis,
/// followed by conjugation with U.
inline AdjointMatrix antiunitary_adjoint(const ComplexMatrix& u, const OperatorBasis& basis) {
  return detail::adjoint_impl(u, basis, true, "antiunitary_adjoint");
}

struct MdlResult {
  double value = 0.0;
  int j = 0;
  int k = 0;
};

/// m(d, L) = min_{U,j,k} U^L_jk, attained in closed form as
/// min_{j,k} lambda_j^up . lambda_k^down over the sorted spectra.
inline MdlResult m_dl_detail(const OperatorBasis& basis) {
  detail::require_orthonormal(basis, "m_dl");
  const int n = basis.size();
  std::vector<std::vector<double>> up(n);
  for (int j = 0; j < n; ++j) up[j] = hermitian_eigenvalues(basis[j].matrix());
  MdlResult best{INFINITY, 0, 0};
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const auto& a = up[j];
      const auto& b = up[k];
      double v = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) v += a[i] * b[b.size() - 1 - i];
      if (v < best.value) best = {v, j, k};
    }
  }
  return best;
}
inline double m_dl(const OperatorBasis& basis) { return m_dl_detail(basis).value; }

/// L_j = a_j Pi_j + b with a_j = e_j sqrt((d+1)/d) and
/// b = -(a_j/d)(1 - e' / sqrt(d+1)). With all e_j equal this is the family of
/// orthonormal bases saturating m(d, L) = -1/d.
inline OperatorBasis adjoint_sic_basis(const SicEnsemble& sic, std::span<const int> eps_j, int eps_prime) {
  const int d = sic.dim();
  if (static_cast<int>(eps_j.size()) != sic.size()) throw DimensionError("adjoint_sic_basis: one sign per element");
  std::vector<HermitianOperator> ops;
  for (int j = 0; j < sic.size(); ++j) {
    const double a = eps_j[j] * std::sqrt((d + 1.0) / d);
    const double b = -(a / d) * (1.0 - eps_prime / std::sqrt(d + 1.0));
    ops.push_back(a * sic[j] + HermitianOperator(b * ComplexMatrix::Identity(d, d)));
  }
  return OperatorBasis(std::move(ops));
}
inline OperatorBasis adjoint_sic_basis(const SicEnsemble& sic, int eps = 1, int eps_prime = 1) {
  const std::vector<int> signs(static_cast<std::size_t>(sic.size()), eps);
  return adjoint_sic_basis(sic, signs, eps_prime);
}

// ---------------------------------------------------------------------------
// Stochastic type

/// R = (d+1) S - d P with P the all-entries-1/d^2 projector; R is of
/// stochastic type when S is doubly stochastic.
struct StochasticTypeDecomposition {
  RealMatrix s;
  RealMatrix p;
  double min_entry = 0.0;
  double row_sum_error = 0.0;
  double col_sum_error = 0.0;
  double sp_residual = 0.0;
  bool stochastic_type = false;
  CheckReport report;
};

inline StochasticTypeDecomposition stochastic_decompose(const RealMatrix& r, double tol = kStochasticTol) {
  const Eigen::Index n = r.rows();
  const int d = static_cast<int>(std::lround(std::sqrt(double(n))));
  if (r.cols() != n || static_cast<Eigen::Index>(d) * d != n) {
    throw DimensionError("stochastic_decompose: R must be d^2 x d^2");
  }
  const double orth = max_abs(r.transpose() * r - RealMatrix::Identity(n, n));
  if (orth > tol) {
    throw PreconditionError("stochastic_decompose: R is not orthogonal (error " + std::to_string(orth) + ")");
  }
  StochasticTypeDecomposition out;
  out.p = RealMatrix::Constant(n, n, 1.0 / double(n));
  out.s = (r + d * out.p) / (d + 1.0);
  out.min_entry = out.s.minCoeff();
  out.row_sum_error = (out.s.rowwise().sum().array() - 1.0).abs().maxCoeff();
  out.col_sum_error = (out.s.colwise().sum().array() - 1.0).abs().maxCoeff();
  out.sp_residual = std::max(max_abs(out.s * out.p - out.p), max_abs(out.p * out.s - out.p));
  out.stochastic_type = out.min_entry >= -tol && out.row_sum_error <= tol && out.col_sum_error <= tol;

  CheckReport& rep = out.report;
  rep = CheckReport("stochastic_decompose", "R = (d+1) S - d P with S doubly stochastic");
  rep.residuals["min_entry"] = out.min_entry;
  rep.residuals["row_sum_error"] = out.row_sum_error;
  rep.residuals["col_sum_error"] = out.col_sum_error;
  rep.residuals["sp_residual"] = out.sp_residual;
  rep.tolerances["min_entry"] = -tol;
  rep.tolerances["row_sum_error"] = rep.tolerances["col_sum_error"] = tol;
  rep.verdicts["nonnegative"] = out.min_entry >= -tol;
  rep.verdicts["unit_sums"] = out.row_sum_error <= tol && out.col_sum_error <= tol;
  rep.pass = out.stochastic_type;
  return out;
}

struct StochasticSample {
  int index = 0;
  double min_entry = 0.0;
  double row_sum_error = 0.0;
  double col_sum_error = 0.0;
  bool stochastic_type = false;
};

/// Adjoint matrices of Haar-random unitaries (and, if `antiunitary`, of
/// antiunitaries) over `basis`, each decomposed for stochastic type. Sample i
/// uses its own engine derived from (seed, i).
inline std::vector<StochasticSample> sample_stochastic_adjoints(const OperatorBasis& basis, int samples,
                                                                std::uint64_t seed, bool antiunitary = false,
                                                                double tol = kStochasticTol) {
  std::vector<StochasticSample> out;
  for (int i = 0; i < samples; ++i) {
    Rng rng = derive_rng(seed, static_cast<std::uint64_t>(i));
    const ComplexMatrix u = haar_unitary(basis.dim(), rng);
    const AdjointMatrix a = antiunitary ? antiunitary_adjoint(u, basis) : adjoint_matrix(u, basis);
    const auto dec = stochastic_decompose(a.matrix, tol);
    out.push_back({i, dec.min_entry, dec.row_sum_error, dec.col_sum_error, dec.stochastic_type});
  }
  return out;
}

/// CSV with columns sampleIndex,minEntry,rowSumMaxErr,colSumMaxErr.
inline void write_samples_csv(std::ostream& os, std::span<const StochasticSample> samples) {
  os << "sampleIndex,minEntry,rowSumMaxErr,colSumMaxErr\n";
  const auto old = os.precision(17);
  for (const auto& s : samples)
    os << s.index << ',' << s.min_entry << ',' << s.row_sum_error << ',' << s.col_sum_error << '\n';
  os.precision(old);
}

/// 4 x 4 orthogonal matrix with unit row and column sums: 11^T/4 + V O V^T
/// with V an orthonormal basis of the complement of (1,1,1,1) and O Haar on O(3).
inline RealMatrix unit_sum_orthogonal4(Rng& rng) {
  RealMatrix v(4, 3);
  v << 1, 1, 1,  //
      -1, 1, 1,  //
      0, -2, 1,  //
      0, 0, -3;
  for (int c = 0; c < 3; ++c) v.col(c).normalize();
  return RealMatrix::Constant(4, 4, 0.25) + v * haar_orthogonal(3, rng) * v.transpose();
}

/// A real vector with unit sum and unit sum of squares: its smallest entry
/// (bounded below by -1/2 for length 4).
inline double unit_row_min_entry(std::span<const double> row, double tol = 1e-12) {
  const double sum = std::accumulate(row.begin(), row.end(), 0.0);
  double sq = 0.0;
  for (double x : row) sq += x * x;
  if (std::abs(sum - 1.0) > tol || std::abs(sq - 1.0) > tol) {
    throw PreconditionError("unit_row_min_entry: row must have unit sum and unit norm");
  }
  return *std::min_element(row.begin(), row.end());
}

/// d = 2: every orthogonal 4 x 4 matrix with unit row sums has entries >= -1/2.
inline CheckReport check_o4_uniqueness_property(int samples, std::uint64_t seed, double tol = 1e-12) {
  CheckReport r("check_o4_uniqueness_property",
                "R in O(4) with unit row sums  =>  R_jk >= -1/2, so such R are of stochastic type for d = 2");
  double worst = INFINITY, sums = 0.0;
  for (int i = 0; i < samples; ++i) {
    Rng rng = derive_rng(seed, static_cast<std::uint64_t>(i));
    const RealMatrix a = unit_sum_orthogonal4(rng);
    worst = std::min(worst, a.minCoeff());
    sums = std::max(sums, (a.rowwise().sum().array() - 1.0).abs().maxCoeff());
    sums = std::max(sums, max_abs(a.transpose() * a - RealMatrix::Identity(4, 4)));
  }
  r.residuals["min_entry"] = worst;
  r.residuals["constraint_error"] = sums;
  r.tolerances["min_entry"] = -0.5 - tol;
  r.tolerances["constraint_error"] = 1e-12;
  r.verdicts["entries_bounded"] = worst >= -0.5 - tol;
  r.verdicts["constraints"] = sums <= 1e-12;
  r.pass = r.verdict("entries_bounded") && r.verdict("constraints");
  return r;
}

// ---------------------------------------------------------------------------
// Ordered product bound

struct OrderedProductBoundReport {
  enum class SaturationClass { None, TopSpike, BottomSpike };
  std::vector<double> lambda;
  double r = 0.0;
  double s = 0.0;
  double product = 0.0;
  double bound = 0.0;
  bool saturated = false;
  SaturationClass saturation_class = SaturationClass::None;
  double r_prime = 0.0;
  double x = 0.0;
};

inline const char* to_string(OrderedProductBoundReport::SaturationClass c) {
  switch (c) {
    case OrderedProductBoundReport::SaturationClass::TopSpike: return "top-spike";
    case OrderedProductBoundReport::SaturationClass::BottomSpike: return "bottom-spike";
    default: return "none";
  }
}

/// lambda^up . lambda^down <= (r^2 - s)/(d - 1), with equality exactly when
/// lambda^down = r'(1,0,...,0) + x or (r'/d)(2,...,2,2-d) + x, where
/// r' = sqrt((ds - r^2)/(d-1)) and x = ((d-1) r - sqrt((d-1)(ds - r^2)))/(d^2 - d).
/// A constant vector belongs to both families and is reported as top-spike.
inline OrderedProductBoundReport ordered_product_bound(std::span<const double> lambda, double tol = 1e-12) {
  const int d = static_cast<int>(lambda.size());
  if (d < 2) throw DimensionError("ordered_product_bound: length >= 2 required");
  OrderedProductBoundReport out;
  out.lambda.assign(lambda.begin(), lambda.end());
  std::vector<double> up(out.lambda), down(out.lambda);
  std::sort(up.begin(), up.end());
  std::sort(down.begin(), down.end(), std::greater<>());
  for (int i = 0; i < d; ++i) {
    out.r += lambda[i];
    out.s += lambda[i] * lambda[i];
    out.product += up[i] * down[i];
  }
  out.bound = (out.r * out.r - out.s) / (d - 1);
  const double mag = std::max(1.0, out.s);
  out.saturated = std::abs(out.bound - out.product) <= tol * mag;

  const double disc = std::max(0.0, d * out.s - out.r * out.r);
  out.r_prime = std::sqrt(disc / (d - 1));
  out.x = ((d - 1) * out.r - std::sqrt((d - 1) * disc)) / (double(d) * d - d);
  if (out.saturated) {
    const double cmp = 1e3 * tol * std::sqrt(mag);
    double top = 0.0, bottom = 0.0;
    for (int i = 0; i < d; ++i) {
      const double t = (i == 0 ? out.r_prime : 0.0) + out.x;
      const double b = out.r_prime / d * (i == d - 1 ? 2.0 - d : 2.0) + out.x;
      top = std::max(top, std::abs(down[i] - t));
      bottom = std::max(bottom, std::abs(down[i] - b));
    }
    if (top <= cmp) {
      out.saturation_class = OrderedProductBoundReport::SaturationClass::TopSpike;
    } else if (bottom <= cmp) {
      out.saturation_class = OrderedProductBoundReport::SaturationClass::BottomSpike;
    }
  }
  return out;
}

}  // namespace sicforge

#endif  // SICFORGE_GROUP_HPP
