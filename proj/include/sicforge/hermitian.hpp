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

#ifndef SICFORGE_HERMITIAN_HPP
#define SICFORGE_HERMITIAN_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sicforge/error.hpp"

namespace sicforge {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kDefaultRankTol = 1e-8;

/// Largest absolute entry; zero for empty matrices.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

inline bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

/// A d x d Hermitian matrix.
///
/// Input is symmetrized to (A + A^dagger)/2. If that changed some entry by
/// more than the hermiticity tolerance the operator remembers it, and
/// operations that require a Hermitian input (spectrum) refuse it.
class HermitianOperator {
 public:
  HermitianOperator() : matrix_(ComplexMatrix::Zero(1, 1)) {}

  explicit HermitianOperator(const ComplexMatrix& m, double tol = kHermiticityTol) {
    if (m.rows() < 1 || m.rows() != m.cols()) {
      throw DimensionError("HermitianOperator: matrix must be square and non-empty");
    }
    if (!all_finite(m)) throw PreconditionError("HermitianOperator: non-finite entry");
    matrix_ = (m + m.adjoint()) / 2.0;
    correction_ = max_abs(m - matrix_);
    tolerance_ = tol;
  }

  static HermitianOperator identity(int d) {
    return HermitianOperator(ComplexMatrix::Identity(d, d));
  }
  static HermitianOperator zero(int d) { return HermitianOperator(ComplexMatrix::Zero(d, d)); }

  /// |v><v| / <v|v>.
  static HermitianOperator projector(const ComplexVector& v) {
    const double n2 = v.squaredNorm();
    if (!(n2 > 0.0)) throw PreconditionError("projector: zero vector");
    return HermitianOperator(v * v.adjoint() / n2);
  }

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

  /// Largest entry change made by symmetrization.
  double hermiticity_correction() const { return correction_; }
  bool hermiticity_warning() const { return correction_ > tolerance_; }

  double trace() const { return matrix_.trace().real(); }

  friend HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b) {
    check_same_dim(a, b);
    return HermitianOperator(a.matrix_ + b.matrix_);
  }
  friend HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b) {
    check_same_dim(a, b);
    return HermitianOperator(a.matrix_ - b.matrix_);
  }
  friend HermitianOperator operator*(double s, const HermitianOperator& a) {
    return HermitianOperator(s * a.matrix_);
  }
  /// a + s * identity
  HermitianOperator shifted(double s) const {
    return HermitianOperator(matrix_ + s * ComplexMatrix::Identity(dim(), dim()));
  }

  static void check_same_dim(const HermitianOperator& a, const HermitianOperator& b) {
    if (a.dim() != b.dim()) throw DimensionError("operator dimension mismatch");
  }

 private:
  ComplexMatrix matrix_;
  double correction_ = 0.0;
  double tolerance_ = kHermiticityTol;
};

/// Hilbert-Schmidt inner product tr(a^dagger b).
inline Complex hs_inner(const HermitianOperator& a, const HermitianOperator& b) {
  HermitianOperator::check_same_dim(a, b);
  return (a.matrix().adjoint().cwiseProduct(b.matrix().transpose())).sum();
}

/// Real part of tr(a b) for Hermitian a, b.
inline double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.cwiseProduct(b.transpose())).sum().real();
}

/// Column-stacking vectorization: entry (r, c) lands at index r + c*d.
inline ComplexVector vectorize(const ComplexMatrix& a) {
  return Eigen::Map<const ComplexVector>(a.data(), a.size());
}
inline ComplexVector vectorize(const HermitianOperator& a) { return vectorize(a.matrix()); }

/// Inverse of vectorize for a d x d matrix.
inline ComplexMatrix unvectorize(const ComplexVector& v, int d) {
  if (v.size() != static_cast<Eigen::Index>(d) * d) throw DimensionError("unvectorize: length");
  return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// SWAP on H (x) H with product index i*d + k for |i>|k>.
inline ComplexMatrix swap_operator(int d) {
  const int n = d * d;
  ComplexMatrix s = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) s(k * d + i, i * d + k) = 1.0;
  }
  return s;
}

struct SymAntisymProjectors {
  ComplexMatrix symmetric;
  ComplexMatrix antisymmetric;
};

/// P_s = (I + SWAP)/2 and P_a = (I - SWAP)/2 on H (x) H.
inline SymAntisymProjectors sym_antisym_projectors(int d) {
  if (d < 1) throw DimensionError("sym_antisym_projectors: d >= 1 required");
  const ComplexMatrix id = ComplexMatrix::Identity(d * d, d * d);
  const ComplexMatrix sw = swap_operator(d);
  return {(id + sw) / 2.0, (id - sw) / 2.0};
}

/// Linear map on vectorized d x d operators (a d^2 x d^2 matrix).
class Superoperator {
 public:
  Superoperator(int d, ComplexMatrix m) : dim_(d), matrix_(std::move(m)) {
    if (matrix_.rows() != d * d || matrix_.cols() != d * d) {
      throw DimensionError("Superoperator: matrix must be d^2 x d^2");
    }
  }
  static Superoperator identity(int d) {
    return Superoperator(d, ComplexMatrix::Identity(d * d, d * d));
  }
  /// |1>><<1|
  static Superoperator identity_projector(int d) {
    const ComplexVector one = vectorize(ComplexMatrix::Identity(d, d));
    return Superoperator(d, one * one.adjoint());
  }
  int dim() const { return dim_; }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  int dim_;
  ComplexMatrix matrix_;
};

/// The isomorphism |A>><<B|  ->  A (x) B^dagger from superoperators to
/// operators on H (x) H, as an index permutation.
///
/// With column-stacked kets, |A>><<B| has entry A(i,j) conj(B(k,l)) at
/// (i + j*d, k + l*d). The image entry at (i*d + k, j*d + l) must be
/// A(i,j) conj(B(l,k)), so out(i*d+k, j*d+l) = in(i + j*d, l + k*d).
/// Under this map the identity superoperator goes to SWAP and |1>><<1|
/// goes to the identity.
inline ComplexMatrix reshuffle(const Superoperator& s) {
  const int d = s.dim();
  ComplexMatrix out(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) out(i * d + k, j * d + l) = s.matrix()(i + j * d, l + k * d);
  return out;
}

/// sum_j |L_j>><<L_j|
inline Superoperator superop_from_frame(std::span<const HermitianOperator> ops) {
  if (ops.empty()) throw PreconditionError("superop_from_frame: empty operator list");
  const int d = ops.front().dim();
  ComplexMatrix acc = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& op : ops) {
    if (op.dim() != d) throw DimensionError("superop_from_frame: mixed dimensions");
    const ComplexVector v = vectorize(op);
    acc.noalias() += v * v.adjoint();
  }
  return Superoperator(d, std::move(acc));
}

/// sum_j L_j (x) L_j
inline ComplexMatrix tensor_square_sum(std::span<const HermitianOperator> ops) {
  if (ops.empty()) throw PreconditionError("tensor_square_sum: empty operator list");
  const int d = ops.front().dim();
  ComplexMatrix acc = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& op : ops) acc += kron(op.matrix(), op.matrix());
  return acc;
}

struct SpectrumReport {
  std::vector<double> eigenvalues;  // ascending
  int numerical_rank = 0;
  double rank_tolerance = kDefaultRankTol;
};

/// Number of |values| above rel_tol * max|values|.
inline int numerical_rank(std::span<const double> values, double rel_tol = kDefaultRankTol) {
  double top = 0.0;
  for (double v : values) top = std::max(top, std::abs(v));
  if (top == 0.0) return 0;
  return static_cast<int>(
      std::count_if(values.begin(), values.end(), [&](double v) { return std::abs(v) > rel_tol * top; }));
}

inline std::vector<double> to_std(const RealVector& v) { return {v.data(), v.data() + v.size()}; }

/// Ascending eigenvalues of a Hermitian matrix (no hermiticity check).
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  return to_std(es.eigenvalues());
}
inline std::vector<double> symmetric_eigenvalues(const RealMatrix& m) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(m, Eigen::EigenvaluesOnly);
  return to_std(es.eigenvalues());
}

inline SpectrumReport spectrum(const HermitianOperator& a, double rank_tol = kDefaultRankTol) {
  if (a.hermiticity_warning()) {
    throw PreconditionError("spectrum: input is not Hermitian within tolerance (correction " +
                            std::to_string(a.hermiticity_correction()) + ")");
  }
  SpectrumReport r;
  r.eigenvalues = hermitian_eigenvalues(a.matrix());
  r.numerical_rank = numerical_rank(r.eigenvalues, rank_tol);
  r.rank_tolerance = rank_tol;
  return r;
}

/// d^2 Hermitian operators with their Gram matrix M_jk = tr(L_j L_k).
class OperatorBasis {
 public:
  OperatorBasis() = default;
  explicit OperatorBasis(std::vector<HermitianOperator> ops) : ops_(std::move(ops)) {
    if (ops_.empty()) throw DimensionError("OperatorBasis: empty");
    dim_ = ops_.front().dim();
    const std::size_t n = static_cast<std::size_t>(dim_) * dim_;
    if (ops_.size() != n) {
      throw DimensionError("OperatorBasis: expected d^2 = " + std::to_string(n) + " operators, got " +
                           std::to_string(ops_.size()));
    }
    for (const auto& op : ops_) {
      if (op.dim() != dim_) throw DimensionError("OperatorBasis: mixed dimensions");
    }
    const auto m = static_cast<Eigen::Index>(n);
    gram_.resize(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
      for (Eigen::Index k = j; k < m; ++k) {
        gram_(j, k) = gram_(k, j) = trace_product(ops_[j].matrix(), ops_[k].matrix());
      }
    }
  }

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(ops_.size()); }
  const std::vector<HermitianOperator>& operators() const { return ops_; }
  const HermitianOperator& operator[](int j) const { return ops_[static_cast<std::size_t>(j)]; }
  const RealMatrix& gram() const { return gram_; }

  std::vector<double> traces() const {
    std::vector<double> t;
    t.reserve(ops_.size());
    for (const auto& op : ops_) t.push_back(op.trace());
    return t;
  }

  /// Smallest Gram eigenvalue relative to the largest.
  double gram_condition_floor() const {
    const auto ev = symmetric_eigenvalues(gram_);
    return ev.back() > 0.0 ? ev.front() / ev.back() : 0.0;
  }
  bool spans(double rel_tol = kDefaultRankTol) const { return gram_condition_floor() > rel_tol; }

  /// If the Gram matrix is ell^2 * identity within rel_tol, returns ell.
  std::optional<double> orthonormal_scale(double rel_tol = 1e-10) const {
    const double ell2 = gram_.diagonal().mean();
    if (!(ell2 > 0.0)) return std::nullopt;
    const RealMatrix dev = gram_ - ell2 * RealMatrix::Identity(gram_.rows(), gram_.cols());
    if (max_abs(dev) > rel_tol * ell2) return std::nullopt;
    return std::sqrt(ell2);
  }
  bool is_orthonormal(double tol = 1e-10) const {
    return max_abs(gram_ - RealMatrix::Identity(gram_.rows(), gram_.cols())) <= tol;
  }

 private:
  int dim_ = 0;
  std::vector<HermitianOperator> ops_;
  RealMatrix gram_;
};

/// Orthonormal Hermitian basis: I/sqrt(d) followed by the normalized
/// generalized Gell-Mann matrices (symmetric, antisymmetric, diagonal).
inline OperatorBasis gell_mann_basis(int d) {
  std::vector<HermitianOperator> ops;
  ops.push_back(HermitianOperator(ComplexMatrix::Identity(d, d) / std::sqrt(double(d))));
  const double r2 = std::sqrt(2.0);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix s = ComplexMatrix::Zero(d, d);
      s(j, k) = s(k, j) = 1.0 / r2;
      ops.emplace_back(s);
      ComplexMatrix a = ComplexMatrix::Zero(d, d);
      a(j, k) = Complex(0, -1.0 / r2);
      a(k, j) = Complex(0, 1.0 / r2);
      ops.emplace_back(a);
    }
  }
  for (int l = 1; l < d; ++l) {
    ComplexMatrix g = ComplexMatrix::Zero(d, d);
    const double norm = 1.0 / std::sqrt(double(l) * (l + 1));
    for (int m = 0; m < l; ++m) g(m, m) = norm;
    g(l, l) = -l * norm;
    ops.emplace_back(g);
  }
  return OperatorBasis(std::move(ops));
}

/// Expansion coefficients of x in the orthonormal basis: c_k = tr(E_k x).
inline ComplexVector coefficients_orthonormal(const OperatorBasis& basis, const ComplexMatrix& x) {
  ComplexVector c(basis.size());
  for (int k = 0; k < basis.size(); ++k) c(k) = (basis[k].matrix().cwiseProduct(x.transpose())).sum();
  return c;
}

}  // namespace sicforge

#endif  // SICFORGE_HERMITIAN_HPP
