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

#ifndef SICFORGE_SIMPLEX_HPP
#define SICFORGE_SIMPLEX_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "sicforge/error.hpp"
#include "sicforge/hermitian.hpp"
#include "sicforge/report.hpp"
#include "sicforge/sic.hpp"

namespace sicforge {

inline constexpr double kSimplexTol = 1e-9;
inline constexpr double kShapeTol = 1e-8;

/// Constants of sum_j |L_j>><<L_j| = alpha I + beta |1>><<1|, obtained from the
/// two trace identities sum tr(L_j^2) = d^2 alpha + d beta and
/// sum [tr L_j]^2 = d alpha + d^2 beta. `residual` is the max-entry deviation
/// of the frame superoperator from the fitted form.
struct DesignConstants {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double residual = 0.0;
  /// gamma recomputed as 1/d - alpha / sum_j [tr L_j]^2.
  double gamma_from_traces = 0.0;

  FrameConstants frame() const { return {alpha, beta, gamma}; }
};

namespace detail {

inline double spread(std::span<const double> v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

inline int sign_of(double x) { return x < 0.0 ? -1 : 1; }

inline ComplexMatrix frame_model(int d, double alpha, double beta) {
  const ComplexVector one = vectorize(ComplexMatrix::Identity(d, d));
  return alpha * ComplexMatrix::Identity(d * d, d * d) + beta * (one * one.adjoint());
}

/// max_j tr(L_j^2), the scale all relative tolerances refer to.
inline double norm_scale(std::span<const HermitianOperator> ops) {
  double s = 0.0;
  for (const auto& op : ops) s = std::max(s, op.matrix().squaredNorm());
  if (!(s > 0.0)) throw PreconditionError("operator set is identically zero");
  return s;
}

inline void require_frame_identity(std::span<const HermitianOperator> ops, const DesignConstants& c, double tol,
                                   const char* who) {
  const int d = ops.front().dim();
  const double res = max_abs(superop_from_frame(ops).matrix() - frame_model(d, c.alpha, c.beta)) / norm_scale(ops);
  if (res > tol) {
    throw PreconditionError(std::string(who) + ": frame identity fails (relative residual " + std::to_string(res) +
                            ")");
  }
}

}  // namespace detail

inline DesignConstants fit_alpha_beta(std::span<const HermitianOperator> ops) {
  if (ops.empty()) throw DimensionError("fit_alpha_beta: empty operator list");
  const int d = ops.front().dim();
  double sum_sq = 0.0, sum_tr2 = 0.0;
  for (const auto& op : ops) {
    sum_sq += op.matrix().squaredNorm();
    sum_tr2 += op.trace() * op.trace();
  }
  const double denom = double(d) * d * d - d;
  DesignConstants c;
  c.alpha = (d * sum_sq - sum_tr2) / denom;
  c.beta = (-sum_sq + d * sum_tr2) / denom;
  c.gamma = c.beta / (c.alpha + d * c.beta);
  c.gamma_from_traces = 1.0 / d - c.alpha / sum_tr2;
  c.residual = max_abs(superop_from_frame(ops).matrix() - detail::frame_model(d, c.alpha, c.beta));
  return c;
}
inline DesignConstants fit_alpha_beta(const OperatorBasis& basis) { return fit_alpha_beta(basis.operators()); }

/// Tests the three equivalent forms independently:
///   (i)   tr(L_j L_k) = alpha delta_jk + gamma tr(L_j) tr(L_k)
///   (ii)  sum_j L_j (x) L_j = (beta + alpha) P_s + (beta - alpha) P_a
///   (iii) sum_j |L_j>><<L_j| = alpha I + beta |1>><<1|
/// Each leg fits its own constants; residuals are relative to max_j tr(L_j^2).
inline CheckReport check_trichotomy(const OperatorBasis& basis, double tol = kSimplexTol) {
  const int d = basis.dim();
  const int n = basis.size();
  const auto& ops = basis.operators();
  const double scale = detail::norm_scale(ops);
  CheckReport r("check_trichotomy",
                "tr(L_j L_k) = alpha delta_jk + gamma tr L_j tr L_k  <=>  sum_j L_j (x) L_j = (beta+alpha) P_s + "
                "(beta-alpha) P_a  <=>  sum_j |L_j>><<L_j| = alpha I + beta |1>><<1|");

  // (i) least squares over the two-parameter family alpha I + gamma t t^T.
  const auto tv = basis.traces();
  const RealVector t = Eigen::Map<const RealVector>(tv.data(), n);
  const double t2 = t.squaredNorm();
  const RealMatrix& m = basis.gram();
  double alpha_i = m.trace() / n, gamma_i = 0.0;
  const bool has_trace = t2 > 1e-14 * scale;
  if (has_trace) {
    const double tmt = t.dot(m * t);
    // normal equations: [n, t2; t2, t2^2] [alpha; gamma] = [tr M; t^T M t]
    const double det = (n - 1.0) * t2 * t2;
    alpha_i = (t2 * t2 * m.trace() - t2 * tmt) / det;
    gamma_i = (n * tmt - t2 * m.trace()) / det;
  }
  const RealMatrix fit_i = alpha_i * RealMatrix::Identity(n, n) + gamma_i * t * t.transpose();
  const double res_i = max_abs(m - fit_i) / scale;

  // (ii) projections onto the symmetric and antisymmetric subspaces.
  const ComplexMatrix x = tensor_square_sum(ops);
  const auto proj = sym_antisym_projectors(d);
  const double sp = (proj.symmetric.cwiseProduct(x)).sum().real() / (d * (d + 1) / 2.0);
  const double sa = (proj.antisymmetric.cwiseProduct(x)).sum().real() / (d * (d - 1) / 2.0);
  const double res_ii = max_abs(x - sp * proj.symmetric - sa * proj.antisymmetric) / scale;
  const double alpha_ii = (sp - sa) / 2.0, beta_ii = (sp + sa) / 2.0;

  // (iii) trace identities and the frame superoperator.
  const DesignConstants c = fit_alpha_beta(ops);
  const double res_iii = c.residual / scale;

  r.residuals["gram_form"] = res_i;
  r.residuals["tensor_form"] = res_ii;
  r.residuals["frame_form"] = res_iii;
  r.tolerances["gram_form"] = r.tolerances["tensor_form"] = r.tolerances["frame_form"] = tol;
  r.verdicts["gram_form"] = res_i <= tol;
  r.verdicts["tensor_form"] = res_ii <= tol;
  r.verdicts["frame_form"] = res_iii <= tol;
  const bool all = r.verdict("gram_form") && r.verdict("tensor_form") && r.verdict("frame_form");
  const bool none = !r.verdict("gram_form") && !r.verdict("tensor_form") && !r.verdict("frame_form");
  r.verdicts["legs_agree"] = all || none;
  r.constants = c.frame();

  if (all) {
    double mismatch = std::max(std::abs(alpha_i - c.alpha), std::abs(alpha_ii - c.alpha));
    mismatch = std::max(mismatch, std::abs(beta_ii - c.beta));
    if (has_trace) mismatch = std::max(mismatch, std::abs(alpha_i / (1.0 - d * gamma_i) - (c.alpha + d * c.beta)));
    r.residuals["constant_mismatch"] = mismatch / scale;
    r.tolerances["constant_mismatch"] = 10 * tol;
    r.verdicts["constants_agree"] = mismatch / scale <= 10 * tol;
  }
  if (!basis.spans()) r.note("operators do not span the operator space; the equivalence is only asserted for bases");
  r.pass = all && r.verdict("constants_agree");
  return r;
}

/// Span test for n operators satisfying the frame identity: they span iff
/// alpha > 0 and alpha + d beta > 0. Throws PreconditionError if the frame
/// identity fails at `tol` (relative).
inline CheckReport check_frame_span(std::span<const HermitianOperator> ops, double tol = kSimplexTol) {
  if (ops.empty()) throw DimensionError("check_frame_span: empty operator list");
  const int d = ops.front().dim();
  const DesignConstants c = fit_alpha_beta(ops);
  detail::require_frame_identity(ops, c, tol, "check_frame_span");
  const double scale = detail::norm_scale(ops);
  CheckReport r("check_frame_span", "{L_j} spans B(H)  <=>  alpha > 0 and alpha + d beta > 0");
  const auto ev = hermitian_eigenvalues(superop_from_frame(ops).matrix());
  const int rank = numerical_rank(ev);
  const bool spans = rank == d * d;
  const bool positive = c.alpha > tol * scale && c.alpha + d * c.beta > tol * scale;
  r.constants = c.frame();
  r.residuals["frame_form"] = c.residual / scale;
  r.values["alpha"] = c.alpha;
  r.values["alpha_plus_d_beta"] = c.alpha + d * c.beta;
  r.values["superoperator_rank"] = rank;
  r.tolerances["frame_form"] = tol;
  r.verdicts["spans"] = spans;
  r.verdicts["positive_constants"] = positive;
  r.pass = spans == positive;
  return r;
}

/// Which of the eight regular-simplex statements hold for a basis satisfying
/// the frame identity:
///   1 |tr L_j| constant           5 tr L_j != 0, tr(L_j L_k) = alpha delta + beta e_j e_k / d
///   2 tr(L_j^2) constant          6 tr L_j != 0, {e_j L_j} equiangular
///   3 [tr L_j]^2 / tr(L_j^2) const 7 tr L_j != 0, sum_j e_j L_j proportional to I
///   4 d tr(L_j^2) - [tr L_j]^2 const 8 sum_j |tr L_j| = d sqrt(d alpha + d^2 beta)
/// with e_j the sign of tr L_j.
struct SimplexClassification {
  std::array<bool, 8> statements{};
  std::vector<int> signs;
  bool regular = false;
  bool beta_zero = false;
  CheckReport report;

  bool holds(int statement) const { return statements.at(static_cast<std::size_t>(statement - 1)); }
  std::vector<int> holding() const {
    std::vector<int> out;
    for (int s = 1; s <= 8; ++s)
      if (holds(s)) out.push_back(s);
    return out;
  }
};

inline SimplexClassification classify_simplex(const OperatorBasis& basis, const DesignConstants& constants,
                                              double tol = kSimplexTol) {
  const int d = basis.dim();
  const int n = basis.size();
  const auto& ops = basis.operators();
  detail::require_frame_identity(ops, constants, tol, "classify_simplex");

  // Everything below is scale invariant, so work with L_j / ell where
  // ell^2 = max_j tr(L_j^2) and compare against absolute tolerances.
  const double scale = detail::norm_scale(ops);
  const double ell = std::sqrt(scale);
  const double alpha = constants.alpha / scale, beta = constants.beta / scale;
  std::vector<double> t(n), q(n), abs_t(n), ratio(n), defect(n);
  SimplexClassification out;
  out.signs.resize(static_cast<std::size_t>(n));
  bool nonzero = true;
  for (int j = 0; j < n; ++j) {
    t[j] = ops[j].trace() / ell;
    q[j] = ops[j].matrix().squaredNorm() / scale;
    abs_t[j] = std::abs(t[j]);
    ratio[j] = t[j] * t[j] / q[j];
    defect[j] = d * q[j] - t[j] * t[j];
    out.signs[j] = detail::sign_of(t[j]);
    nonzero = nonzero && abs_t[j] > 10 * tol;
  }
  const RealMatrix m = basis.gram() / scale;

  CheckReport& r = out.report;
  r = CheckReport("classify_simplex", "equivalent regular-simplex statements 1-8 on tr L_j, tr L_j^2 and signs");
  r.constants = constants.frame();

  double res5 = 0.0;
  std::vector<double> cosines;
  ComplexMatrix signed_sum = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < n; ++j) {
    signed_sum += (out.signs[j] / ell) * ops[j].matrix();
    for (int k = 0; k < n; ++k) {
      const double model = (j == k ? alpha : 0.0) + beta * out.signs[j] * out.signs[k] / d;
      res5 = std::max(res5, std::abs(m(j, k) - model));
      if (k > j) cosines.push_back(out.signs[j] * out.signs[k] * m(j, k) / std::sqrt(q[j] * q[k]));
    }
  }
  const double res7 = max_abs(signed_sum - signed_sum.trace() / double(d) * ComplexMatrix::Identity(d, d));
  const double radicand8 = d * alpha + double(d) * d * beta;
  const double target8 = radicand8 >= 0.0 ? d * std::sqrt(radicand8) : -1.0;
  const double sum_abs = std::accumulate(abs_t.begin(), abs_t.end(), 0.0);
  const double res8 = target8 >= 0.0 ? std::abs(sum_abs - target8) / std::max(1.0, target8) : INFINITY;

  const std::array<double, 8> res{detail::spread(abs_t), detail::spread(q),     detail::spread(ratio),
                                   detail::spread(defect), res5, detail::spread(cosines), res7, res8};
  for (int s = 0; s < 8; ++s) {
    const std::string key = "statement_" + std::to_string(s + 1);
    r.residuals[key] = res[s];
    r.tolerances[key] = tol;
    bool ok = res[s] <= tol;
    if (s == 4 || s == 5 || s == 6) ok = ok && nonzero;
    out.statements[s] = ok;
    r.verdicts[key] = ok;
  }

  out.beta_zero = std::abs(beta) <= tol;
  r.verdicts["beta_zero"] = out.beta_zero;
  bool consistent = true;
  if (!out.beta_zero) {
    for (int s = 2; s <= 8; ++s) consistent = consistent && out.holds(s) == out.holds(1);
  } else {
    consistent = out.holds(2);
    for (int s : {3, 4, 7, 8}) consistent = consistent && out.holds(s) == out.holds(1);
    consistent = consistent && out.holds(5) == out.holds(6);
    if (out.holds(1)) consistent = consistent && out.holds(5);
  }
  r.verdicts["consistent"] = consistent;
  if (!consistent) r.note("statement verdicts violate the asserted equivalence classes");

  bool consequences = true;
  if (out.holds(1) && (out.beta_zero || consistent)) {
    // tr L_j^2 = (d alpha + beta)/d, |tr L_j| = sqrt((alpha + d beta)/d), sum e_j L_j = sqrt(d(alpha + d beta)) I
    double rq = 0.0, rt = 0.0;
    for (int j = 0; j < n; ++j) {
      rq = std::max(rq, std::abs(q[j] - (d * alpha + beta) / d));
      rt = std::max(rt, std::abs(abs_t[j] - std::sqrt(std::max(0.0, (alpha + d * beta) / d))));
    }
    const double kappa = std::sqrt(std::max(0.0, d * (alpha + d * beta)));
    const double rs = max_abs(signed_sum - kappa * ComplexMatrix::Identity(d, d));
    r.residuals["norm_value"] = rq;
    r.residuals["trace_value"] = rt;
    r.residuals["signed_sum_value"] = rs;
    r.tolerances["norm_value"] = r.tolerances["trace_value"] = r.tolerances["signed_sum_value"] = 10 * tol;
    consequences = rq <= 10 * tol && rt <= 10 * tol && rs <= 10 * tol;
    r.verdicts["consequences"] = consequences;
  }

  std::vector<double> diag(n), off;
  for (int j = 0; j < n; ++j) {
    diag[j] = m(j, j);
    for (int k = j + 1; k < n; ++k) off.push_back(m(j, k));
  }
  out.regular = detail::spread(diag) <= tol && detail::spread(off) <= tol;
  r.verdicts["regular"] = out.regular;
  if (!out.beta_zero) {
    const bool uniform_sign = std::all_of(out.signs.begin(), out.signs.end(), [&](int s) { return s == out.signs[0]; });
    const bool predicted = out.holds(1) && uniform_sign;
    r.verdicts["regularity_matches_signs"] = predicted == out.regular;
    consistent = consistent && predicted == out.regular;
  } else if (!out.regular) {
    r.note("beta = 0 but the Gram matrix is not of regular-simplex form");
    consistent = false;
  }
  r.pass = consistent && consequences;
  return out;
}

/// Regular-simplex bases (Gram = alpha delta_jk + zeta): the statements
///   1 sum_j L_j proportional to I, 2 tr L_j constant,
///   3 |sum_j tr L_j| = d sqrt(d alpha + d^3 zeta)
/// must hold or fail together. Throws PreconditionError if the Gram matrix is
/// not of that form.
inline CheckReport check_regular_simplex(const OperatorBasis& basis, double tol = kSimplexTol) {
  const int d = basis.dim();
  const int n = basis.size();
  const auto& ops = basis.operators();
  const double scale = detail::norm_scale(ops);
  const double ell = std::sqrt(scale);
  const RealMatrix m = basis.gram() / scale;
  double off = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (j != k) off += m(j, k);
  const double zeta = off / (double(n) * (n - 1));
  const double alpha = m.trace() / n - zeta;
  const double gram_res = max_abs(m - alpha * RealMatrix::Identity(n, n) - zeta * RealMatrix::Ones(n, n));
  if (gram_res > tol) {
    throw PreconditionError("check_regular_simplex: Gram matrix is not alpha delta_jk + zeta (relative residual " +
                            std::to_string(gram_res) + ")");
  }
  CheckReport r("check_regular_simplex",
                "tr(L_j L_k) = alpha delta_jk + zeta: sum_j L_j ~ I  <=>  tr L_j constant  <=>  |sum_j tr L_j| = d "
                "sqrt(d alpha + d^3 zeta)");
  r.residuals["gram_form"] = gram_res;
  r.tolerances["gram_form"] = tol;

  std::vector<double> t(n);
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < n; ++j) {
    t[j] = ops[j].trace() / ell;
    sum += ops[j].matrix() / ell;
  }
  const double radicand = d * alpha + double(d) * d * d * zeta;
  const double target = d * std::sqrt(std::max(0.0, radicand));
  const double res1 = max_abs(sum - sum.trace() / double(d) * ComplexMatrix::Identity(d, d));
  const double res2 = detail::spread(t);
  const double res3 = std::abs(std::abs(sum.trace().real()) - target) / std::max(1.0, target);
  r.residuals["statement_1"] = res1;
  r.residuals["statement_2"] = res2;
  r.residuals["statement_3"] = res3;
  r.tolerances["statement_1"] = r.tolerances["statement_2"] = r.tolerances["statement_3"] = tol;
  const bool s1 = res1 <= tol, s2 = res2 <= tol, s3 = res3 <= tol;
  r.verdicts["statement_1"] = s1;
  r.verdicts["statement_2"] = s2;
  r.verdicts["statement_3"] = s3;
  r.verdicts["center_proportional_to_identity"] = s1 && s2 && s3;
  bool agree = s1 == s2 && s2 == s3;
  r.verdicts["statements_agree"] = agree;

  bool consequences = true;
  if (s1 && s2 && s3) {
    const int eps = detail::sign_of(sum.trace().real());
    const double value = std::sqrt(std::max(0.0, radicand));
    double rt = 0.0;
    for (double x : t) rt = std::max(rt, std::abs(x - eps * value / d));
    const double rs = max_abs(sum - eps * value * ComplexMatrix::Identity(d, d));
    r.residuals["trace_value"] = rt;
    r.residuals["sum_value"] = rs;
    r.tolerances["trace_value"] = r.tolerances["sum_value"] = 10 * tol;
    consequences = rt <= 10 * tol && rs <= 10 * tol;
    if (std::abs(zeta) > tol) {
      // With zeta != 0 the basis satisfies the frame identity with gamma = d zeta/(alpha + d^2 zeta).
      const double gamma = d * zeta / (alpha + double(d) * d * zeta);
      const double beta = alpha * gamma / (1.0 - d * gamma);
      const DesignConstants c = fit_alpha_beta(ops);
      const double res = std::max(std::abs(c.alpha / scale - alpha), std::abs(c.beta / scale - beta));
      r.residuals["frame_constants"] = res;
      r.tolerances["frame_constants"] = 10 * tol;
      consequences = consequences && res <= 10 * tol && c.residual / scale <= 10 * tol;
      r.constants = FrameConstants{alpha * scale, beta * scale, gamma};
    }
  }
  r.verdicts["consequences"] = consequences;
  r.pass = agree && consequences;
  return r;
}

/// L_j = a_j Pi_j + b_j I with {Pi_j} a SIC, a_j = e_j sqrt(alpha(d+1)/d) and
/// b_j = -(a_j/d)(1 - e sqrt((alpha + d beta)/(alpha(d+1)))).
struct Rank1PlusIdentityDecomposition {
  SicEnsemble sic;
  std::vector<double> a;
  std::vector<double> b;
  int epsilon = 1;
  std::vector<int> epsilon_j;
  /// d = 2 only: the regular-simplex statements that licensed the decomposition.
  std::vector<int> licensing_statements;
  CheckReport report;
};

/// Recovers the SIC hidden in a basis satisfying the frame identity whose
/// elements are each a rank-1 projector plus a multiple of the identity.
///
/// Sign convention: e_j = sign(a_j), and the fixed sign is e = e_j sign(tr L_j).
/// For d = 2 every Hermitian operator decomposes in two ways; `d2_branch`
/// (+1 or -1) picks Pi_j^+ (e = +1) or Pi_j^- (e = -1).
///
/// Throws PreconditionError when the frame identity fails, an element lacks a
/// (d-1)-fold eigenvalue cluster, the d = 2 hypotheses fail, or the recovered
/// projectors are not a SIC.
inline Rank1PlusIdentityDecomposition decompose_rank1_plus_identity(const OperatorBasis& basis,
                                                                    const DesignConstants& constants,
                                                                    double tol = kSimplexTol,
                                                                    double shape_tol = kShapeTol,
                                                                    int d2_branch = 1) {
  const int d = basis.dim();
  const int n = basis.size();
  const auto& ops = basis.operators();
  detail::require_frame_identity(ops, constants, tol, "decompose_rank1_plus_identity");
  const double scale = detail::norm_scale(ops);
  const double ell = std::sqrt(scale);
  const double alpha = constants.alpha, beta = constants.beta;
  if (!(alpha > 0.0) || !(alpha + d * beta > 0.0)) {
    throw PreconditionError("decompose_rank1_plus_identity: alpha > 0 and alpha + d beta > 0 required");
  }
  const double a_mag = std::sqrt(alpha * (d + 1.0) / d);
  const double s = std::sqrt((alpha + d * beta) / (alpha * (d + 1.0)));

  CheckReport r("decompose_rank1_plus_identity",
                "L_j = a_j Pi_j + b_j, a_j = e_j sqrt(alpha(d+1)/d), b_j = -(a_j/d)(1 - e sqrt((alpha + d "
                "beta)/(alpha(d+1))))");
  r.constants = constants.frame();
  std::vector<HermitianOperator> pis;
  std::vector<double> a(n), b(n);
  std::vector<int> eps_j(n);
  std::vector<int> licensing;
  int eps = 0;

  if (d == 2) {
    if (d2_branch != 1 && d2_branch != -1) throw PreconditionError("decompose_rank1_plus_identity: branch is +1 or -1");
    const SimplexClassification cls = classify_simplex(basis, constants, tol);
    const std::vector<int> allowed =
        cls.beta_zero ? std::vector<int>{1, 3, 4, 7, 8} : std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8};
    for (int st : allowed)
      if (cls.holds(st)) licensing.push_back(st);
    if (licensing.empty()) {
      throw PreconditionError(
          "decompose_rank1_plus_identity: for d = 2 one of the regular-simplex statements must hold (traces of "
          "mixed magnitude)");
    }
    const double lp = 0.5 * (std::sqrt((alpha + 2 * beta) / 2) + std::sqrt(1.5 * alpha));
    const double lm = 0.5 * (std::sqrt((alpha + 2 * beta) / 2) - std::sqrt(1.5 * alpha));
    const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    for (int j = 0; j < n; ++j) {
      const double tr = ops[j].trace();
      if (std::abs(tr) <= 10 * tol * ell) throw PreconditionError("decompose_rank1_plus_identity: traceless element");
      const int ej = detail::sign_of(tr);
      const ComplexMatrix el = ej * ops[j].matrix();
      const ComplexMatrix pi = d2_branch > 0 ? ComplexMatrix((el - lm * id) / (lp - lm))
                                             : ComplexMatrix(-(el - lp * id) / (lp - lm));
      pis.emplace_back(pi);
      a[j] = d2_branch * ej * a_mag;
      b[j] = -(a[j] / 2.0) * (1.0 - d2_branch * s);
      eps_j[j] = detail::sign_of(a[j]);
    }
    eps = d2_branch;
    for (int st : licensing) r.values["licensing_statement_" + std::to_string(st)] = st;
  } else {
    std::vector<int> eps_seen;
    double worst_spread = 0.0;
    for (int j = 0; j < n; ++j) {
      const double nj = ops[j].matrix().norm();
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ops[j].matrix() / nj);
      const RealVector& lam = es.eigenvalues();
      // The (d-1)-cluster is either the bottom or the top d-1 eigenvalues.
      const double spread_low = lam(d - 2) - lam(0);
      const double spread_high = lam(d - 1) - lam(1);
      const bool top_isolated = spread_low <= spread_high;
      const double spr = std::min(spread_low, spread_high);
      worst_spread = std::max(worst_spread, spr);
      if (spr > shape_tol) {
        throw PreconditionError("decompose_rank1_plus_identity: element " + std::to_string(j) +
                                " has no (d-1)-fold eigenvalue (spread " + std::to_string(spr) + ")");
      }
      const Eigen::Index iso = top_isolated ? d - 1 : 0;
      const double mu = top_isolated ? lam.head(d - 1).mean() : lam.tail(d - 1).mean();
      const double a_raw = (lam(iso) - mu) * nj;
      if (std::abs(a_raw) <= shape_tol * nj) {
        throw PreconditionError("decompose_rank1_plus_identity: element " + std::to_string(j) +
                                " is proportional to the identity");
      }
      const double tr = ops[j].trace();
      if (std::abs(tr) <= 10 * tol * ell) {
        throw PreconditionError("decompose_rank1_plus_identity: traceless element; the fixed sign is undefined");
      }
      eps_j[j] = detail::sign_of(a_raw);
      eps_seen.push_back(detail::sign_of(tr) * eps_j[j]);
      a[j] = a_raw;
      b[j] = mu * nj;
      pis.push_back(HermitianOperator::projector(es.eigenvectors().col(iso)));
    }
    r.residuals["cluster_spread"] = worst_spread;
    r.tolerances["cluster_spread"] = shape_tol;
    eps = eps_seen.front();
    const bool fixed = std::all_of(eps_seen.begin(), eps_seen.end(), [&](int e) { return e == eps; });
    r.verdicts["fixed_sign"] = fixed;
    if (!fixed) r.note("sign(tr L_j) sign(a_j) varies with j");
  }

  double ra = 0.0, rb = 0.0, rrec = 0.0;
  for (int j = 0; j < n; ++j) {
    ra = std::max(ra, std::abs(a[j] - eps_j[j] * a_mag));
    rb = std::max(rb, std::abs(b[j] + (a[j] / d) * (1.0 - eps * s)));
    const ComplexMatrix rec = a[j] * pis[j].matrix() + b[j] * ComplexMatrix::Identity(d, d);
    rrec = std::max(rrec, max_abs(rec - ops[j].matrix()));
  }
  r.residuals["a_formula"] = ra / ell;
  r.residuals["b_formula"] = rb / ell;
  r.residuals["reconstruction"] = rrec / ell;
  r.tolerances["a_formula"] = r.tolerances["b_formula"] = r.tolerances["reconstruction"] = 10 * std::max(tol, shape_tol);
  r.verdicts["a_formula"] = ra / ell <= 10 * std::max(tol, shape_tol);
  r.verdicts["b_formula"] = rb / ell <= 10 * std::max(tol, shape_tol);
  r.verdicts["reconstruction"] = rrec / ell <= 10 * std::max(tol, shape_tol);

  require_rank_one_projectors(pis, 10 * std::max(tol, shape_tol), "decompose_rank1_plus_identity");
  const CheckReport sic = verify_sic(pis, 10 * std::max(tol, shape_tol));
  r.residuals["max_fidelity_error"] = sic.residuals.at("max_fidelity_error");
  r.tolerances["max_fidelity_error"] = sic.tolerances.at("max_fidelity_error");
  r.verdicts["sic"] = sic.pass;
  if (!sic.pass) {
    throw PreconditionError("decompose_rank1_plus_identity: recovered projectors are not a SIC (fidelity error " +
                            std::to_string(sic.residuals.at("max_fidelity_error")) + ")");
  }
  r.pass = r.verdict("a_formula") && r.verdict("b_formula") && r.verdict("reconstruction") &&
           (d == 2 || r.verdict("fixed_sign"));
  return Rank1PlusIdentityDecomposition{SicEnsemble::certify(std::move(pis), 10 * std::max(tol, shape_tol)),
                                        std::move(a),
                                        std::move(b),
                                        eps,
                                        std::move(eps_j),
                                        std::move(licensing),
                                        std::move(r)};
}

}  // namespace sicforge

#endif  // SICFORGE_SIMPLEX_HPP
