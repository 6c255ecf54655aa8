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

#ifndef SICFORGE_SIC_HPP
#define SICFORGE_SIC_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "sicforge/error.hpp"
#include "sicforge/hermitian.hpp"
#include "sicforge/random.hpp"
#include "sicforge/report.hpp"

namespace sicforge {

inline constexpr double kSicTol = 1e-9;
inline constexpr double kProjectorTol = 1e-8;

// ---------------------------------------------------------------------------
// Weyl-Heisenberg group

/// tau = -exp(i pi / d), so tau^2 = omega = exp(2 pi i / d).
inline Complex wh_tau_power(int d, long long exponent) {
  const double angle = std::numbers::pi * static_cast<double>(exponent % (2LL * d)) / d;
  const double sign = (exponent % 2 == 0) ? 1.0 : -1.0;
  return sign * std::polar(1.0, angle);
}

/// D_{p,q} psi without forming the matrix. (D psi)_k = tau^{pq} omega^{q(k-p)} psi_{k-p}.
inline ComplexVector apply_displacement(int p, int q, const ComplexVector& psi) {
  const int d = static_cast<int>(psi.size());
  const Complex tau = wh_tau_power(d, static_cast<long long>(p) * q);
  ComplexVector out(d);
  for (int k = 0; k < d; ++k) {
    const int src = ((k - p) % d + d) % d;
    out(k) = tau * std::polar(1.0, 2.0 * std::numbers::pi * ((q * src) % d) / d) * psi(src);
  }
  return out;
}

/// All d^2 displacement operators D_{p,q} = tau^{pq} X^p Z^q in (p, q)
/// lexicographic order, with Z|k> = omega^k |k> and X|k> = |k+1 mod d>.
inline std::vector<ComplexMatrix> wh_displacements(int d) {
  if (d < 2) throw DimensionError("wh_displacements: d >= 2 required");
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(d) * d);
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) {
      ComplexMatrix m(d, d);
      for (int k = 0; k < d; ++k) {
        ComplexVector e = ComplexVector::Zero(d);
        e(k) = 1.0;
        m.col(k) = apply_displacement(p, q, e);
      }
      out.push_back(std::move(m));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fiducials and ensembles

struct Provenance {
  enum class Kind { AnalyticSeed, Solver, External };
  Kind kind = Kind::External;
  std::uint64_t seed = 0;
  int restarts = 0;
  int iterations = 0;
  bool unconstrained = false;
};

/// Unit vector whose Weyl-Heisenberg orbit is a SIC candidate.
class Fiducial {
 public:
  Fiducial(ComplexVector v, Provenance prov = {}) : vector_(std::move(v)), provenance_(prov) {
    if (vector_.size() < 2) throw DimensionError("Fiducial: dimension >= 2 required");
    const double n = vector_.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw PreconditionError("Fiducial: zero or non-finite vector");
    // Already-canonical input is left bit-identical, so that serialized
    // fiducials survive parse/serialize unchanged.
    if (std::abs(n - 1.0) > 8 * std::numeric_limits<double>::epsilon()) vector_ /= n;
    // Canonical global phase: largest-magnitude component real and positive.
    Eigen::Index arg = 0;
    vector_.cwiseAbs().maxCoeff(&arg);
    if (vector_(arg).imag() != 0.0 || vector_(arg).real() < 0.0) {
      vector_ *= std::polar(1.0, -std::arg(vector_(arg)));
      vector_(arg) = Complex(vector_(arg).real(), 0.0);
    }
  }
  int dim() const { return static_cast<int>(vector_.size()); }
  const ComplexVector& vector() const { return vector_; }
  const Provenance& provenance() const { return provenance_; }

 private:
  ComplexVector vector_;
  Provenance provenance_;
};

/// Known fiducials for d = 2 (Bloch vector (1,1,1)/sqrt 3) and d = 3 ((0,1,-1)/sqrt 2).
inline std::optional<Fiducial> analytic_fiducial(int d) {
  Provenance prov{Provenance::Kind::AnalyticSeed};
  if (d == 2) {
    const double c = 1.0 / std::sqrt(3.0);
    ComplexVector v(2);
    v << std::sqrt((1.0 + c) / 2.0), std::polar(std::sqrt((1.0 - c) / 2.0), std::numbers::pi / 4.0);
    return Fiducial(v, prov);
  }
  if (d == 3) {
    ComplexVector v(3);
    v << 0.0, 1.0, -1.0;
    return Fiducial(v, prov);
  }
  return std::nullopt;
}

/// Pi_{p,q} = D_{p,q}|psi><psi|D_{p,q}^dagger in (p, q) lexicographic order.
inline std::vector<HermitianOperator> wh_orbit(const ComplexVector& psi) {
  const int d = static_cast<int>(psi.size());
  if (d < 2) throw DimensionError("wh_orbit: d >= 2 required");
  std::vector<HermitianOperator> out;
  out.reserve(static_cast<std::size_t>(d) * d);
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) out.push_back(HermitianOperator::projector(apply_displacement(p, q, psi)));
  }
  return out;
}
inline std::vector<HermitianOperator> wh_orbit(const Fiducial& f) { return wh_orbit(f.vector()); }

/// Largest |tr(Pi_j Pi_k) - 1/(d+1)| over j != k.
inline double max_fidelity_error(std::span<const HermitianOperator> ops) {
  const int d = ops.front().dim();
  const double target = 1.0 / (d + 1.0);
  double worst = 0.0;
  for (std::size_t j = 0; j < ops.size(); ++j)
    for (std::size_t k = j + 1; k < ops.size(); ++k)
      worst = std::max(worst, std::abs(trace_product(ops[j].matrix(), ops[k].matrix()) - target));
  return worst;
}

inline void require_rank_one_projectors(std::span<const HermitianOperator> ops, double tol,
                                        const char* who) {
  for (const auto& op : ops) {
    const ComplexMatrix& m = op.matrix();
    if (std::abs(op.trace() - 1.0) > tol || max_abs(m * m - m) > tol) {
      throw PreconditionError(std::string(who) + ": element is not a trace-1 rank-1 projector");
    }
  }
}

/// Certifies d^2 rank-1 projectors as a SIC: pairwise tr(Pi_j Pi_k) = 1/(d+1)
/// and sum_j Pi_j = d I, both to `tol`.
inline CheckReport verify_sic(std::span<const HermitianOperator> ops, double tol = kSicTol,
                              double projector_tol = kProjectorTol) {
  if (ops.empty()) throw DimensionError("verify_sic: empty ensemble");
  const int d = ops.front().dim();
  if (ops.size() != static_cast<std::size_t>(d) * d) {
    throw DimensionError("verify_sic: expected d^2 = " + std::to_string(d * d) + " elements, got " +
                         std::to_string(ops.size()));
  }
  for (const auto& op : ops)
    if (op.dim() != d) throw DimensionError("verify_sic: mixed dimensions");
  require_rank_one_projectors(ops, projector_tol, "verify_sic");

  CheckReport r("verify_sic", "tr(Pi_j Pi_k) = (d delta_jk + 1)/(d + 1); sum_j Pi_j = d I");
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& op : ops) sum += op.matrix();
  const double fid = max_fidelity_error(ops);
  const double frame = max_abs(sum - double(d) * ComplexMatrix::Identity(d, d));
  r.residuals["max_fidelity_error"] = fid;
  r.residuals["frame_sum_error"] = frame;
  r.tolerances["max_fidelity_error"] = tol;
  r.tolerances["frame_sum_error"] = tol;
  r.verdicts["equiangular"] = fid <= tol;
  r.verdicts["resolves_identity"] = frame <= tol;
  r.pass = fid <= tol && frame <= tol;
  return r;
}

/// d^2 certified rank-1 projectors with pairwise fidelity 1/(d+1).
class SicEnsemble {
 public:
  /// Throws PreconditionError if the candidate fails verify_sic at `tol`.
  static SicEnsemble certify(std::vector<HermitianOperator> ops, double tol = kSicTol) {
    const CheckReport r = verify_sic(ops, tol);
    if (!r.pass) {
      throw PreconditionError("SicEnsemble: candidate is not a SIC (max fidelity error " +
                              std::to_string(r.residuals.at("max_fidelity_error")) + ")");
    }
    SicEnsemble e;
    e.projectors_ = std::move(ops);
    e.max_fidelity_error_ = r.residuals.at("max_fidelity_error");
    return e;
  }
  static SicEnsemble from_fiducial(const Fiducial& f, double tol = kSicTol) {
    return certify(wh_orbit(f), tol);
  }

  int dim() const { return projectors_.front().dim(); }
  int size() const { return static_cast<int>(projectors_.size()); }
  const std::vector<HermitianOperator>& projectors() const { return projectors_; }
  const HermitianOperator& operator[](int j) const { return projectors_[static_cast<std::size_t>(j)]; }
  double max_fidelity_error() const { return max_fidelity_error_; }

 private:
  SicEnsemble() = default;
  std::vector<HermitianOperator> projectors_;
  double max_fidelity_error_ = 0.0;
};

// ---------------------------------------------------------------------------
// Weighted state sets, frame potentials, designs

/// States |psi_j> with positive weights summing to d.
class WeightedStateSet {
 public:
  WeightedStateSet(std::vector<ComplexVector> states, std::vector<double> weights)
      : states_(std::move(states)), weights_(std::move(weights)) {
    if (states_.empty() || states_.size() != weights_.size()) {
      throw DimensionError("WeightedStateSet: need equally many states and weights");
    }
    const auto d = states_.front().size();
    double total = 0.0;
    for (std::size_t j = 0; j < states_.size(); ++j) {
      if (states_[j].size() != d) throw DimensionError("WeightedStateSet: mixed dimensions");
      const double n = states_[j].norm();
      if (!(n > 0.0)) throw PreconditionError("WeightedStateSet: zero state");
      states_[j] /= n;
      if (!(weights_[j] > 0.0)) throw PreconditionError("WeightedStateSet: weights must be positive");
      total += weights_[j];
    }
    if (std::abs(total - double(d)) > 1e-10) {
      throw PreconditionError("WeightedStateSet: weights must sum to d (got " + std::to_string(total) + ")");
    }
  }
  /// Uniform weights d / n.
  static WeightedStateSet uniform(std::vector<ComplexVector> states) {
    const double w = double(states.front().size()) / double(states.size());
    std::vector<double> weights(states.size(), w);
    return WeightedStateSet(std::move(states), std::move(weights));
  }

  int dim() const { return static_cast<int>(states_.front().size()); }
  int size() const { return static_cast<int>(states_.size()); }
  const std::vector<ComplexVector>& states() const { return states_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<ComplexVector> states_;
  std::vector<double> weights_;
};

/// Phi_t = sum_{j,k} w_j w_k |<psi_j|psi_k>|^{2t}.
inline double frame_potential(const WeightedStateSet& s, int t) {
  if (t < 1) throw PreconditionError("frame_potential: t >= 1 required");
  double acc = 0.0;
  for (int j = 0; j < s.size(); ++j) {
    for (int k = 0; k < s.size(); ++k) {
      const double f = std::norm(s.states()[j].dot(s.states()[k]));
      acc += s.weights()[j] * s.weights()[k] * std::pow(f, t);
    }
  }
  return acc;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// d^2 / C(d+t-1, t): the minimum of Phi_t, attained exactly by weighted t-designs.
inline double frame_potential_bound(int d, int t) {
  return double(d) * d / double(binomial(static_cast<std::uint64_t>(d + t - 1), static_cast<std::uint64_t>(t)));
}

/// Minimum number of elements of a weighted t-design.
inline std::uint64_t t_design_lower_bound(int d, int t) {
  if (d < 1 || t < 1) throw PreconditionError("t_design_lower_bound: d, t >= 1 required");
  const std::uint64_t up = static_cast<std::uint64_t>((t + 1) / 2);
  const std::uint64_t down = static_cast<std::uint64_t>(t / 2);
  return binomial(d + up - 1, up) * binomial(d + down - 1, down);
}

/// Welch bound (d - mu d)/(1 - mu d) on the number of equiangular lines with
/// pairwise fidelity mu. Throws when mu >= 1/d, where only n <= d^2 applies.
inline double welch_bound(int d, double mu) {
  if (mu < 0.0) throw PreconditionError("welch_bound: mu must be non-negative");
  if (mu * d >= 1.0) throw PreconditionError("welch_bound: mu >= 1/d; use the absolute bound d^2");
  return (d - mu * d) / (1.0 - mu * d);
}

/// Weighted 2-design test: sum_j w_j (|psi_j><psi_j|)^{(x)2} = 2/(d+1) P_s.
inline CheckReport check_2design(const WeightedStateSet& s, double tol = kSicTol) {
  const int d = s.dim();
  CheckReport r("check_2design", "sum_j w_j (|psi_j><psi_j|)^(x)2 = 2/(d+1) P_s");
  ComplexMatrix acc = ComplexMatrix::Zero(d * d, d * d);
  for (int j = 0; j < s.size(); ++j) {
    const ComplexMatrix v = s.states()[j];
    const ComplexVector pp = kron(v, v).col(0);
    acc.noalias() += s.weights()[j] * (pp * pp.adjoint());
  }
  const ComplexMatrix target = 2.0 / (d + 1.0) * sym_antisym_projectors(d).symmetric;
  const double res = max_abs(acc - target);
  r.residuals["design_error"] = res;
  r.tolerances["design_error"] = tol;
  r.pass = res <= tol;
  r.verdicts["weighted_2design"] = r.pass;
  r.verdicts["minimal"] = s.size() == d * d;
  if (r.pass && s.size() == d * d) {
    // A minimal weighted 2-design has uniform weights 1/d and is a SIC.
    double wdev = 0.0;
    for (double w : s.weights()) wdev = std::max(wdev, std::abs(w - 1.0 / d));
    std::vector<HermitianOperator> ops;
    for (const auto& v : s.states()) ops.push_back(HermitianOperator::projector(v));
    const CheckReport sic = verify_sic(ops, 10 * tol);
    r.residuals["weight_deviation"] = wdev;
    r.residuals["max_fidelity_error"] = sic.residuals.at("max_fidelity_error");
    r.verdicts["uniform_weights"] = wdev <= 10 * tol;
    r.verdicts["sic"] = sic.pass;
    r.pass = r.pass && wdev <= 10 * tol && sic.pass;
  }
  return r;
}

/// Tight IC test of a POVM: F = d sum_j |E_j>><<E_j| / tr(E_j) = alpha I + beta |1>><<1|
/// with alpha, beta > 0; efficient when alpha = d/(d+1).
inline CheckReport check_tight_ic(std::span<const HermitianOperator> povm, double tol = kSicTol) {
  if (povm.empty()) throw DimensionError("check_tight_ic: empty POVM");
  const int d = povm.front().dim();
  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  ComplexMatrix frame = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& e : povm) {
    if (e.dim() != d) throw DimensionError("check_tight_ic: mixed dimensions");
    const double tr = e.trace();
    if (std::abs(tr) <= tol) throw PreconditionError("check_tight_ic: zero-trace element");
    if (hermitian_eigenvalues(e.matrix()).front() < -tol) {
      throw PreconditionError("check_tight_ic: element is not positive semidefinite");
    }
    total += e.matrix();
    const ComplexVector v = vectorize(e);
    frame.noalias() += (double(d) / tr) * (v * v.adjoint());
  }
  if (max_abs(total - ComplexMatrix::Identity(d, d)) > tol) {
    throw PreconditionError("check_tight_ic: elements do not sum to the identity");
  }
  CheckReport r("check_tight_ic", "d sum_j |E_j>><<E_j|/tr(E_j) = alpha I + beta |1>><<1|");
  const ComplexVector one = vectorize(ComplexMatrix::Identity(d, d));
  const double top = (one.adjoint() * frame * one)(0, 0).real() / d;  // alpha + d beta
  const double alpha = (frame.trace().real() - top) / (d * d - 1.0);
  const double beta = (top - alpha) / d;
  const ComplexMatrix model =
      alpha * ComplexMatrix::Identity(d * d, d * d) + beta * (one * one.adjoint());
  const double res = max_abs(frame - model);
  r.constants = FrameConstants{alpha, beta, beta / (alpha + d * beta)};
  r.residuals["frame_error"] = res;
  r.residuals["efficiency_gap"] = std::abs(alpha - d / (d + 1.0));
  r.tolerances["frame_error"] = tol;
  r.tolerances["efficiency_gap"] = tol;
  r.verdicts["two_point_spectrum"] = res <= tol;
  r.verdicts["informationally_complete"] = alpha > tol && beta > tol;
  r.pass = r.verdict("two_point_spectrum") && r.verdict("informationally_complete");
  r.verdicts["efficient"] = r.pass && std::abs(alpha - d / (d + 1.0)) <= tol;
  return r;
}

// ---------------------------------------------------------------------------
// Frame-potential minimization

/// Phi_2 of the WH orbit of psi with uniform weights 1/d:
/// sum_{p,q} |<psi|D_{p,q}|psi>|^4 (O(d^3) thanks to covariance).
inline double wh_frame_potential(const ComplexVector& psi) {
  const int d = static_cast<int>(psi.size());
  const ComplexVector u = psi / psi.norm();
  double acc = 0.0;
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q) acc += std::pow(std::norm(u.dot(apply_displacement(p, q, u))), 2);
  return acc;
}

/// Phi_2 - 2d/(d+1) for the WH orbit of psi, evaluated as the sum of squared
/// fidelity residuals so that it stays accurate (and non-negative) near zero.
inline double wh_frame_potential_gap(const ComplexVector& psi) {
  const int d = static_cast<int>(psi.size());
  const ComplexVector u = psi / psi.norm();
  double acc = 0.0;
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) {
      if (p == 0 && q == 0) continue;
      const double r = std::norm(u.dot(apply_displacement(p, q, u))) - 1.0 / (d + 1.0);
      acc += r * r;
    }
  }
  return acc;
}

namespace detail {

/// Value and Riemannian gradient (in the real embedding C^n = R^{2n}) of an
/// objective on a product of unit spheres.
struct Evaluation {
  double value = 0.0;
  ComplexVector gradient;
};

/// WH-covariant objective on the unit sphere, written as the gap
/// sum_{(p,q) != 0} (|<psi|X^p Z^q|psi>|^2 - 1/(d+1))^2 = Phi_2 - 2d/(d+1).
/// The residual form avoids cancellation near the minimum; the tau phases of
/// D_{p,q} drop out of |c|^2.
inline Evaluation wh_objective(const ComplexVector& psi, const std::vector<Complex>& omega) {
  const int d = static_cast<int>(psi.size());
  const double mu = 1.0 / (d + 1.0);
  Evaluation e;
  e.gradient = ComplexVector::Zero(d);
  ComplexVector fwd(d), bwd(d);
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) {
      if (p == 0 && q == 0) continue;
      Complex c = 0.0;
      for (int k = 0; k < d; ++k) {
        const int src = (k - p + d) % d;
        fwd(k) = omega[static_cast<std::size_t>((q * src) % d)] * psi(src);
        c += std::conj(psi(k)) * fwd(k);
        bwd(k) = std::conj(omega[static_cast<std::size_t>((q * k) % d)]) * psi((k + p) % d);
      }
      const double r = std::norm(c) - mu;
      e.value += r * r;
      // d r^2 / d conj(psi) = 2 r (conj(c) A psi + c A^dagger psi); the
      // real-embedding gradient is twice the Wirtinger derivative.
      e.gradient += (4.0 * r) * (std::conj(c) * fwd + c * bwd);
    }
  }
  e.gradient -= psi.dot(e.gradient).real() * psi;
  return e;
}

/// Residuals r_pq = |<psi|X^p Z^q|psi>|^2 / |psi|^4 - 1/(d+1), (p,q) != 0, and
/// their Jacobian in the real coordinates (Re psi, Im psi) at a unit psi.
/// Global phase and norm are null directions of the Jacobian.
inline void wh_residuals(const ComplexVector& psi, const std::vector<Complex>& omega, RealVector& r, RealMatrix& jac) {
  const int d = static_cast<int>(psi.size());
  const double mu = 1.0 / (d + 1.0);
  r.resize(d * d - 1);
  jac.resize(d * d - 1, 2 * d);
  ComplexVector fwd(d), bwd(d);
  int row = 0;
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) {
      if (p == 0 && q == 0) continue;
      Complex c = 0.0;
      for (int k = 0; k < d; ++k) {
        const int src = (k - p + d) % d;
        fwd(k) = omega[static_cast<std::size_t>((q * src) % d)] * psi(src);
        c += std::conj(psi(k)) * fwd(k);
        bwd(k) = std::conj(omega[static_cast<std::size_t>((q * k) % d)]) * psi((k + p) % d);
      }
      const double c2 = std::norm(c);
      r(row) = c2 - mu;
      for (int k = 0; k < d; ++k) {
        // dc along e_k: fwd_k + conj(bwd_k); along i e_k: -i fwd_k + i conj(bwd_k).
        const Complex dre = fwd(k) + std::conj(bwd(k));
        const Complex dim = Complex(0, -1) * fwd(k) + Complex(0, 1) * std::conj(bwd(k));
        jac(row, k) = 2.0 * (std::conj(c) * dre).real() - 4.0 * c2 * psi(k).real();
        jac(row, d + k) = 2.0 * (std::conj(c) * dim).real() - 4.0 * c2 * psi(k).imag();
      }
      ++row;
    }
  }
}

/// Levenberg-Marquardt on the residual vector. Near a degenerate minimum the
/// gap is quartic in the distance while the residuals are only quadratic, so
/// this converges where gradient descent on the gap stalls.
inline ComplexVector polish_wh(ComplexVector psi, const std::vector<Complex>& omega, int max_iters = 100,
                               int* used = nullptr) {
  const int d = static_cast<int>(psi.size());
  psi.normalize();
  RealVector r;
  RealMatrix jac;
  wh_residuals(psi, omega, r, jac);
  double gap = r.squaredNorm();
  double damping = 1e-6;
  int it = 0;
  for (; it < max_iters && gap > 1e-32 && damping < 1e8; ++it) {
    const RealMatrix a = jac.transpose() * jac;
    const RealVector g = jac.transpose() * r;
    const double scale = std::max(a.diagonal().maxCoeff(), 1e-300);
    const RealVector step =
        (a + damping * scale * RealMatrix::Identity(2 * d, 2 * d)).ldlt().solve(-g);
    ComplexVector trial(d);
    for (int k = 0; k < d; ++k) trial(k) = psi(k) + Complex(step(k), step(d + k));
    trial.normalize();
    RealVector rt;
    RealMatrix jt;
    wh_residuals(trial, omega, rt, jt);
    const double gt = rt.squaredNorm();
    if (gt < gap) {
      psi = std::move(trial);
      r = std::move(rt);
      jac = std::move(jt);
      gap = gt;
      damping = std::max(damping / 3.0, 1e-12);
    } else {
      damping *= 4.0;
    }
  }
  if (used) *used = it;
  return psi;
}

inline std::vector<Complex> roots_of_unity(int d) {
  std::vector<Complex> w(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) w[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * std::numbers::pi * k / d);
  return w;
}

/// Unconstrained objective (1/d^2) sum_{j,k} |<psi_j|psi_k>|^4 over d^2
/// independent unit vectors stacked into one column.
inline Evaluation free_objective(const ComplexVector& x, int d) {
  const int n = d * d;
  Evaluation e;
  e.gradient = ComplexVector::Zero(x.size());
  const Eigen::Map<const ComplexMatrix> states(x.data(), d, n);
  const ComplexMatrix g = states.adjoint() * states;  // g(j,k) = <psi_j|psi_k>
  const RealMatrix g2 = g.cwiseAbs2();
  e.value = g2.cwiseProduct(g2).sum() / (double(d) * d);
  Eigen::Map<ComplexMatrix> grad(e.gradient.data(), d, n);
  // d f / d conj(psi_m) = (4/d^2) sum_k |g_mk|^2 g_mk psi_k; real gradient doubles it.
  const ComplexMatrix weights = g.cwiseProduct(g2.cast<Complex>()).transpose();
  grad = (8.0 / (double(d) * d)) * states * weights.transpose();
  for (int j = 0; j < n; ++j) grad.col(j) -= states.col(j).dot(grad.col(j)).real() * states.col(j);
  return e;
}

inline void normalize_blocks(ComplexVector& x, int block) {
  for (Eigen::Index s = 0; s < x.size(); s += block) x.segment(s, block).normalize();
}

struct DescentResult {
  ComplexVector x;
  double value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
};

/// Riemannian gradient descent with Barzilai-Borwein steps, a nonmonotone
/// Armijo safeguard, and retraction by renormalization of each block.
template <typename Objective>
DescentResult descend(ComplexVector x, int block, Objective&& objective, int max_iters, double grad_tol) {
  constexpr int kMemory = 8;
  constexpr double kArmijo = 1e-4;
  normalize_blocks(x, block);
  Evaluation cur = objective(x);
  std::vector<double> history{cur.value};
  double step = 1.0 / std::max(1.0, cur.gradient.norm());
  DescentResult out;
  int it = 0;
  for (; it < max_iters; ++it) {
    const double gnorm = cur.gradient.norm();
    if (gnorm < grad_tol) break;
    const double ref = *std::max_element(history.begin(), history.end());
    ComplexVector trial;
    Evaluation next;
    for (int bt = 0;; ++bt) {
      trial = x - step * cur.gradient;
      normalize_blocks(trial, block);
      next = objective(trial);
      if (next.value <= ref - kArmijo * step * gnorm * gnorm || bt >= 60) break;
      step *= 0.5;
    }
    const ComplexVector s = trial - x;
    const ComplexVector y = next.gradient - cur.gradient;
    const double sy = s.dot(y).real();
    if (sy > 0.0) {
      step = (it % 2 == 0) ? s.squaredNorm() / sy : sy / y.squaredNorm();
    } else {
      step *= 2.0;
    }
    step = std::clamp(step, 1e-12, 1e6);
    x = std::move(trial);
    cur = std::move(next);
    history.push_back(cur.value);
    if (history.size() > kMemory) history.erase(history.begin());
  }
  out.x = std::move(x);
  out.value = cur.value;
  out.gradient_norm = cur.gradient.norm();
  out.iterations = it;
  return out;
}

}  // namespace detail

struct SolverConfig {
  std::uint64_t seed = 1;
  int restarts = 20;
  int max_iters = 50000;
  double grad_tol = 1e-12;
  /// Success threshold on Phi_2 - 2d/(d+1).
  double accept_tol = 1e-10;
  /// Stop after the first wave of restarts that contains a success.
  bool stop_on_success = true;
  /// Optimize d^2 independent states instead of a WH orbit.
  bool unconstrained = false;
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  /// Optional starting vector used by restart 0.
  std::optional<ComplexVector> initial;
};

struct RestartSummary {
  int index = 0;
  double frame_potential = 0.0;
  double gap = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
};

struct SolveResult {
  Fiducial fiducial;
  /// The d^2 states of the best restart (the WH orbit unless unconstrained).
  std::vector<ComplexVector> states;
  double frame_potential = 0.0;
  double gap = 0.0;
  bool success = false;
  int best_restart = 0;
  std::vector<RestartSummary> restarts;
};

}  // namespace sicforge

#include "sicforge/detail/solver_impl.hpp"

#endif  // SICFORGE_SIC_HPP
