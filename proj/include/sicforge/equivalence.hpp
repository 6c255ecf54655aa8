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

#ifndef SICFORGE_EQUIVALENCE_HPP
#define SICFORGE_EQUIVALENCE_HPP

// One verdict per formulation of "this basis comes from a SIC": regular
// simplex, saturated adjoint bound, Lie structure ranks, Jordan structure
// ranks. Each runs the module checks and folds them into a single report.

#include <cmath>
#include <string>
#include <vector>

#include "sicforge/group.hpp"
#include "sicforge/jordan.hpp"
#include "sicforge/lie.hpp"
#include "sicforge/report.hpp"
#include "sicforge/simplex.hpp"

namespace sicforge {

enum class Formulation { Simplex, Group, Lie, Jordan };

inline const char* to_string(Formulation f) {
  switch (f) {
    case Formulation::Simplex:
      return "simplex";
    case Formulation::Group:
      return "group";
    case Formulation::Lie:
      return "lie";
    case Formulation::Jordan:
      break;
  }
  return "jordan";
}

struct FormulationTolerances {
  double simplex = kSimplexTol;
  double group = 1e-9;
  double structure = kLieTol;
  double rank = kDefaultRankTol;
};

namespace detail {

/// Copies a sub-report into `dst` under "<prefix>." keys.
inline void absorb(CheckReport& dst, const CheckReport& src) {
  const std::string p = src.check + ".";
  for (const auto& [k, v] : src.residuals) dst.residuals[p + k] = v;
  for (const auto& [k, v] : src.tolerances) dst.tolerances[p + k] = v;
  for (const auto& [k, v] : src.verdicts) dst.verdicts[p + k] = v;
  for (const auto& [k, v] : src.values) dst.values[p + k] = v;
  for (const auto& n : src.notes) dst.note(src.check + ": " + n);
  if (src.constants && !dst.constants) dst.constants = src.constants;
  dst.verdicts[src.check] = src.pass;
}

inline CheckReport failed(CheckReport r, const std::string& why) {
  r.note(why);
  r.pass = false;
  return r;
}

/// Rescales a basis that is orthonormal up to ell > 0 to exact orthonormality.
inline OperatorBasis normalized_orthonormal(const OperatorBasis& basis) {
  const auto ell = basis.orthonormal_scale();
  if (!ell) throw PreconditionError("basis is not orthonormal up to a scale");
  if (std::abs(*ell - 1.0) <= 1e-12) return basis;
  std::vector<HermitianOperator> ops;
  for (const auto& op : basis.operators()) ops.push_back((1.0 / *ell) * op);
  return OperatorBasis(std::move(ops));
}

}  // namespace detail

/// Failures inside a module check (precondition violations, singular Gram
/// matrices) become failing reports with the exception text as a note.
inline CheckReport check_formulation(const OperatorBasis& basis, Formulation f, const FormulationTolerances& tol = {}) {
  const int d = basis.dim();
  switch (f) {
    case Formulation::Simplex: {
      CheckReport r("simplex", "{L_j} is a regular simplex of the form a_j Pi_j + b_j with {Pi_j} a SIC");
      try {
        detail::absorb(r, check_regular_simplex(basis, tol.simplex));
        const auto dec = decompose_rank1_plus_identity(basis, fit_alpha_beta(basis), tol.simplex);
        detail::absorb(r, dec.report);
        r.pass = r.verdict("check_regular_simplex") && dec.report.pass;
      } catch (const Error& e) {
        return detail::failed(r, e.what());
      }
      return r;
    }
    case Formulation::Group: {
      CheckReport r("group", "m(d, L) = min_U min_jk U^L_jk = -1/d");
      try {
        const OperatorBasis ob = detail::normalized_orthonormal(basis);
        if (std::abs(*basis.orthonormal_scale() - 1.0) > 1e-12) r.note("basis rescaled to unit norm");
        const double m = m_dl(ob);
        r.values["m_dl"] = m;
        r.values["bound"] = -1.0 / d;
        r.residuals["saturation"] = std::abs(m + 1.0 / d);
        r.tolerances["saturation"] = tol.group;
        r.verdicts["bound_holds"] = m <= -1.0 / d + 1e-12;
        r.verdicts["saturated"] = std::abs(m + 1.0 / d) <= tol.group;
        r.pass = r.verdict("saturated");
      } catch (const Error& e) {
        return detail::failed(r, e.what());
      }
      return r;
    }
    case Formulation::Lie: {
      CheckReport r("lie", "each Lie structure matrix has rank 2(d-1)");
      if (d == 2) return detail::failed(r, "the Lie rank criterion needs d >= 3");
      try {
        const auto res = check_lie_sic_criterion(basis, tol.structure, tol.rank);
        detail::absorb(r, res.report);
        r.pass = res.report.pass;
      } catch (const Error& e) {
        return detail::failed(r, e.what());
      }
      return r;
    }
    case Formulation::Jordan: {
      CheckReport r("jordan", "each Jordan structure matrix is symmetric of rank 2d-1 plus a multiple of I");
      try {
        if (d == 2) {
          r.note("d = 2: only the Q + Q^T + 2P - 2a form is available");
          const auto form = check_jordan_sic_form(basis, tol.structure);
          detail::absorb(r, form);
          r.pass = form.pass;
        } else {
          const auto res = check_jordan_sic_criterion(basis, tol.structure, tol.rank);
          detail::absorb(r, res.report);
          r.pass = res.report.pass;
        }
      } catch (const Error& e) {
        return detail::failed(r, e.what());
      }
      return r;
    }
  }
  throw PreconditionError("check_formulation: unknown formulation");
}

/// The four formulations followed by an agreement report that passes when all
/// four verdicts coincide.
inline std::vector<CheckReport> check_all_formulations(const OperatorBasis& basis,
                                                       const FormulationTolerances& tol = {}) {
  std::vector<CheckReport> out;
  for (Formulation f : {Formulation::Simplex, Formulation::Group, Formulation::Lie, Formulation::Jordan})
    out.push_back(check_formulation(basis, f, tol));
  CheckReport agree("cross_formulation", "the four formulations are equivalent");
  int passes = 0;
  for (const auto& r : out) {
    agree.verdicts[r.check] = r.pass;
    passes += r.pass ? 1 : 0;
  }
  agree.values["passes"] = passes;
  agree.pass = passes == 0 || passes == 4;
  if (!agree.pass) agree.note("formulations disagree");
  out.push_back(agree);
  return out;
}

}  // namespace sicforge

#endif  // SICFORGE_EQUIVALENCE_HPP
