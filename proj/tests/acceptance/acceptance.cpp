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

// Acceptance gate: runs every acceptance criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit status is non-zero if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../../tools/cli.hpp"
#include "../fixtures.hpp"
#include "sicforge/io.hpp"

namespace fs = std::filesystem;
using namespace sicforge;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure; later ones only bump the count.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_ == 0) first_ = what;
    ++failures_;
  }
  Outcome outcome(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, std::to_string(failures_) + " failure(s), first: " + first_};
  }

 private:
  int failures_ = 0;
  std::string first_;
};

std::string num(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / "sicforge_acceptance";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string work_file(const std::string& name) { return (work_dir() / name).string(); }

// 1. Solver reaches SIC accuracy for d = 2..7 within the time budget.
Outcome sic_construction() {
  Tally t;
  double worst_fid = 0.0, worst_gap = 0.0, slowest = 0.0;
  for (int d = 2; d <= 7; ++d) {
    const std::string file = work_file("c1_fid" + std::to_string(d) + ".json");
    const auto start = std::chrono::steady_clock::now();
    const CliRun r = cli_run({"solve", "--dim", std::to_string(d), "-o", file, "--format", "json"});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    slowest = std::max(slowest, secs);
    t.expect(r.code == cli::kExitPass, "solve d=" + std::to_string(d) + " exit " + std::to_string(r.code));
    if (r.code != cli::kExitPass) continue;
    const Fiducial f = fiducial_from_json(read_json_file(file));
    const double fid = max_fidelity_error(wh_orbit(f));
    const double gap = wh_frame_potential_gap(f.vector());
    worst_fid = std::max(worst_fid, fid);
    worst_gap = std::max(worst_gap, gap);
    t.expect(fid < 1e-8, "fidelity error " + num(fid) + " at d=" + std::to_string(d));
    t.expect(gap < 1e-10, "Phi_2 gap " + num(gap) + " at d=" + std::to_string(d));
    t.expect(secs < 60.0, "runtime " + num(secs) + " s at d=" + std::to_string(d));
  }
  return t.outcome("max fidelity error " + num(worst_fid) + ", max Phi_2 gap " + num(worst_gap) + ", slowest " +
                   num(slowest) + " s");
}

// 2. Trichotomy legs agree on engineered bases; gamma = beta/(alpha + d beta).
Outcome trichotomy() {
  Tally t;
  double worst_gamma = 0.0;
  int tight = 0, generic = 0;
  for (int d = 2; d <= 4; ++d) {
    for (int i = 0; i < 100; ++i) {
      Rng rng = derive_rng(2002, static_cast<std::uint64_t>(1000 * d + i));
      const std::string where = " (d=" + std::to_string(d) + ", sample " + std::to_string(i) + ")";
      if (i % 2 == 0) {
        std::uniform_real_distribution<double> ua(0.5, 2.0);
        const double alpha = ua(rng);
        std::uniform_real_distribution<double> ub(-0.9 * alpha / d, 1.5);
        const double beta = ub(rng);
        const OperatorBasis basis = testing::tight_frame_basis(d, alpha, beta, rng);
        const CheckReport r = check_trichotomy(basis);
        const double expected = beta / (alpha + d * beta);
        const double err = std::abs(r.constants->gamma - expected);
        const double err_tr = std::abs(fit_alpha_beta(basis).gamma_from_traces - expected);
        worst_gamma = std::max({worst_gamma, err, err_tr});
        t.expect(r.verdict("gram_form") && r.verdict("tensor_form") && r.verdict("frame_form"),
                 "tight basis leg failed" + where);
        t.expect(r.pass, "constants disagree" + where);
        t.expect(err <= 1e-10 && err_tr <= 1e-10, "gamma error " + num(std::max(err, err_tr)) + where);
        ++tight;
      } else {
        const CheckReport r = check_trichotomy(testing::generic_basis(d, rng));
        t.expect(r.verdict("legs_agree"), "legs disagree" + where);
        t.expect(!r.verdict("frame_form"), "generic basis passed" + where);
        ++generic;
      }
    }
  }
  return t.outcome(std::to_string(tight) + " tight bases (all legs hold), " + std::to_string(generic) +
                   " generic (all legs fail); max gamma error " + num(worst_gamma));
}

// 3. m(d, L) = -1/d on SIC bases, <= -1/d on random orthonormal bases.
Outcome mdl_bound() {
  Tally t;
  double worst_sic = 0.0, worst_excess = -INFINITY;
  for (int d = 2; d <= 7; ++d) {
    const SicEnsemble sic = testing::solver_sic(d);
    for (int ep : {1, -1}) {
      const double err = std::abs(m_dl(adjoint_sic_basis(sic, 1, ep)) + 1.0 / d);
      worst_sic = std::max(worst_sic, err);
      t.expect(err <= 1e-9, "SIC basis m_dl off by " + num(err) + " at d=" + std::to_string(d));
    }
    for (int i = 0; i < 50; ++i) {
      Rng rng = derive_rng(3003, static_cast<std::uint64_t>(100 * d + i));
      const double excess = m_dl(random_orthonormal_hermitian_basis(d, rng)) + 1.0 / d;
      worst_excess = std::max(worst_excess, excess);
      t.expect(excess <= 1e-12, "random basis exceeds bound by " + num(excess) + " at d=" + std::to_string(d));
    }
  }
  return t.outcome("SIC bases |m + 1/d| <= " + num(worst_sic) + "; random bases max m + 1/d = " + num(worst_excess));
}

// 4. Adjoint matrices over SIC bases are of stochastic type.
Outcome stochastic_type() {
  Tally t;
  int count = 0;
  double worst_min = INFINITY, worst_sum = 0.0;
  for (int d = 2; d <= 5; ++d) {
    const OperatorBasis basis = adjoint_sic_basis(testing::solver_sic(d));
    for (bool anti : {false, true}) {
      for (int i = 0; i < 100; ++i) {
        Rng rng = derive_rng(4004, static_cast<std::uint64_t>(1000 * d + i));
        const ComplexMatrix u = haar_unitary(d, rng);
        const RealMatrix r = anti ? antiunitary_adjoint(u, basis).matrix : adjoint_matrix(u, basis).matrix;
        const double min_shifted = r.minCoeff() + 1.0 / d;
        const double sums = std::max((r.rowwise().sum().array() - 1.0).abs().maxCoeff(),
                                     (r.colwise().sum().array() - 1.0).abs().maxCoeff());
        worst_min = std::min(worst_min, min_shifted);
        worst_sum = std::max(worst_sum, sums);
        const std::string where = " (d=" + std::to_string(d) + (anti ? ", antiunitary" : "") + ")";
        t.expect(min_shifted >= -1e-9, "entry below -1/d by " + num(-min_shifted) + where);
        t.expect(sums <= 1e-9, "row/column sum error " + num(sums) + where);
        t.expect(stochastic_decompose(r).stochastic_type, "decomposition rejects sample" + where);
        ++count;
      }
    }
  }
  return t.outcome(std::to_string(count) + "/" + std::to_string(count) + " samples stochastic; min entry + 1/d = " +
                   num(worst_min) + ", max sum error " + num(worst_sum));
}

// 5. Ordered product bound against a brute-force permutation minimum.
Outcome ordered_product() {
  Tally t;
  int saturated = 0;
  for (int i = 0; i < 1000; ++i) {
    Rng rng = derive_rng(5005, static_cast<std::uint64_t>(i));
    const int d = 2 + i % 5;
    // Dyadic rationals keep every sum and product exact.
    std::uniform_int_distribution<int> numer(-32, 32);
    std::vector<double> v(static_cast<std::size_t>(d));
    for (auto& x : v) x = numer(rng) / 16.0;
    if (i % 3 == 0) {
      const double common = numer(rng) / 16.0;
      const int odd = std::uniform_int_distribution<int>(0, d - 1)(rng);
      for (int k = 0; k < d; ++k)
        if (k != odd) v[static_cast<std::size_t>(k)] = common;
    }
    std::vector<double> perm(v);
    std::sort(perm.begin(), perm.end());
    double brute = INFINITY;
    do {
      double acc = 0.0;
      for (int k = 0; k < d; ++k) acc += v[static_cast<std::size_t>(k)] * perm[static_cast<std::size_t>(k)];
      brute = std::min(brute, acc);
    } while (std::next_permutation(perm.begin(), perm.end()));
    bool identical = false;
    for (double c : v) identical = identical || std::count(v.begin(), v.end(), c) >= d - 1;

    const auto r = ordered_product_bound(v);
    const std::string where = " (vector " + std::to_string(i) + ")";
    t.expect(r.product == brute, "product " + num(r.product) + " != brute force " + num(brute) + where);
    t.expect(r.product <= r.bound + 1e-12, "bound violated" + where);
    t.expect(r.saturated == identical, "saturation classifier disagrees" + where);
    saturated += r.saturated ? 1 : 0;
  }
  return t.outcome("1000 vectors exact, bound respected, " + std::to_string(saturated) + " saturated cases classified");
}

// 6. Lie structure matrices of SIC bases: Hermitian, rank 2(d-1), SIC recovered.
Outcome lie_criterion() {
  Tally t;
  double worst_herm = 0.0, worst_recovery = 0.0;
  for (int d = 3; d <= 6; ++d) {
    Rng rng = derive_rng(6006, static_cast<std::uint64_t>(d));
    const SicEnsemble sic = testing::solver_sic(d);
    const auto signs = testing::random_signs(d * d, rng);
    const OperatorBasis basis = build_lie_sic_basis(sic, signs, 2.0, 0.3);
    const LieSicResult res = check_lie_sic_criterion(basis);
    const std::string where = " at d=" + std::to_string(d);
    const double herm = res.report.residuals.at("hermitian");
    worst_herm = std::max(worst_herm, herm);
    t.expect(herm <= 1e-9, "structure matrices not Hermitian (" + num(herm) + ")" + where);
    t.expect(res.report.verdict("rank") && res.report.verdict("rank_stable"), "rank is not 2(d-1)" + where);
    // Independent rank count per structure matrix.
    const LieStructure s = lie_structure(basis);
    for (int j = 0; j < s.size(); ++j) {
      const ComplexMatrix c = s.matrix(j);
      const auto ev = hermitian_eigenvalues(ComplexMatrix((c + c.adjoint()) / 2.0));
      t.expect(numerical_rank(ev) == 2 * (d - 1), "numerical rank of C_" + std::to_string(j) + where);
    }
    t.expect(res.report.pass && res.decomposition.has_value(), "criterion failed" + where);
    if (!res.decomposition) continue;
    double rec = 0.0;
    for (int j = 0; j < sic.size(); ++j)
      rec = std::max(rec, max_abs(res.decomposition->sic[j].matrix() - sic[j].matrix()));
    worst_recovery = std::max(worst_recovery, rec);
    t.expect(rec <= 1e-9, "SIC recovery error " + num(rec) + where);
  }
  return t.outcome("d=3..6 Hermitian to " + num(worst_herm) + ", rank 2(d-1), SIC recovered to " +
                   num(worst_recovery));
}

// 7. Jordan structure matrices of SIC bases.
Outcome jordan_criterion() {
  Tally t;
  double worst_sym = 0.0, worst_a = 0.0, worst_factor = 0.0;
  for (int d = 2; d <= 6; ++d) {
    for (int eps : {1, -1}) {
      const OperatorBasis basis = build_jordan_sic_basis(testing::solver_sic(d), eps);
      const std::string where = " at d=" + std::to_string(d) + ", e=" + std::to_string(eps);
      const double a = jordan_shift(d, eps);
      const JordanStructure js = jordan_structure(basis);
      double sym = js.max_imag_part;
      for (int j = 0; j < js.size(); ++j) {
        const RealMatrix c = js.matrix(j);
        sym = std::max(sym, max_abs(c - c.transpose()));
        const auto ev = symmetric_eigenvalues(RealMatrix((c + c.transpose()) / 2.0 +
                                                         2.0 * a * RealMatrix::Identity(c.rows(), c.cols())));
        t.expect(numerical_rank(ev) == 2 * d - 1, "shifted rank of C_" + std::to_string(j) + where);
      }
      worst_sym = std::max(worst_sym, sym);
      t.expect(sym <= 1e-9, "not real symmetric (" + num(sym) + ")" + where);

      const CheckReport form = check_jordan_sic_form(basis);
      t.expect(form.pass, "form check failed" + where);
      if (form.values.count("a")) {
        const double aerr = std::abs(form.values.at("a") - a);
        worst_a = std::max(worst_a, aerr);
        t.expect(aerr <= 1e-10, "fitted a off by " + num(aerr) + where);
      }
      for (const char* k : {"factorization", "orthogonality", "projectors"}) {
        const auto it = form.residuals.find(k);
        t.expect(it != form.residuals.end() && it->second <= 1e-9, std::string(k) + " residual" + where);
        if (it != form.residuals.end()) worst_factor = std::max(worst_factor, it->second);
      }
      if (d >= 3) {
        const JordanSicResult res = check_jordan_sic_criterion(basis);
        t.expect(res.report.pass && res.epsilon == eps, "shifted-rank criterion failed" + where);
        const double aerr = std::abs(res.a - a);
        worst_a = std::max(worst_a, aerr);
        t.expect(aerr <= 1e-10, "criterion a off by " + num(aerr) + where);
      }
    }
  }
  return t.outcome("d=2..6 symmetric to " + num(worst_sym) + ", shifted rank 2d-1, a to " + num(worst_a) +
                   ", factor residuals <= " + num(worst_factor));
}

// Hook-content formula, independent of the Weyl product formula.
double hook_content_dimension(const Partition& p, int d) {
  const Partition c = conjugate(p);
  double numer = 1.0, den = 1.0;
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.part(i); ++j) {
      numer *= d + j - i;
      den *= (p.part(i) - j - 1) + (c.part(j) - i - 1) + 1;
    }
  return numer / den;
}

void partitions(int rows, int max_boxes, std::vector<int>& cur, std::vector<Partition>& out) {
  out.emplace_back(cur);
  if (static_cast<int>(cur.size()) == rows) return;
  const int used = std::accumulate(cur.begin(), cur.end(), 0);
  const int top = cur.empty() ? max_boxes : cur.back();
  for (int k = 1; k <= std::min(top, max_boxes - used); ++k) {
    cur.push_back(k);
    partitions(rows, max_boxes, cur, out);
    cur.pop_back();
  }
}

// 8. Adjoint uniqueness among small PU(d) irreps.
Outcome adjoint_uniqueness() {
  Tally t;
  for (int d = 2; d <= 10; ++d) {
    const CheckReport r = certify_adjoint_uniqueness(d);
    t.expect(r.pass, "certification failed at d=" + std::to_string(d));
    t.expect(weyl_dimension(adjoint_partition(d), d) == static_cast<std::uint64_t>(d * d - 1),
             "adjoint dimension at d=" + std::to_string(d));
  }
  const auto s8 = one_column_survivors(8, 63);
  t.expect(std::find(s8.begin(), s8.end(), 4) == s8.end(), "d=8 keeps the height-4 column");
  t.expect(weyl_dimension(Partition({1, 1, 1, 1}), 8) == 70u, "C(8,4) != 70");
  t.expect(one_column_survivors(9, 80) == std::vector<int>{1, 2, 7, 8}, "d=9 survivors differ from {1,2,7,8}");
  for (int d = 2; d <= 5; ++d) {
    const std::uint64_t bound = static_cast<std::uint64_t>(d * d - 1);
    std::vector<Partition> all;
    std::vector<int> cur;
    partitions(d - 1, 12, cur, all);
    std::set<Partition> oracle, found;
    for (const auto& p : all)
      if (hook_content_dimension(p, d) <= bound + 0.5) oracle.insert(p);
    for (const auto& rec : enumerate_small_irreps(d, bound))
      if (rec.box_sum <= 12) found.insert(rec.partition);
    t.expect(oracle == found, "enumeration incomplete at d=" + std::to_string(d));
  }
  return t.outcome("d=2..10 certified; d=8 excludes C(8,4)=70; d=9 survivors {1,2,7,8}; brute force agrees d<=5");
}

// Adjoint-form basis a Pi_j + b written straight from the projectors, so a
// non-SIC orbit can still be handed to `check`.
void write_adjoint_form_basis(const std::vector<HermitianOperator>& proj, const std::string& path) {
  const int d = proj.front().dim();
  const double a = std::sqrt((d + 1.0) / d);
  const double b = -(a / d) * (1.0 - 1.0 / std::sqrt(d + 1.0));
  std::vector<HermitianOperator> ops;
  for (const auto& p : proj) ops.push_back((a * p).shifted(b));
  write_json_file(path, basis_to_json(BasisFile{OperatorBasis(std::move(ops)), {}, Json{{"kind", "adjoint"}}}));
}

// 9. All four formulations agree through the CLI.
Outcome cross_formulation() {
  Tally t;
  for (int d = 3; d <= 5; ++d) {
    const std::string ds = std::to_string(d);
    const std::string fid = work_file("c9_fid" + ds + ".json");
    const std::string basis = work_file("c9_basis" + ds + ".json");
    t.expect(cli_run({"solve", "--dim", ds, "-o", fid}).code == cli::kExitPass, "solve d=" + ds);
    t.expect(cli_run({"basis", "-i", fid, "-o", basis, "--kind", "adjoint"}).code == cli::kExitPass, "basis d=" + ds);

    auto verdicts = [&](const std::string& file, bool expect_pass, const std::string& label) {
      const CliRun r = cli_run({"check", "-i", file, "--formulation", "all", "--format", "json"});
      const Json j = Json::parse(r.out);
      int agree = 0;
      for (const auto& rep : j.at("reports")) {
        const std::string name = rep.at("check");
        if (name == "cross_formulation") continue;
        const bool pass = rep.at("pass").get<bool>();
        t.expect(pass == expect_pass, label + " " + name + (pass ? " passed" : " failed") + " at d=" + ds);
        agree += pass == expect_pass ? 1 : 0;
      }
      t.expect(agree == 4, label + ": " + std::to_string(agree) + "/4 formulations as expected at d=" + ds);
      t.expect(r.code == (expect_pass ? cli::kExitPass : cli::kExitFail), label + " exit code at d=" + ds);
    };
    verdicts(basis, true, "solver SIC");

    // Rotate the fiducial by 1e-4 towards a random orthogonal direction.
    const Fiducial f = fiducial_from_json(read_json_file(fid));
    Rng rng = derive_rng(9009, static_cast<std::uint64_t>(d));
    ComplexVector w = random_unit_vector(d, rng);
    w -= f.vector().dot(w) * f.vector();
    w.normalize();
    const ComplexVector bent = std::cos(1e-4) * f.vector() + std::sin(1e-4) * w;
    std::vector<HermitianOperator> proj;
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) proj.push_back(HermitianOperator::projector(apply_displacement(p, q, bent)));
    const std::string bad = work_file("c9_corrupt" + ds + ".json");
    write_adjoint_form_basis(proj, bad);
    verdicts(bad, false, "corrupted");
  }
  return t.outcome("d=3..5: four passes on solver SIC bases, four fails after a 1e-4 rotation");
}

// 10. rank f_A = 2d - 1 exactly for rank-one A (d != 3), and on the d = 3 family.
Outcome jordan_rank_lemma() {
  Tally t;
  int rank_one = 0;
  for (int d : {2, 4, 5}) {
    for (int i = 0; i < 100; ++i) {
      Rng rng = derive_rng(10010, static_cast<std::uint64_t>(1000 * d + i));
      const int k = std::uniform_int_distribution<int>(1, d)(rng);
      const HermitianOperator a = testing::random_rank_k(d, k, rng);
      const bool full = numerical_rank(jordan_spectrum(a)) == 2 * d - 1;
      t.expect(full == (k == 1), "biconditional fails for rank " + std::to_string(k) + " at d=" + std::to_string(d));
      rank_one += k == 1 ? 1 : 0;
    }
  }
  for (int i = 0; i < 20; ++i) {
    Rng rng = derive_rng(10011, static_cast<std::uint64_t>(i));
    const double lambda = std::uniform_real_distribution<double>(0.2, 3.0)(rng) * (i % 2 ? -1.0 : 1.0);
    const ComplexMatrix u = haar_unitary(3, rng);
    const RealVector spec = (RealVector(3) << lambda, -lambda, -lambda).finished();
    const HermitianOperator a(ComplexMatrix(u * spec.cast<Complex>().asDiagonal() * u.adjoint()));
    t.expect(numerical_rank(jordan_spectrum(a)) == 5, "d=3 family sample " + std::to_string(i) + " is not rank 5");
  }
  return t.outcome("300 random rank-k samples (" + std::to_string(rank_one) +
                   " rank one) and 20 d=3 {l,-l,-l} samples behave as stated");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"SIC construction d=2..7", sic_construction},
      {"trichotomy on engineered bases", trichotomy},
      {"m(d,L) bound and saturation", mdl_bound},
      {"stochastic-type adjoints", stochastic_type},
      {"ordered product bound oracle", ordered_product},
      {"Lie structure criterion", lie_criterion},
      {"Jordan structure criterion", jordan_criterion},
      {"adjoint uniqueness among irreps", adjoint_uniqueness},
      {"cross-formulation equivalence", cross_formulation},
      {"Jordan rank lemma", jordan_rank_lemma},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": " << criteria[i].first << " -- "
              << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " acceptance criteria pass" << std::endl;
  fs::remove_all(work_dir());
  return failed == 0 ? 0 : 1;
}
