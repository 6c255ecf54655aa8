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

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "sicforge/io.hpp"
#include "sicforge/sicforge.hpp"

#ifndef SICFORGE_VERSION
#define SICFORGE_VERSION "0.0.0"
#endif

namespace sicforge::cli {
namespace {

/// Bad flags, bad parameter values, unreadable files.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Tolerances {
  double sic = kSicTol;
  double rank = kDefaultRankTol;
  double stochastic = kStochasticTol;
  double structure = kLieTol;
};

struct RunConfig {
  std::string command;
  int dim = 0;
  std::optional<std::uint64_t> seed_flag;
  std::uint64_t seed = 1;
  int restarts = 20;
  int max_iters = 50000;
  Tolerances tol;
  std::string input;
  std::string output;
  std::string report;
  std::string format = "text";
  bool paper_ref = false;
};

std::uint64_t resolve_seed(const RunConfig& c) {
  if (c.seed_flag) return *c.seed_flag;
  if (const char* env = std::getenv("SICFORGE_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw UsageError(std::string("SICFORGE_SEED is not an unsigned integer: ") + env);
    }
  }
  return 1;
}

/// ISO 8601 UTC from SOURCE_DATE_EPOCH, so identical inputs give identical bytes.
std::optional<std::string> timestamp() {
  const char* env = std::getenv("SOURCE_DATE_EPOCH");
  if (!env || !*env) return std::nullopt;
  std::time_t t = static_cast<std::time_t>(std::strtoll(env, nullptr, 10));
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return std::string(buf);
}

Json config_echo(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["dim"] = c.dim;
  j["seed"] = c.seed;
  j["restarts"] = c.restarts;
  j["max_iters"] = c.max_iters;
  j["tolerances"] = {{"sic", c.tol.sic}, {"rank", c.tol.rank}, {"stochastic", c.tol.stochastic},
                     {"structure", c.tol.structure}};
  j["input"] = c.input;
  j["output"] = c.output;
  j["format"] = c.format;
  return j;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

void print_text(const ReportBundle& b, const RunConfig& c, std::ostream& out) {
  for (const auto& r : b.reports) {
    out << (r.pass ? "[PASS] " : "[FAIL] ") << r.check << "\n";
    if (c.paper_ref && !r.reference.empty()) out << "  identity: " << r.reference << "\n";
    for (const auto& [k, v] : r.residuals) {
      out << "  " << k << " = " << fmt(v);
      if (auto it = r.tolerances.find(k); it != r.tolerances.end()) out << " (tol " << fmt(it->second) << ")";
      out << "\n";
    }
    for (const auto& [k, v] : r.values) out << "  " << k << " = " << fmt(v) << "\n";
    for (const auto& [k, v] : r.verdicts) out << "  " << k << ": " << (v ? "yes" : "no") << "\n";
    if (r.constants) {
      out << "  alpha = " << fmt(r.constants->alpha) << ", beta = " << fmt(r.constants->beta)
          << ", gamma = " << fmt(r.constants->gamma) << "\n";
    }
    for (const auto& n : r.notes) out << "  note: " << n << "\n";
  }
  out << "overall: " << (b.overall() ? "PASS" : "FAIL") << "\n";
}

int emit(const std::vector<CheckReport>& reports, const RunConfig& c, std::ostream& out) {
  ReportBundle b;
  b.tool_version = SICFORGE_VERSION;
  b.timestamp = timestamp();
  b.config = config_echo(c);
  b.reports = reports;
  if (!c.report.empty()) write_json_file(c.report, bundle_to_json(b));
  if (c.format == "json") {
    out << dump(bundle_to_json(b));
  } else {
    print_text(b, c, out);
  }
  return b.overall() ? kExitPass : kExitFail;
}

Json read_input(const RunConfig& c) {
  if (c.input.empty()) throw UsageError("an input file is required (-i)");
  return read_json_file(c.input);
}

std::vector<HermitianOperator> projectors(const std::vector<ComplexVector>& states) {
  std::vector<HermitianOperator> out;
  for (const auto& s : states) out.push_back(HermitianOperator::projector(s));
  return out;
}

std::vector<int> parse_signs(const std::string& text, int n) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "1" || tok == "+1" || tok == "+") {
      out.push_back(1);
    } else if (tok == "-1" || tok == "-") {
      out.push_back(-1);
    } else {
      throw UsageError("--signs entries must be +1 or -1, got '" + tok + "'");
    }
  }
  if (static_cast<int>(out.size()) != n) {
    throw UsageError("--signs needs " + std::to_string(n) + " entries, got " + std::to_string(out.size()));
  }
  return out;
}

void require_sign(int s, const char* flag) {
  if (s != 1 && s != -1) throw UsageError(std::string(flag) + " must be +1 or -1");
}

// ---------------------------------------------------------------------------
// Commands

struct SolveOptions {
  bool unconstrained = false;
  unsigned threads = 0;
};

int cmd_solve(RunConfig& c, const SolveOptions& o, std::ostream& out, std::ostream& err) {
  if (c.dim < 2 || c.dim > 12) throw UsageError("--dim must be in 2..12");
  if (c.dim > 8) err << "warning: d = " << c.dim << " is beyond the tuned range; expect long runs\n";
  if (c.restarts < 1 || c.max_iters < 1) throw UsageError("--restarts and --max-iters must be positive");
  SolverConfig sc;
  sc.seed = c.seed;
  sc.restarts = c.restarts;
  sc.max_iters = c.max_iters;
  sc.unconstrained = o.unconstrained;
  sc.threads = o.threads;
  const SolveResult res = minimize_frame_potential(c.dim, sc);

  CheckReport s("solve", "Phi_2 >= 2d/(d+1), with equality exactly for a SIC");
  s.values["frame_potential"] = res.frame_potential;
  s.values["bound"] = 2.0 * c.dim / (c.dim + 1.0);
  s.values["best_restart"] = res.best_restart;
  s.values["restarts_run"] = static_cast<double>(res.restarts.size());
  s.values["iterations"] = res.restarts[static_cast<std::size_t>(res.best_restart)].iterations;
  s.residuals["phi2_gap"] = res.gap;
  s.tolerances["phi2_gap"] = sc.accept_tol;
  s.verdicts["converged"] = res.success;
  s.pass = res.success;
  if (!res.success) s.note("no restart reached the frame-potential bound; the best candidate was written anyway");

  CheckReport v;
  try {
    v = verify_sic(projectors(res.states), c.tol.sic);
  } catch (const Error& e) {
    v = CheckReport("verify_sic");
    v.note(e.what());
  }
  if (!c.output.empty()) {
    write_json_file(c.output, fiducial_to_json(res.fiducial, o.unconstrained ? &res.states : nullptr));
  }
  return emit({s, v}, c, out);
}

int cmd_verify(RunConfig& c, std::ostream& out) {
  const Json j = read_input(c);
  const Fiducial f = fiducial_from_json(j);
  c.dim = f.dim();
  std::vector<ComplexVector> states;
  if (auto st = states_from_json(j)) {
    states = *st;
  } else {
    for (int p = 0; p < f.dim(); ++p)
      for (int q = 0; q < f.dim(); ++q) states.push_back(apply_displacement(p, q, f.vector()));
  }
  std::vector<CheckReport> reports;
  try {
    reports.push_back(verify_sic(projectors(states), c.tol.sic));
  } catch (const Error& e) {
    CheckReport r("verify_sic");
    r.note(e.what());
    reports.push_back(r);
  }
  reports.push_back(check_2design(WeightedStateSet::uniform(states), c.tol.sic));
  return emit(reports, c, out);
}

struct BasisOptions {
  std::string kind = "adjoint";
  int eps = 1;
  int eps_prime = 1;
  std::string signs;
  double ell = 1.0;
  double eta = 0.0;
  double scale = 1.0;
};

int cmd_basis(RunConfig& c, const BasisOptions& o, std::ostream& out) {
  require_sign(o.eps, "--eps");
  require_sign(o.eps_prime, "--eps-prime");
  if (c.output.empty()) throw UsageError("an output file is required (-o)");
  BasisFile file;
  CheckReport r("basis", "");
  if (o.kind == "random") {
    if (c.dim < 2) throw UsageError("--dim >= 2 is required for a random basis");
    Rng rng = derive_rng(c.seed, 0);
    file.basis = random_orthonormal_hermitian_basis(c.dim, rng);
    file.construction = {{"kind", "random"}, {"seed", c.seed}};
    r.reference = "Haar-random orthonormal Hermitian basis";
  } else {
    const Fiducial f = fiducial_from_json(read_input(c));
    c.dim = f.dim();
    std::optional<SicEnsemble> sic;
    try {
      sic = SicEnsemble::from_fiducial(f, c.tol.sic);
    } catch (const PreconditionError& e) {
      CheckReport fail("basis");
      fail.note(std::string("input is not a SIC fiducial: ") + e.what());
      return emit({fail}, c, out);
    }
    const int d = c.dim;
    const int n = d * d;
    std::vector<int> signs = o.signs.empty() ? std::vector<int>(static_cast<std::size_t>(n), o.eps)
                                             : parse_signs(o.signs, n);
    try {
      if (o.kind == "adjoint") {
        file.basis = adjoint_sic_basis(*sic, signs, o.eps_prime);
        const double a = o.eps * std::sqrt((d + 1.0) / d);
        const double b = -(a / d) * (1.0 - o.eps_prime / std::sqrt(d + 1.0));
        file.construction = {{"kind", "adjoint"}, {"epsilon", o.eps}, {"epsilon_prime", o.eps_prime},
                             {"signs", signs},    {"a", a},           {"b", b}};
        r.reference = "L_j = a_j Pi_j + b, a_j = e_j sqrt((d+1)/d), b = -(a_j/d)(1 - e'/sqrt(d+1))";
        r.values["a"] = a;
        r.values["b"] = b;
      } else if (o.kind == "lie") {
        file.basis = build_lie_sic_basis(*sic, signs, o.ell, o.eta);
        file.construction = {{"kind", "lie"}, {"signs", signs}, {"ell", o.ell}, {"eta", o.eta}};
        r.reference = "L_j = e_j ell (Pi_j + eta), eta != -1/d";
        r.values["ell"] = o.ell;
        r.values["eta"] = o.eta;
      } else if (o.kind == "jordan") {
        const double a = jordan_shift(d, o.eps);
        file.basis = build_jordan_sic_basis(*sic, o.eps, o.scale);
        file.construction = {{"kind", "jordan"}, {"epsilon", o.eps}, {"a", a}, {"c", o.scale}};
        r.reference = "L_j = c (Pi_j - a), a = (d+1 - e sqrt(d+1))/(d(d+1))";
        r.values["a"] = a;
        r.values["c"] = o.scale;
      } else {
        throw UsageError("--kind must be adjoint, lie, jordan or random");
      }
    } catch (const PreconditionError& e) {
      throw UsageError(e.what());
    }
  }
  r.values["dimension"] = c.dim;
  r.pass = true;
  write_json_file(c.output, basis_to_json(file));
  return emit({r}, c, out);
}

int cmd_check(RunConfig& c, const std::string& formulation, std::ostream& out) {
  const BasisFile file = basis_from_json(read_input(c));
  c.dim = file.basis.dim();
  FormulationTolerances tol;
  tol.structure = c.tol.structure;
  tol.rank = c.tol.rank;
  std::vector<CheckReport> reports;
  if (formulation == "all") {
    reports = check_all_formulations(file.basis, tol);
  } else if (formulation == "simplex") {
    reports.push_back(check_formulation(file.basis, Formulation::Simplex, tol));
  } else if (formulation == "group") {
    reports.push_back(check_formulation(file.basis, Formulation::Group, tol));
  } else if (formulation == "lie") {
    reports.push_back(check_formulation(file.basis, Formulation::Lie, tol));
  } else if (formulation == "jordan") {
    reports.push_back(check_formulation(file.basis, Formulation::Jordan, tol));
  } else {
    throw UsageError("--formulation must be simplex, group, lie, jordan or all");
  }
  // Lie bases with mixed signs pass the Lie criterion but are not adjoint
  // SIC bases, so the group verdict differs by construction.
  const Json& cons = file.construction;
  if (cons.is_object() && cons.value("kind", "") == "lie" && cons.contains("signs")) {
    const auto signs = cons["signs"].get<std::vector<int>>();
    if (std::adjacent_find(signs.begin(), signs.end(), std::not_equal_to<>()) != signs.end()) {
      for (auto& r : reports)
        if (r.check == "group" || r.check == "cross_formulation")
          r.note("basis is from the Lie construction with mixed signs; m(d, L) = -1/d is not expected");
    }
  }
  return emit(reports, c, out);
}

int cmd_irreps(RunConfig& c, std::int64_t bound_flag, std::ostream& out) {
  if (c.dim < 2) throw UsageError("--dim >= 2 is required");
  const int d = c.dim;
  const std::uint64_t bound =
      bound_flag > 0 ? static_cast<std::uint64_t>(bound_flag) : static_cast<std::uint64_t>(d) * d - 1;
  const auto recs = enumerate_small_irreps(d, bound);
  CheckReport cert = certify_adjoint_uniqueness(d);
  std::vector<int> survivors = one_column_survivors(d, bound);
  for (int m = 1; m < d; ++m) {
    if (std::find(survivors.begin(), survivors.end(), m) == survivors.end()) {
      cert.note("one-column [" + std::to_string(m) + "]^C excluded: C(" + std::to_string(d) + "," +
                std::to_string(m) + ") = " + std::to_string(binomial(d, m)) + " > " + std::to_string(bound));
    }
  }
  if (c.format == "json") {
    Json list = Json::array();
    for (const auto& r : recs) list.push_back(irrep_to_json(r));
    ReportBundle b;
    b.tool_version = SICFORGE_VERSION;
    b.timestamp = timestamp();
    b.config = config_echo(c);
    b.config["bound"] = bound;
    b.reports = {cert};
    Json j = bundle_to_json(b);
    j["irreps"] = list;
    if (!c.report.empty()) write_json_file(c.report, j);
    out << dump(j);
    return b.overall() ? kExitPass : kExitFail;
  }
  out << "SU(" << d << ") irreps with dimension <= " << bound << "\n";
  out << std::left << std::setw(24) << "partition" << std::setw(20) << "columns" << std::setw(12) << "dimension"
      << std::setw(8) << "boxes"
      << "PU(d)\n";
  for (const auto& r : recs) {
    out << std::left << std::setw(24) << r.partition.to_string() << std::setw(20)
        << Partition(r.columns).to_string() << std::setw(12) << r.dimension << std::setw(8) << r.box_sum
        << (r.pu_compatible ? "yes" : "no") << "\n";
  }
  return emit({cert}, c, out);
}

struct StochasticOptions {
  int samples = 100;
  bool antiunitary = false;
  std::string csv;
};

int cmd_stochastic(RunConfig& c, const StochasticOptions& o, std::ostream& out) {
  if (o.samples < 1) throw UsageError("--samples must be positive");
  const BasisFile file = basis_from_json(read_input(c));
  c.dim = file.basis.dim();
  if (!file.basis.is_orthonormal(kOrthonormalTol)) throw UsageError("stochastic sampling needs an orthonormal basis");
  const auto samples = sample_stochastic_adjoints(file.basis, o.samples, c.seed, o.antiunitary, c.tol.stochastic);
  if (!o.csv.empty()) {
    std::ostringstream os;
    write_samples_csv(os, samples);
    write_text_file(o.csv, os.str());
  }
  CheckReport r("stochastic", o.antiunitary ? "antiunitary adjoints over the basis are of stochastic type"
                                            : "unitary adjoints over the basis are of stochastic type");
  int passes = 0, below = 0;
  double lo = INFINITY, hi = -INFINITY, row = 0.0, col = 0.0;
  for (const auto& s : samples) {
    passes += s.stochastic_type ? 1 : 0;
    below += s.min_entry < -1.0 / c.dim - c.tol.stochastic ? 1 : 0;
    lo = std::min(lo, s.min_entry);
    hi = std::max(hi, s.min_entry);
    row = std::max(row, s.row_sum_error);
    col = std::max(col, s.col_sum_error);
  }
  r.values["samples"] = o.samples;
  r.values["stochastic_type"] = passes;
  r.values["entries_below_minus_1_over_d"] = below;
  r.values["min_entry_lowest"] = lo;
  r.values["min_entry_highest"] = hi;
  r.residuals["row_sum_error"] = row;
  r.residuals["col_sum_error"] = col;
  r.tolerances["row_sum_error"] = r.tolerances["col_sum_error"] = c.tol.stochastic;
  // Histograms of S's minimum entry and of the worse of the two sum errors.
  auto histogram = [&](auto value, double a, double b) {
    constexpr int bins = 10;
    std::vector<int> h(bins, 0);
    const double w = b > a ? (b - a) / bins : 1.0;
    for (const auto& s : samples) {
      const int k = std::clamp(static_cast<int>((value(s) - a) / w), 0, bins - 1);
      ++h[static_cast<std::size_t>(k)];
    }
    std::string text = "[" + fmt(a) + ", " + fmt(b) + "]:";
    for (int x : h) text += " " + std::to_string(x);
    return text;
  };
  r.note("min entry of S histogram " + histogram([](const StochasticSample& s) { return s.min_entry; }, lo, hi));
  r.note("sum error histogram " + histogram([](const StochasticSample& s) {
           return std::max(s.row_sum_error, s.col_sum_error);
         }, 0.0, std::max(row, col)));
  r.pass = passes == o.samples;
  return emit({r}, c, out);
}

int cmd_mdl(RunConfig& c, std::ostream& out) {
  const BasisFile file = basis_from_json(read_input(c));
  c.dim = file.basis.dim();
  if (!file.basis.is_orthonormal(kOrthonormalTol)) throw UsageError("m(d, L) needs an orthonormal basis");
  const MdlResult m = m_dl_detail(file.basis);
  CheckReport r("mdl", "m(d, L) <= -1/d with equality exactly for SIC-derived bases");
  r.values["m_dl"] = m.value;
  r.values["bound"] = -1.0 / c.dim;
  r.values["argmin_j"] = m.j;
  r.values["argmin_k"] = m.k;
  r.residuals["saturation"] = std::abs(m.value + 1.0 / c.dim);
  r.tolerances["saturation"] = 1e-9;
  r.verdicts["bound_holds"] = m.value <= -1.0 / c.dim + 1e-12;
  r.verdicts["saturated"] = r.residuals["saturation"] <= 1e-9;
  r.pass = r.verdict("bound_holds") && r.verdict("saturated");
  return emit({r}, c, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"sicforge: construct and certify SIC-POVMs and their operator bases", "sicforge"};
  app.set_version_flag("--version", SICFORGE_VERSION);
  app.require_subcommand(1);

  RunConfig c;
  std::uint64_t seed_value = 0;
  auto common = [&](CLI::App* sub, bool needs_input) {
    sub->add_option("--seed", seed_value, "random seed (falls back to SICFORGE_SEED, then 1)");
    sub->add_option("--format", c.format, "stdout format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--report", c.report, "also write the report bundle (JSON) to this file");
    sub->add_flag("--paper-ref", c.paper_ref, "print the identity each check evaluates");
    sub->add_option("--tol-sic", c.tol.sic, "SIC fidelity tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--tol-rank", c.tol.rank, "relative numerical-rank threshold")->check(CLI::PositiveNumber);
    sub->add_option("--tol-stochastic", c.tol.stochastic, "stochastic-type tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--tol-structure", c.tol.structure, "structure-constant tolerance")->check(CLI::PositiveNumber);
    if (needs_input) sub->add_option("-i,--input", c.input, "input JSON file")->required();
  };

  auto* solve = app.add_subcommand("solve", "find a Weyl-Heisenberg covariant SIC fiducial");
  SolveOptions so;
  common(solve, false);
  solve->add_option("--dim", c.dim, "Hilbert-space dimension (2..12)")->required();
  solve->add_option("--restarts", c.restarts, "random restarts");
  solve->add_option("--max-iters", c.max_iters, "iterations per restart");
  solve->add_option("--threads", so.threads, "worker threads (0 = hardware)");
  solve->add_flag("--unconstrained", so.unconstrained, "optimize d^2 free states instead of a WH orbit");
  solve->add_option("-o,--output", c.output, "fiducial file to write");

  auto* verify = app.add_subcommand("verify", "certify a fiducial file as a SIC");
  common(verify, true);

  auto* basis = app.add_subcommand("basis", "build an operator basis from a SIC fiducial");
  BasisOptions bo;
  common(basis, false);
  basis->add_option("--kind", bo.kind, "construction")->check(CLI::IsMember({"adjoint", "lie", "jordan", "random"}));
  basis->add_option("-i,--input", c.input, "fiducial file (not needed for --kind random)");
  basis->add_option("-o,--output", c.output, "basis file to write")->required();
  basis->add_option("--dim", c.dim, "dimension (random bases only)");
  basis->add_option("--eps", bo.eps, "sign e (+1 or -1)");
  basis->add_option("--eps-prime", bo.eps_prime, "sign e' of the adjoint construction");
  basis->add_option("--signs", bo.signs, "comma-separated per-element signs e_j");
  basis->add_option("--ell", bo.ell, "scale ell of the Lie construction");
  basis->add_option("--eta", bo.eta, "shift eta of the Lie construction");
  basis->add_option("--scale", bo.scale, "scale c of the Jordan construction");

  auto* check = app.add_subcommand("check", "run the SIC criteria on a basis file");
  std::string formulation = "all";
  common(check, true);
  check->add_option("--formulation", formulation, "simplex, group, lie, jordan or all")
      ->check(CLI::IsMember({"simplex", "group", "lie", "jordan", "all"}));

  auto* irreps = app.add_subcommand("irreps", "enumerate small SU(d) irreps and certify adjoint uniqueness");
  std::int64_t bound = 0;
  common(irreps, false);
  irreps->add_option("--dim", c.dim, "dimension")->required();
  irreps->add_option("--bound", bound, "maximum irrep dimension (default d^2 - 1)");

  auto* stochastic = app.add_subcommand("stochastic", "sample adjoint matrices and test for stochastic type");
  StochasticOptions sto;
  common(stochastic, true);
  stochastic->add_option("--samples", sto.samples, "number of Haar samples");
  stochastic->add_flag("--antiunitary", sto.antiunitary, "use antiunitaries U K");
  stochastic->add_option("--csv", sto.csv, "write per-sample statistics as CSV");

  auto* mdl = app.add_subcommand("mdl", "evaluate m(d, L) for an orthonormal basis");
  common(mdl, true);

  std::vector<const char*> argv{"sicforge"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    c.command = sub->get_name();
    if (sub->count("--seed") > 0) c.seed_flag = seed_value;
    c.seed = resolve_seed(c);
    if (sub == solve) return cmd_solve(c, so, out, err);
    if (sub == verify) return cmd_verify(c, out);
    if (sub == basis) return cmd_basis(c, bo, out);
    if (sub == check) return cmd_check(c, formulation, out);
    if (sub == irreps) return cmd_irreps(c, bound, out);
    if (sub == stochastic) return cmd_stochastic(c, sto, out);
    if (sub == mdl) return cmd_mdl(c, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}

}  // namespace sicforge::cli
