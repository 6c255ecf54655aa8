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

#ifndef SICFORGE_IO_HPP
#define SICFORGE_IO_HPP

// JSON persistence. Requires the vendored nlohmann/json single header on the
// include path. Keys are emitted in sorted order and doubles in shortest
// round-trip form, so artifacts are byte-stable.

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sicforge/error.hpp"
#include "sicforge/hermitian.hpp"
#include "sicforge/irreps.hpp"
#include "sicforge/jordan.hpp"
#include "sicforge/lie.hpp"
#include "sicforge/report.hpp"
#include "sicforge/sic.hpp"

namespace sicforge {

using Json = nlohmann::json;

inline constexpr const char* kFiducialSchema = "sic-fiducial/1";
inline constexpr const char* kBasisSchema = "hermitian-basis/1";
inline constexpr const char* kReportSchema = "report/1";
inline constexpr const char* kLieSchema = "lie-structure/1";
inline constexpr const char* kJordanSchema = "jordan-structure/1";

namespace detail {

inline void require_schema(const Json& j, const char* schema) {
  if (!j.is_object() || !j.contains("schema") || !j["schema"].is_string()) {
    throw ParseError(std::string("expected an object with \"schema\": \"") + schema + "\"");
  }
  if (j["schema"].get<std::string>() != schema) {
    throw ParseError("schema mismatch: expected " + std::string(schema) + ", got " + j["schema"].get<std::string>());
  }
}

inline int require_dimension(const Json& j) {
  if (!j.contains("dimension") || !j["dimension"].is_number_integer()) throw ParseError("missing integer \"dimension\"");
  const int d = j["dimension"].get<int>();
  if (d < 2) throw ParseError("dimension must be >= 2");
  return d;
}

/// Non-finite doubles have no JSON form; they are written as null.
inline Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace detail

inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("complex numbers must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Json vector_to_json(const ComplexVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
  return a;
}

inline ComplexVector vector_from_json(const Json& j, int d) {
  if (!j.is_array() || static_cast<int>(j.size()) != d) throw ParseError("vector must have d entries");
  ComplexVector v(d);
  for (int i = 0; i < d; ++i) v(i) = complex_from_json(j[static_cast<std::size_t>(i)]);
  return v;
}

// ---------------------------------------------------------------------------
// sic-fiducial/1

inline const char* to_string(Provenance::Kind k) {
  switch (k) {
    case Provenance::Kind::AnalyticSeed:
      return "analytic";
    case Provenance::Kind::Solver:
      return "solver";
    case Provenance::Kind::External:
      break;
  }
  return "external";
}

/// `states` is only written for unconstrained solver output.
inline Json fiducial_to_json(const Fiducial& f, const std::vector<ComplexVector>* states = nullptr) {
  const auto& p = f.provenance();
  Json j;
  j["schema"] = kFiducialSchema;
  j["dimension"] = f.dim();
  j["vector"] = vector_to_json(f.vector());
  j["provenance"] = {{"kind", to_string(p.kind)},
                     {"seed", p.seed},
                     {"restarts", p.restarts},
                     {"iterations", p.iterations},
                     {"unconstrained", p.unconstrained}};
  j["frame_potential"] = detail::number(wh_frame_potential(f.vector()));
  j["max_fidelity_error"] = detail::number(max_fidelity_error(wh_orbit(f)));
  if (states) {
    Json s = Json::array();
    for (const auto& v : *states) s.push_back(vector_to_json(v));
    j["states"] = s;
  }
  return j;
}

inline Fiducial fiducial_from_json(const Json& j) {
  detail::require_schema(j, kFiducialSchema);
  const int d = detail::require_dimension(j);
  if (!j.contains("vector")) throw ParseError("missing \"vector\"");
  Provenance prov;
  if (j.contains("provenance") && j["provenance"].is_object()) {
    const Json& p = j["provenance"];
    const std::string kind = p.value("kind", "external");
    prov.kind = kind == "solver" ? Provenance::Kind::Solver
                : kind == "analytic" ? Provenance::Kind::AnalyticSeed
                                     : Provenance::Kind::External;
    prov.seed = p.value("seed", std::uint64_t{0});
    prov.restarts = p.value("restarts", 0);
    prov.iterations = p.value("iterations", 0);
    prov.unconstrained = p.value("unconstrained", false);
  }
  try {
    return Fiducial(vector_from_json(j["vector"], d), prov);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("invalid fiducial: ") + e.what());
  }
}

/// The unconstrained "states" list, if present.
inline std::optional<std::vector<ComplexVector>> states_from_json(const Json& j) {
  if (!j.contains("states")) return std::nullopt;
  const int d = detail::require_dimension(j);
  std::vector<ComplexVector> out;
  for (const auto& s : j["states"]) out.push_back(vector_from_json(s, d));
  if (static_cast<int>(out.size()) != d * d) throw ParseError("\"states\" must hold d^2 vectors");
  return out;
}

// ---------------------------------------------------------------------------
// hermitian-basis/1

/// A basis as stored on disk: operators, labels and the parameters of the
/// construction that produced it (free-form object).
struct BasisFile {
  OperatorBasis basis;
  std::vector<std::string> labels;
  Json construction = Json::object();
};

inline Json basis_to_json(const BasisFile& b) {
  const int d = b.basis.dim();
  Json ops = Json::array();
  for (const auto& op : b.basis.operators()) {
    Json m = Json::array();
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) m.push_back(to_json(op.matrix()(r, c)));
    ops.push_back(m);
  }
  Json labels = Json::array();
  for (int i = 0; i < b.basis.size(); ++i)
    labels.push_back(i < static_cast<int>(b.labels.size()) ? b.labels[static_cast<std::size_t>(i)]
                                                           : "L" + std::to_string(i));
  Json j;
  j["schema"] = kBasisSchema;
  j["dimension"] = d;
  j["operators"] = ops;
  j["labels"] = labels;
  j["construction"] = b.construction;
  return j;
}

/// Rejects operators whose anti-Hermitian part exceeds `hermiticity_tol`
/// relative to the largest entry.
inline BasisFile basis_from_json(const Json& j, double hermiticity_tol = 1e-9) {
  detail::require_schema(j, kBasisSchema);
  const int d = detail::require_dimension(j);
  if (!j.contains("operators") || !j["operators"].is_array()) throw ParseError("missing \"operators\" array");
  if (static_cast<int>(j["operators"].size()) != d * d) throw ParseError("\"operators\" must hold d^2 matrices");
  std::vector<HermitianOperator> ops;
  for (const auto& m : j["operators"]) {
    if (!m.is_array() || static_cast<int>(m.size()) != d * d) throw ParseError("operators are row-major d x d arrays");
    ComplexMatrix a(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) a(r, c) = complex_from_json(m[static_cast<std::size_t>(r * d + c)]);
    HermitianOperator op(a);
    if (op.hermiticity_correction() > hermiticity_tol * std::max(1.0, max_abs(a))) {
      throw ParseError("operator is not Hermitian");
    }
    ops.push_back(std::move(op));
  }
  BasisFile b;
  b.basis = OperatorBasis(std::move(ops));
  if (j.contains("labels"))
    for (const auto& l : j["labels"]) b.labels.push_back(l.get<std::string>());
  if (j.contains("construction")) b.construction = j["construction"];
  return b;
}

// ---------------------------------------------------------------------------
// report/1

inline Json report_to_json(const CheckReport& r) {
  Json j;
  j["check"] = r.check;
  j["pass"] = r.pass;
  Json res = Json::object(), tol = Json::object(), val = Json::object();
  for (const auto& [k, v] : r.residuals) res[k] = detail::number(v);
  for (const auto& [k, v] : r.tolerances) tol[k] = detail::number(v);
  for (const auto& [k, v] : r.values) val[k] = detail::number(v);
  j["residuals"] = res;
  j["tolerances"] = tol;
  j["values"] = val;
  j["verdicts"] = r.verdicts;
  j["notes"] = r.notes;
  j["reference"] = r.reference;
  if (r.constants) {
    j["constants"] = {{"alpha", detail::number(r.constants->alpha)},
                      {"beta", detail::number(r.constants->beta)},
                      {"gamma", detail::number(r.constants->gamma)}};
  }
  return j;
}

/// Inverse of report_to_json; null numbers read back as NaN.
inline CheckReport report_from_json(const Json& j) {
  auto num = [](const Json& v) { return v.is_null() ? std::nan("") : v.get<double>(); };
  CheckReport r(j.at("check").get<std::string>(), j.value("reference", ""));
  r.pass = j.at("pass").get<bool>();
  for (const char* key : {"residuals", "tolerances", "values"}) {
    auto& dst = key[0] == 'r' ? r.residuals : key[0] == 't' ? r.tolerances : r.values;
    if (j.contains(key))
      for (const auto& [k, v] : j[key].items()) dst[k] = num(v);
  }
  if (j.contains("verdicts")) r.verdicts = j["verdicts"].get<std::map<std::string, bool>>();
  if (j.contains("notes")) r.notes = j["notes"].get<std::vector<std::string>>();
  if (j.contains("constants")) {
    const Json& c = j["constants"];
    r.constants = FrameConstants{num(c.at("alpha")), num(c.at("beta")), num(c.at("gamma"))};
  }
  return r;
}

/// Tool version, timestamp (null unless supplied), config echo, reports and
/// their conjunction.
struct ReportBundle {
  std::string tool_version;
  std::optional<std::string> timestamp;
  Json config = Json::object();
  std::vector<CheckReport> reports;

  bool overall() const {
    if (reports.empty()) return false;
    for (const auto& r : reports)
      if (!r.pass) return false;
    return true;
  }
};

inline Json bundle_to_json(const ReportBundle& b) {
  Json j;
  j["schema"] = kReportSchema;
  j["tool_version"] = b.tool_version;
  j["timestamp"] = b.timestamp ? Json(*b.timestamp) : Json(nullptr);
  j["config"] = b.config;
  Json reps = Json::array();
  for (const auto& r : b.reports) reps.push_back(report_to_json(r));
  j["reports"] = reps;
  j["overall"] = b.overall();
  return j;
}

// ---------------------------------------------------------------------------
// Structure tensors and irreps

namespace detail {

inline Json sparse_triplets(const StructureTensor& t, bool imag, double threshold) {
  Json out = Json::array();
  for (int a = 0; a < t.size(); ++a)
    for (int b = 0; b < t.size(); ++b)
      for (int c = 0; c < t.size(); ++c) {
        const Complex z = t(a, b, c);
        const double v = imag ? z.imag() : z.real();
        if (std::abs(v) > threshold) out.push_back(Json::array({a, b, c, v}));
      }
  return out;
}

}  // namespace detail

/// Imaginary parts of the Lie constants as (j, k, l, value) triplets above 1e-12.
inline Json lie_structure_to_json(const LieStructure& s, double threshold = 1e-12) {
  return {{"schema", kLieSchema},
          {"dimension", s.tensor.dim},
          {"imag_constants", detail::sparse_triplets(s.tensor, true, threshold)}};
}

inline Json jordan_structure_to_json(const JordanStructure& s, double threshold = 1e-12) {
  return {{"schema", kJordanSchema},
          {"dimension", s.tensor.dim},
          {"real_constants", detail::sparse_triplets(s.tensor, false, threshold)}};
}

inline Json irrep_to_json(const IrrepRecord& r) {
  return {{"partition", r.partition.parts()},
          {"columns", r.columns},
          {"dimension", r.dimension},
          {"box_sum", r.box_sum},
          {"pu_compatible", r.pu_compatible}};
}

// ---------------------------------------------------------------------------
// Files

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

/// Pretty-printed with two-space indent and a trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

inline void write_json_file(const std::string& path, const Json& j) { write_text_file(path, dump(j)); }

}  // namespace sicforge

#endif  // SICFORGE_IO_HPP
