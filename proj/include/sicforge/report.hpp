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

#ifndef SICFORGE_REPORT_HPP
#define SICFORGE_REPORT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sicforge {

/// Fitted constants of the frame identity sum_j |L_j>><<L_j| = alpha I + beta |1>><<1|.
struct FrameConstants {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// Outcome of one named verification.
///
/// `residuals` and `tolerances` share key names where a residual is compared
/// against a threshold. `verdicts` holds the individual sub-statements of
/// multi-part checks (e.g. the three legs of the trichotomy). `values` holds
/// recovered parameters (constants, ranks, signs). `reference`
/// is the identity the check evaluates, printed by the CLI on request.
struct CheckReport {
  std::string check;
  bool pass = false;
  std::map<std::string, double> residuals;
  std::map<std::string, double> tolerances;
  std::map<std::string, bool> verdicts;
  /// Quantities the check measures or recovers that are not residuals.
  std::map<std::string, double> values;
  std::optional<FrameConstants> constants;
  std::vector<std::string> notes;
  std::string reference;

  CheckReport() = default;
  explicit CheckReport(std::string name, std::string ref = {})
      : check(std::move(name)), reference(std::move(ref)) {}

  void note(std::string text) { notes.push_back(std::move(text)); }

  bool verdict(const std::string& key) const {
    auto it = verdicts.find(key);
    return it != verdicts.end() && it->second;
  }
};

}  // namespace sicforge

#endif  // SICFORGE_REPORT_HPP
