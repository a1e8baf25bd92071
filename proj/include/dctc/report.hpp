// Copyright 2026 The dctc Authors
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

#ifndef DCTC_REPORT_HPP_
#define DCTC_REPORT_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "dctc/linalg.hpp"
#include "dctc/scenarios.hpp"
#include "dctc/signaling.hpp"
#include "dctc/tolerances.hpp"

namespace dctc {

enum class OutputFormat { text, machine };

struct RunConfig {
  double tolerance = 1e-10;
  double convergence_tol = 1e-12;
  std::size_t max_iters = 100000;
  std::uint64_t seed = 0;
  std::size_t trials = 1000;
  OutputFormat format = OutputFormat::text;

  /// Throws std::invalid_argument for non-positive tolerances or zero trials.
  void validate() const;
  Tolerances tolerances() const;
};

/// Rounds to `digits` significant decimal digits; -0 becomes 0.
double round_significant(double x, int digits = 12);

/// Rows of [re, im] pairs, each rounded to 12 significant digits.
nlohmann::json matrix_to_json(const ComplexMatrix& m);

/// "I/d", "|b..b><b..b|" or "" when the state is neither (within 1e-9).
std::string describe_state(const DensityOperator& rho);

nlohmann::json to_machine(const ScenarioReport& report, const RunConfig& config);

/// `frames` may come from a separate bub_stairs_check run; when absent the
/// report's own frame analysis (if any) is used.
nlohmann::json to_machine(const SignalingReport& report, const RunConfig& config,
                          const FrameAnalysis* frames = nullptr);

std::string render_text(const ScenarioReport& report);
std::string render_text(const SignalingReport& report, const FrameAnalysis* frames = nullptr);

/// Schema violations of a machine report, empty when it conforms.
std::vector<std::string> validate_machine_report(const nlohmann::json& doc);

}  // namespace dctc

#endif  // DCTC_REPORT_HPP_
