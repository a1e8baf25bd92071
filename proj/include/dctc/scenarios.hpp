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

#ifndef DCTC_SCENARIOS_HPP_
#define DCTC_SCENARIOS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dctc/ctc_solver.hpp"
#include "dctc/gates.hpp"
#include "dctc/linalg.hpp"

namespace dctc {

/// Born-rule distribution over big-endian bitstrings of the measured qubits.
struct OutcomeDistribution {
  std::vector<std::string> labels;
  std::vector<double> probabilities;

  /// 0 for labels that are not present.
  double probability(std::string_view label) const;
};

/// Computational-basis measurement of `qubits` (in the order given; the first
/// listed qubit is the leading character of each label). Every label of the
/// measured register is listed, including zero-probability ones. Throws
/// std::invalid_argument for an empty, duplicated or out-of-range subset.
OutcomeDistribution measure_computational(const DensityOperator& rho, std::span<const std::size_t> qubits);

/// Label for `index` as an n-character big-endian bitstring.
std::string bit_label(std::size_t index, std::size_t n_bits);

enum class Bb84State { zero, one, plus, minus };

/// |0>, |1>, |±> = (|0> ± |1>)/sqrt(2).
PureState bb84_state(Bb84State s);
std::string_view to_string(Bb84State s);
/// Accepts "zero", "one", "plus", "minus".
std::optional<Bb84State> parse_bb84(std::string_view name);

struct ScenarioReport {
  std::string scenario;
  std::string circuit_label;
  std::string input_description;
  FixedPointResult fixed_point;
  DensityOperator output_state;
  OutcomeDistribution distribution;
  std::optional<ClassicalAnalysis> classical;
};

/// Measures every CR qubit of a circuit's output for the given CR input.
ScenarioReport run_circuit(std::string scenario, const CtcCircuit& circuit, const DensityOperator& cr_input,
                           std::string input_description, const Tolerances& tol = kDefaultTolerances);

/// NOT gate on a CTC bit: classical cycle analysis alongside the quantum
/// fixed point (spectator CR qubit prepared in |0>).
ScenarioReport run_not_gate(const Tolerances& tol = kDefaultTolerances);

/// Two-state discriminator; only `zero` and `minus` are valid inputs.
ScenarioReport run_bhw2(Bb84State input, const Tolerances& tol = kDefaultTolerances);

/// Four-state discriminator with the ancilla CR qubit prepared in |0>.
ScenarioReport run_bhw4(Bb84State input, const Tolerances& tol = kDefaultTolerances);

}  // namespace dctc

#endif  // DCTC_SCENARIOS_HPP_
