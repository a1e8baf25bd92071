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

#include "dctc/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dctc {

double OutcomeDistribution::probability(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return probabilities[i];
  }
  return 0.0;
}

std::string bit_label(std::size_t index, std::size_t n_bits) {
  std::string s(n_bits, '0');
  for (std::size_t b = 0; b < n_bits; ++b) {
    if ((index >> (n_bits - 1 - b)) & 1U) s[b] = '1';
  }
  return s;
}

OutcomeDistribution measure_computational(const DensityOperator& rho, std::span<const std::size_t> qubits) {
  if (qubits.empty()) throw std::invalid_argument("measure_computational: no qubits selected");
  const std::size_t n = rho.n_qubits();
  std::vector<bool> seen(n, false);
  for (std::size_t q : qubits) {
    if (q >= n) throw std::invalid_argument("measure_computational: qubit " + std::to_string(q) + " out of range");
    if (seen[q]) throw std::invalid_argument("measure_computational: qubit " + std::to_string(q) + " repeated");
    seen[q] = true;
  }

  const std::size_t m = qubits.size();
  OutcomeDistribution out;
  out.probabilities.assign(std::size_t{1} << m, 0.0);
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    std::size_t outcome = 0;
    for (std::size_t q : qubits) outcome = (outcome << 1) | ((i >> (n - 1 - q)) & 1U);
    out.probabilities[outcome] += rho(i, i).real();
  }
  for (double& p : out.probabilities) p = std::clamp(p, 0.0, 1.0);
  for (std::size_t k = 0; k < out.probabilities.size(); ++k) out.labels.push_back(bit_label(k, m));
  return out;
}

PureState bb84_state(Bb84State s) {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexVector v(2);
  switch (s) {
    case Bb84State::zero:
      v << 1.0, 0.0;
      break;
    case Bb84State::one:
      v << 0.0, 1.0;
      break;
    case Bb84State::plus:
      v << r, r;
      break;
    case Bb84State::minus:
      v << r, -r;
      break;
  }
  return PureState::from_amplitudes(std::move(v));
}

std::string_view to_string(Bb84State s) {
  switch (s) {
    case Bb84State::zero:
      return "zero";
    case Bb84State::one:
      return "one";
    case Bb84State::plus:
      return "plus";
    case Bb84State::minus:
      return "minus";
  }
  return "?";
}

std::optional<Bb84State> parse_bb84(std::string_view name) {
  for (Bb84State s : {Bb84State::zero, Bb84State::one, Bb84State::plus, Bb84State::minus}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

ScenarioReport run_circuit(std::string scenario, const CtcCircuit& circuit, const DensityOperator& cr_input,
                           std::string input_description, const Tolerances& tol) {
  FixedPointResult fp = solve(circuit, cr_input, tol);
  DensityOperator out = output_state(circuit, cr_input, fp.selected);
  std::vector<std::size_t> cr(circuit.n_cr());
  std::iota(cr.begin(), cr.end(), std::size_t{0});
  OutcomeDistribution dist = measure_computational(out, cr);
  return ScenarioReport{std::move(scenario), circuit.label(), std::move(input_description), std::move(fp),
                        std::move(out),      std::move(dist), std::nullopt};
}

ScenarioReport run_not_gate(const Tolerances& tol) {
  ScenarioReport report = run_circuit("not-gate", not_gate_circuit(),
                                      DensityOperator::from_pure(PureState::basis(2, 0)), "spectator |0>", tol);
  const std::vector<std::size_t> flip{1, 0};
  report.classical = classical_fixed_points(flip);
  return report;
}

ScenarioReport run_bhw2(Bb84State input, const Tolerances& tol) {
  if (input != Bb84State::zero && input != Bb84State::minus) {
    throw std::invalid_argument("bhw2 distinguishes only 'zero' and 'minus'");
  }
  return run_circuit("bhw2", bhw2_circuit(), DensityOperator::from_pure(bb84_state(input)),
                     std::string(to_string(input)), tol);
}

ScenarioReport run_bhw4(Bb84State input, const Tolerances& tol) {
  const ComplexMatrix ancilla = PureState::basis(2, 0).projector();
  const DensityOperator cr = DensityOperator::from_matrix(kron(bb84_state(input).projector(), ancilla));
  return run_circuit("bhw4", bhw4_circuit(), cr, std::string(to_string(input)) + ", ancilla |0>", tol);
}

}  // namespace dctc
