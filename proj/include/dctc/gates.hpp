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

#ifndef DCTC_GATES_HPP_
#define DCTC_GATES_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dctc/linalg.hpp"

namespace dctc {

/// A unitary on n qubits, stored as a dense 2^n x 2^n matrix.
class UnitaryGate {
 public:
  /// Throws std::invalid_argument unless `m` is square, power-of-two sized,
  /// finite, and max |U^dagger U - I| <= tol.
  static UnitaryGate from_matrix(ComplexMatrix m, double tol = kDefaultTolerances.validity);
  static UnitaryGate identity(std::size_t n_qubits);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }

  PureState apply(const PureState& psi) const;
  /// U rho U^dagger
  DensityOperator apply(const DensityOperator& rho) const;

 private:
  UnitaryGate(ComplexMatrix m, std::size_t n) : m_(std::move(m)), n_qubits_(n) {}
  ComplexMatrix m_;
  std::size_t n_qubits_;
};

/// Composition `later ∘ earlier`: the right operand acts first.
UnitaryGate operator*(const UnitaryGate& later, const UnitaryGate& earlier);

/// Tensor product; `a` occupies the leading qubits.
UnitaryGate tensor(const UnitaryGate& a, const UnitaryGate& b);

/// Names accepted by standard_gate().
inline constexpr std::string_view kStandardGateNames[] = {"I", "X", "H", "SWAP", "CH"};

/// I, X, H (one qubit), SWAP, and CH = |0><0| ⊗ I + |1><1| ⊗ H (two qubits).
/// Throws std::invalid_argument listing the valid names otherwise.
UnitaryGate standard_gate(std::string_view name);

/// Places `gate` on the listed `targets` of a `total`-qubit register, in the
/// order given (targets[0] receives the gate's qubit 0).
UnitaryGate embed(const UnitaryGate& gate, std::span<const std::size_t> targets, std::size_t total);

/// Applies `target_gate` on `targets` exactly when the `controls` wires read
/// `pattern` (a string of '0'/'1', one character per control); identity
/// otherwise. Empty controls reduce to embed().
UnitaryGate controlled_on_pattern(std::span<const std::size_t> controls, std::string_view pattern,
                                  const UnitaryGate& target_gate, std::span<const std::size_t> targets,
                                  std::size_t total);

/// The four two-qubit unitaries used by the four-state discriminator:
///   U_00 = SWAP, U_01 = X⊗X, U_10 = (X⊗I)∘(H⊗I), U_11 = (X⊗H)∘SWAP.
/// They send |psi 0> to |ab> for psi = |0>, |1>, |+>, |-> respectively.
UnitaryGate bhw_unitary(int a, int b);

/// A circuit in standard form: `n_cr` chronology-respecting qubits on the
/// leading wires, `n_ctc` CTC-bound qubits on the trailing wires, and one
/// joint unitary acting on all of them.
class CtcCircuit {
 public:
  /// Throws std::invalid_argument if n_ctc == 0, n_cr == 0 or the unitary's
  /// width differs from n_cr + n_ctc.
  CtcCircuit(std::size_t n_cr, std::size_t n_ctc, UnitaryGate unitary, std::string label);

  std::size_t n_cr() const { return n_cr_; }
  std::size_t n_ctc() const { return n_ctc_; }
  std::size_t cr_dim() const { return std::size_t{1} << n_cr_; }
  std::size_t ctc_dim() const { return std::size_t{1} << n_ctc_; }
  const UnitaryGate& unitary() const { return unitary_; }
  const std::string& label() const { return label_; }

 private:
  std::size_t n_cr_;
  std::size_t n_ctc_;
  UnitaryGate unitary_;
  std::string label_;
};

/// Two-state discriminator: A (CR, qubit 0) and B (CTC, qubit 1);
/// U = CH(A -> B) · SWAP(A, B).
CtcCircuit bhw2_circuit();

/// Four-state discriminator: CR = (psi, ancilla), CTC = two qubits;
/// U = [sum_ab |ab><ab|_CR ⊗ U_ab] · SWAP(CR0, CTC0) · SWAP(CR1, CTC1).
CtcCircuit bhw4_circuit();

/// A NOT gate on one CTC qubit with an untouched spectator CR qubit: I ⊗ X.
CtcCircuit not_gate_circuit();

/// U = I on n_cr + n_ctc qubits.
CtcCircuit identity_circuit(std::size_t n_cr, std::size_t n_ctc);

}  // namespace dctc

#endif  // DCTC_GATES_HPP_
