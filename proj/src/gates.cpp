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

#include "dctc/gates.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dctc {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

// Bit of `qubit` in a big-endian basis index over `total` qubits.
std::size_t bit_of(std::size_t index, std::size_t qubit, std::size_t total) {
  return (index >> (total - 1 - qubit)) & 1U;
}

std::size_t with_bit(std::size_t index, std::size_t qubit, std::size_t total, std::size_t value) {
  const std::size_t mask = std::size_t{1} << (total - 1 - qubit);
  return value ? (index | mask) : (index & ~mask);
}

void check_wires(std::span<const std::size_t> wires, std::size_t total, std::vector<bool>& used,
                 const char* role) {
  for (std::size_t w : wires) {
    if (w >= total) {
      throw std::invalid_argument(std::string(role) + " wire " + std::to_string(w) + " out of range for " +
                                  std::to_string(total) + " qubits");
    }
    if (used[w]) throw std::invalid_argument("wire " + std::to_string(w) + " used more than once");
    used[w] = true;
  }
}

ComplexMatrix one_qubit(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

UnitaryGate UnitaryGate::from_matrix(ComplexMatrix m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) throw std::invalid_argument("unitary: matrix must be square");
  const std::size_t n = qubit_count_for_dim(static_cast<std::size_t>(m.rows()));
  if (!all_finite(m)) throw std::invalid_argument("unitary: non-finite entry");
  const ComplexMatrix eye = ComplexMatrix::Identity(m.rows(), m.cols());
  if (const double defect = max_abs_diff(m.adjoint() * m, eye); defect > tol) {
    std::ostringstream msg;
    msg << "unitary: max |U^dagger U - I| = " << defect << " exceeds " << tol;
    throw std::invalid_argument(msg.str());
  }
  return UnitaryGate(std::move(m), n);
}

UnitaryGate UnitaryGate::identity(std::size_t n_qubits) {
  const Index d = idx(std::size_t{1} << n_qubits);
  return UnitaryGate(ComplexMatrix::Identity(d, d), n_qubits);
}

PureState UnitaryGate::apply(const PureState& psi) const {
  if (psi.dim() != dim()) throw std::invalid_argument("unitary: state dimension mismatch");
  return PureState::from_amplitudes(m_ * psi.amplitudes());
}

DensityOperator UnitaryGate::apply(const DensityOperator& rho) const {
  if (rho.dim() != dim()) throw std::invalid_argument("unitary: state dimension mismatch");
  return DensityOperator::from_matrix(m_ * rho.matrix() * m_.adjoint());
}

UnitaryGate operator*(const UnitaryGate& later, const UnitaryGate& earlier) {
  if (later.dim() != earlier.dim()) throw std::invalid_argument("unitary composition: width mismatch");
  return UnitaryGate::from_matrix(later.matrix() * earlier.matrix());
}

UnitaryGate tensor(const UnitaryGate& a, const UnitaryGate& b) {
  return UnitaryGate::from_matrix(kron(a.matrix(), b.matrix()));
}

UnitaryGate standard_gate(std::string_view name) {
  const double r = 1.0 / std::sqrt(2.0);
  if (name == "I") return UnitaryGate::identity(1);
  if (name == "X") return UnitaryGate::from_matrix(one_qubit(0, 1, 1, 0));
  if (name == "H") return UnitaryGate::from_matrix(one_qubit(r, r, r, -r));
  if (name == "SWAP") {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
    return UnitaryGate::from_matrix(std::move(m));
  }
  if (name == "CH") {
    const ComplexMatrix p0 = one_qubit(1, 0, 0, 0);
    const ComplexMatrix p1 = one_qubit(0, 0, 0, 1);
    return UnitaryGate::from_matrix(kron(p0, ComplexMatrix::Identity(2, 2)) + kron(p1, one_qubit(r, r, r, -r)));
  }
  std::string valid;
  for (std::string_view v : kStandardGateNames) valid += (valid.empty() ? "" : ", ") + std::string(v);
  throw std::invalid_argument("unknown gate '" + std::string(name) + "'; valid names: " + valid);
}

UnitaryGate embed(const UnitaryGate& gate, std::span<const std::size_t> targets, std::size_t total) {
  return controlled_on_pattern({}, "", gate, targets, total);
}

UnitaryGate controlled_on_pattern(std::span<const std::size_t> controls, std::string_view pattern,
                                  const UnitaryGate& target_gate, std::span<const std::size_t> targets,
                                  std::size_t total) {
  if (pattern.size() != controls.size()) {
    throw std::invalid_argument("control pattern length " + std::to_string(pattern.size()) +
                                " does not match " + std::to_string(controls.size()) + " controls");
  }
  for (char c : pattern) {
    if (c != '0' && c != '1') throw std::invalid_argument("control pattern must contain only '0' and '1'");
  }
  if (targets.size() != target_gate.n_qubits()) {
    throw std::invalid_argument("gate acts on " + std::to_string(target_gate.n_qubits()) + " qubits but " +
                                std::to_string(targets.size()) + " targets given");
  }
  std::vector<bool> used(total, false);
  check_wires(controls, total, used, "control");
  check_wires(targets, total, used, "target");

  const std::size_t dim = std::size_t{1} << total;
  const std::size_t k = targets.size();
  const ComplexMatrix& g = target_gate.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(idx(dim), idx(dim));

  for (std::size_t col = 0; col < dim; ++col) {
    bool fires = true;
    for (std::size_t c = 0; c < controls.size(); ++c) {
      if (bit_of(col, controls[c], total) != static_cast<std::size_t>(pattern[c] - '0')) fires = false;
    }
    if (!fires) {
      out(idx(col), idx(col)) = 1.0;
      continue;
    }
    std::size_t local_in = 0;
    for (std::size_t t = 0; t < k; ++t) local_in = (local_in << 1) | bit_of(col, targets[t], total);
    for (std::size_t local_out = 0; local_out < (std::size_t{1} << k); ++local_out) {
      std::size_t row = col;
      for (std::size_t t = 0; t < k; ++t) row = with_bit(row, targets[t], total, (local_out >> (k - 1 - t)) & 1U);
      out(idx(row), idx(col)) = g(idx(local_out), idx(local_in));
    }
  }
  return UnitaryGate::from_matrix(std::move(out));
}

UnitaryGate bhw_unitary(int a, int b) {
  if ((a != 0 && a != 1) || (b != 0 && b != 1)) throw std::invalid_argument("bhw_unitary: a, b must be bits");
  const UnitaryGate i1 = standard_gate("I");
  const UnitaryGate x = standard_gate("X");
  const UnitaryGate h = standard_gate("H");
  const UnitaryGate swap = standard_gate("SWAP");
  switch (a * 2 + b) {
    case 0:
      return swap;
    case 1:
      return tensor(x, x);
    case 2:
      return tensor(x, i1) * tensor(h, i1);
    default:
      return tensor(x, h) * swap;
  }
}

CtcCircuit::CtcCircuit(std::size_t n_cr, std::size_t n_ctc, UnitaryGate unitary, std::string label)
    : n_cr_(n_cr), n_ctc_(n_ctc), unitary_(std::move(unitary)), label_(std::move(label)) {
  if (n_ctc_ == 0) throw std::invalid_argument("circuit needs at least one CTC qubit");
  if (n_cr_ == 0) throw std::invalid_argument("circuit needs at least one CR qubit");
  if (unitary_.n_qubits() != n_cr_ + n_ctc_) {
    throw std::invalid_argument("circuit unitary acts on " + std::to_string(unitary_.n_qubits()) +
                                " qubits, expected n_cr + n_ctc = " + std::to_string(n_cr_ + n_ctc_));
  }
}

CtcCircuit bhw2_circuit() {
  const std::array<std::size_t, 1> a{0};
  const std::array<std::size_t, 1> b{1};
  const UnitaryGate ch = controlled_on_pattern(a, "1", standard_gate("H"), b, 2);
  return CtcCircuit(1, 1, ch * standard_gate("SWAP"), "bhw2");
}

CtcCircuit bhw4_circuit() {
  const std::array<std::size_t, 2> swap0{0, 2};
  const std::array<std::size_t, 2> swap1{1, 3};
  const std::array<std::size_t, 2> cr{0, 1};
  const std::array<std::size_t, 2> ctc{2, 3};
  const UnitaryGate swaps = embed(standard_gate("SWAP"), swap0, 4) * embed(standard_gate("SWAP"), swap1, 4);

  UnitaryGate controlled = UnitaryGate::identity(4);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const std::string pattern{static_cast<char>('0' + a), static_cast<char>('0' + b)};
      controlled = controlled_on_pattern(cr, pattern, bhw_unitary(a, b), ctc, 4) * controlled;
    }
  }
  return CtcCircuit(2, 2, controlled * swaps, "bhw4");
}

CtcCircuit not_gate_circuit() {
  return CtcCircuit(1, 1, tensor(standard_gate("I"), standard_gate("X")), "not-gate");
}

CtcCircuit identity_circuit(std::size_t n_cr, std::size_t n_ctc) {
  return CtcCircuit(n_cr, n_ctc, UnitaryGate::identity(n_cr + n_ctc), "identity");
}

}  // namespace dctc
