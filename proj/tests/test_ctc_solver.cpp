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

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "dctc/ctc_solver.hpp"
#include "dctc/gates.hpp"
#include "dctc/linalg.hpp"
#include "dctc/scenarios.hpp"
#include "test_support.hpp"

using namespace dctc;
using namespace dctc::testing;

namespace {

constexpr double kR = 0.7071067811865475;

DensityOperator state(Bb84State s) { return DensityOperator::from_pure(bb84_state(s)); }

ComplexMatrix pauli_x() { return standard_gate("X").matrix(); }

// Phase rotation by one radian on a single CTC qubit; the orbit of |+> never
// closes, so uniform averaging converges only as 1/N.
CtcCircuit phase_circuit() {
  ComplexMatrix rz = ComplexMatrix::Zero(2, 2);
  rz(0, 0) = 1.0;
  rz(1, 1) = std::polar(1.0, 1.0);
  return CtcCircuit(1, 1, UnitaryGate::from_matrix(kron(ComplexMatrix::Identity(2, 2), rz)), "phase");
}

CtcCircuit random_circuit(std::size_t n_cr, std::size_t n_ctc, std::mt19937_64& rng) {
  const std::size_t dim = std::size_t{1} << (n_cr + n_ctc);
  return CtcCircuit(n_cr, n_ctc, UnitaryGate::from_matrix(haar_unitary(dim, rng)), "random");
}

double fixed_residual(const Superoperator& s, const ComplexMatrix& m) { return max_abs_diff(s.apply(m), m); }

}  // namespace

TEST_CASE("vec stacks columns") {
  ComplexMatrix m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  const ComplexVector v = vec(m);
  CHECK(v(0) == Complex(1.0));
  CHECK(v(1) == Complex(3.0));
  CHECK(v(2) == Complex(2.0));
  CHECK(v(3) == Complex(4.0));
  CHECK(max_abs_diff(unvec(v, 2), m) == 0.0);
  CHECK_THROWS_AS(unvec(v, 3), std::invalid_argument);
}

TEST_CASE("superoperator validation") {
  SUBCASE("identity map") {
    const Superoperator id = Superoperator::from_matrix(ComplexMatrix::Identity(4, 4));
    CHECK(id.dim() == 2);
    const ComplexMatrix choi = id.choi();
    CHECK(hermitian_eigen(choi).values.maxCoeff() == doctest::Approx(2.0));
    CHECK(std::abs(choi.trace() - Complex(2.0)) < 1e-15);
  }
  SUBCASE("not trace preserving") {
    CHECK_THROWS_AS(Superoperator::from_matrix(2.0 * ComplexMatrix::Identity(4, 4)), std::invalid_argument);
  }
  SUBCASE("transpose is positive but not completely positive") {
    ComplexMatrix t = ComplexMatrix::Zero(4, 4);
    for (Eigen::Index i = 0; i < 2; ++i) {
      for (Eigen::Index j = 0; j < 2; ++j) t(j + i * 2, i + j * 2) = 1.0;
    }
    CHECK_THROWS_AS(Superoperator::from_matrix(t), std::invalid_argument);
  }
  SUBCASE("shape") {
    CHECK_THROWS_AS(Superoperator::from_matrix(ComplexMatrix::Identity(3, 3)), std::invalid_argument);
    CHECK_THROWS_AS(Superoperator::from_matrix(ComplexMatrix::Identity(4, 2)), std::invalid_argument);
    const Superoperator id = Superoperator::from_matrix(ComplexMatrix::Identity(4, 4));
    CHECK_THROWS_AS(id.apply(ComplexMatrix::Identity(4, 4)), std::invalid_argument);
  }
}

TEST_CASE("NOT-gate channel conjugates by X for any CR input") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 5; ++t) {
    const Superoperator s = ctc_channel(not_gate_circuit(), random_density(2, rng));
    const DensityOperator rho = random_density(2, rng);
    CHECK(max_abs_diff(s.apply(rho.matrix()), pauli_x() * rho.matrix() * pauli_x()) < 1e-14);
  }
}

TEST_CASE("two-state channel at |0> sends |1><1| to |+><+|") {
  const Superoperator s = ctc_channel(bhw2_circuit(), state(Bb84State::zero));
  CHECK(max_abs_diff(s.apply(basis_projector(2, 1)), state(Bb84State::plus).matrix()) < 1e-15);
}

TEST_CASE("two-state channel at |-> matches the direct formula") {
  // Λ(ρ) = ρ00 σ + ρ11 HσH with σ = |-><-|; frozen from the matrix-unit oracle.
  const Superoperator s = ctc_channel(bhw2_circuit(), state(Bb84State::minus));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = 0.5;
  expected(1, 0) = -0.5;
  expected(2, 0) = -0.5;
  expected(3, 0) = 0.5;
  expected(3, 3) = 1.0;
  CHECK(max_abs_diff(s.matrix(), expected) < 1e-15);

  const ComplexMatrix sigma = state(Bb84State::minus).matrix();
  const ComplexMatrix h = standard_gate("H").matrix();
  std::mt19937_64 rng(32);
  const ComplexMatrix rho = random_density(2, rng).matrix();
  const ComplexMatrix direct = rho(0, 0) * sigma + rho(1, 1) * (h * sigma * h);
  CHECK(max_abs_diff(s.apply(rho), direct) < 1e-15);
}

TEST_CASE("ctc_channel rejects a CR input of the wrong size") {
  CHECK_THROWS_AS(ctc_channel(bhw2_circuit(), DensityOperator::maximally_mixed(4)), std::invalid_argument);
  CHECK_THROWS_AS(ctc_channel(bhw4_circuit(), DensityOperator::maximally_mixed(2)), std::invalid_argument);
}

TEST_CASE("fixed_point_space of the identity circuit is everything") {
  for (std::size_t n_ctc : {1U, 2U}) {
    const Superoperator s = ctc_channel(identity_circuit(1, n_ctc), DensityOperator::maximally_mixed(2));
    const FixedPointSpace space = fixed_point_space(s);
    const std::size_t d = std::size_t{1} << n_ctc;
    CHECK(space.basis.size() == d * d);
    CHECK_FALSE(space.unique);
    CHECK_FALSE(space.diagnostics.ambiguous);
  }
}

TEST_CASE("NOT-gate fixed space is spanned by I and X") {
  const Superoperator s = ctc_channel(not_gate_circuit(), state(Bb84State::zero));
  const FixedPointSpace space = fixed_point_space(s);
  CHECK(space.basis.size() == 2);
  CHECK_FALSE(space.unique);
  CHECK(span_residual(space.basis, ComplexMatrix::Identity(2, 2)) < 1e-12);
  CHECK(span_residual(space.basis, pauli_x()) < 1e-12);
  CHECK(span_residual(space.basis, basis_projector(2, 0)) > 0.5);
  // |+><+| is therefore a valid fixed point too.
  CHECK(fixed_residual(s, state(Bb84State::plus).matrix()) < 1e-15);
}

TEST_CASE("two-state fixed space at |0> contains |0><0| only") {
  const Superoperator s = ctc_channel(bhw2_circuit(), state(Bb84State::zero));
  const FixedPointSpace space = fixed_point_space(s);
  CHECK(space.unique);
  CHECK(span_residual(space.basis, basis_projector(2, 0)) < 1e-12);
  CHECK(span_residual(space.basis, basis_projector(2, 1)) > 0.5);
  CHECK(trace_distance(s.apply(basis_projector(2, 1)), basis_projector(2, 1)) >= 0.1);
}

TEST_CASE("fixed-space bases are Hermitian and orthonormal") {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 10; ++t) {
    const CtcCircuit c = t == 0 ? identity_circuit(1, 2) : random_circuit(1, 2, rng);
    const Superoperator s = ctc_channel(c, DensityOperator::from_pure(random_pure(2, rng)));
    const FixedPointSpace space = fixed_point_space(s);
    REQUIRE_FALSE(space.basis.empty());
    for (std::size_t a = 0; a < space.basis.size(); ++a) {
      CHECK(hermiticity_defect(space.basis[a]) < 1e-12);
      CHECK(space.basis[a].trace().real() >= -1e-12);
      CHECK(fixed_residual(s, space.basis[a]) < 1e-9);
      for (std::size_t b = 0; b < space.basis.size(); ++b) {
        const double ip = (space.basis[a].adjoint() * space.basis[b]).trace().real();
        CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-9);
      }
    }
    const ComplexMatrix& p = space.spectral_projector;
    CHECK(max_abs_diff(p * p, p) < 1e-9);
    CHECK(max_abs_diff(s.matrix() * p, p) < 1e-9);
  }
}

TEST_CASE("averaged iteration") {
  SUBCASE("NOT gate from |0> reaches I/2") {
    const Superoperator s = ctc_channel(not_gate_circuit(), state(Bb84State::zero));
    const IterationResult r = iterate_fixed_point(s, state(Bb84State::zero), 1e-12, 100000);
    CHECK(max_abs_diff(r.state.matrix(), ComplexMatrix::Identity(2, 2) / 2.0) < 1e-12);
    CHECK(r.residual <= 1e-12);
  }
  SUBCASE("a fixed start is returned at once") {
    const Superoperator s = ctc_channel(bhw2_circuit(), state(Bb84State::zero));
    const IterationResult r = iterate_fixed_point(s, state(Bb84State::zero), 1e-12, 100000);
    CHECK(r.iterations <= 1);
    CHECK(max_abs_diff(r.state.matrix(), basis_projector(2, 0)) < 1e-15);
  }
  SUBCASE("two-state channel at |-> from I/2 reaches |1><1|") {
    const Superoperator s = ctc_channel(bhw2_circuit(), state(Bb84State::minus));
    const IterationResult r = iterate_fixed_point(s, DensityOperator::maximally_mixed(2), 1e-12, 100000);
    CHECK(trace_distance(r.state.matrix(), basis_projector(2, 1)) < 1e-11);
  }
  SUBCASE("both schemes agree where the uniform mean converges") {
    const Superoperator s = ctc_channel(not_gate_circuit(), state(Bb84State::zero));
    const IterationResult u =
        iterate_fixed_point(s, state(Bb84State::zero), 1e-12, 100000, AveragingScheme::uniform);
    CHECK(max_abs_diff(u.state.matrix(), ComplexMatrix::Identity(2, 2) / 2.0) < 1e-12);
  }
  SUBCASE("uniform averaging stalls on an irrational rotation") {
    const Superoperator s = ctc_channel(phase_circuit(), state(Bb84State::zero));
    try {
      iterate_fixed_point(s, state(Bb84State::plus), 1e-12, 1000, AveragingScheme::uniform);
      FAIL("expected non-convergence");
    } catch (const NonConvergenceError& e) {
      CHECK(e.iterations() == 1000);
      CHECK(e.residual() > 1e-12);
      CHECK(e.residual() < 1e-2);
      CHECK(e.best().dim() == 2);
    }
    const IterationResult b = iterate_fixed_point(s, state(Bb84State::plus), 1e-12, 100000);
    CHECK(max_abs_diff(b.state.matrix(), ComplexMatrix::Identity(2, 2) / 2.0) < 1e-11);
  }
  SUBCASE("argument checks") {
    const Superoperator s = ctc_channel(bhw2_circuit(), state(Bb84State::zero));
    CHECK_THROWS_AS(iterate_fixed_point(s, state(Bb84State::zero), 0.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(iterate_fixed_point(s, DensityOperator::maximally_mixed(4), 1e-12, 10), std::invalid_argument);
    CHECK_THROWS_AS(iterate_fixed_point(s, state(Bb84State::one), 1e-12, 0), NonConvergenceError);
  }
}

TEST_CASE("solve on the named circuits") {
  SUBCASE("NOT gate selects I/2") {
    for (Bb84State in : {Bb84State::zero, Bb84State::plus}) {
      const FixedPointResult r = solve(not_gate_circuit(), state(in));
      CHECK(trace_distance(r.selected.matrix(), ComplexMatrix::Identity(2, 2) / 2.0) <= 1e-9);
      CHECK(r.residual <= 1e-12);
      CHECK(r.basis.size() == 2);
      CHECK_FALSE(r.unique);
    }
  }
  SUBCASE("two-state at |0>") {
    const FixedPointResult r = solve(bhw2_circuit(), state(Bb84State::zero));
    CHECK(r.unique);
    CHECK(trace_distance(r.selected.matrix(), basis_projector(2, 0)) < 1e-10);
    CHECK(r.iterative_gap < 1e-8);
  }
  SUBCASE("four-state at |-0>") {
    const DensityOperator in =
        DensityOperator::from_matrix(kron(state(Bb84State::minus).matrix(), basis_projector(2, 0)));
    const FixedPointResult r = solve(bhw4_circuit(), in);
    CHECK(r.unique);
    CHECK(trace_distance(r.selected.matrix(), basis_projector(4, 3)) < 1e-10);
    REQUIRE(r.iterations_used.has_value());
  }
  SUBCASE("identity circuit keeps the maximally mixed start") {
    const FixedPointResult r = solve(identity_circuit(1, 2), state(Bb84State::plus));
    CHECK(r.basis.size() == 16);
    CHECK(max_abs_diff(r.selected.matrix(), ComplexMatrix::Identity(4, 4) / 4.0) < 1e-15);
  }
}

TEST_CASE("cr_output") {
  CHECK(max_abs_diff(cr_output(bhw2_circuit(), state(Bb84State::zero)).matrix(), basis_projector(2, 0)) < 1e-10);
  CHECK(max_abs_diff(cr_output(bhw2_circuit(), state(Bb84State::minus)).matrix(), basis_projector(2, 1)) < 1e-10);

  const DensityOperator mixed_in =
      DensityOperator::from_matrix(kron(ComplexMatrix::Identity(2, 2) / 2.0, basis_projector(2, 0)));
  const ComplexMatrix out = cr_output(bhw4_circuit(), mixed_in).matrix();
  CHECK(max_abs_diff(out, ComplexMatrix::Identity(4, 4) / 4.0) < 1e-10);

  CHECK_THROWS_AS(output_state(bhw2_circuit(), state(Bb84State::zero), DensityOperator::maximally_mixed(4)),
                  std::invalid_argument);
}

TEST_CASE("nonlinearity defect") {
  const CtcCircuit bhw2 = bhw2_circuit();
  const DensityOperator zero = state(Bb84State::zero);

  SUBCASE("degenerate mixture") {
    CHECK(nonlinearity_defect(bhw2, zero, state(Bb84State::one), 0.0) <= 1e-12);
    CHECK(nonlinearity_defect(bhw2, zero, state(Bb84State::one), 1.0) <= 1e-12);
  }
  SUBCASE("frozen values for the two-state circuit") {
    CHECK(nonlinearity_defect(bhw2, zero, state(Bb84State::one), 0.5) == doctest::Approx(0.20412414523193154).epsilon(1e-9));
    CHECK(nonlinearity_defect(bhw2, zero, state(Bb84State::one), 0.25) == doctest::Approx(0.15909902576697318).epsilon(1e-9));
    CHECK(nonlinearity_defect(bhw2, zero, state(Bb84State::one), 0.75) == doctest::Approx(0.16925080009658255).epsilon(1e-9));
    CHECK(nonlinearity_defect(bhw2, zero, state(Bb84State::plus), 0.5) == doctest::Approx(0.10206207261596581).epsilon(1e-9));
    CHECK(nonlinearity_defect(bhw2, zero, state(Bb84State::plus), 0.25) == doctest::Approx(0.06123724356957939).epsilon(1e-9));
  }
  SUBCASE("the zero/minus pair mixes linearly") {
    for (double lambda : {0.25, 0.5, 0.75}) {
      CHECK(nonlinearity_defect(bhw2, zero, state(Bb84State::minus), lambda) <= 1e-9);
    }
  }
  SUBCASE("identity circuit is linear") {
    std::mt19937_64 rng(34);
    for (int t = 0; t < 10; ++t) {
      const DensityOperator a = random_density(2, rng);
      const DensityOperator b = random_density(2, rng);
      CHECK(nonlinearity_defect(identity_circuit(1, 1), a, b, 0.3) <= 1e-9);
    }
  }
  SUBCASE("product unitaries are linear") {
    std::mt19937_64 rng(35);
    for (int t = 0; t < 20; ++t) {
      const UnitaryGate u = UnitaryGate::from_matrix(kron(haar_unitary(2, rng), haar_unitary(2, rng)));
      const CtcCircuit c(1, 1, u, "product");
      const DensityOperator a = DensityOperator::from_pure(random_pure(2, rng));
      const DensityOperator b = random_density(2, rng);
      CHECK(nonlinearity_defect(c, a, b, 0.4) <= 1e-9);
    }
  }
  SUBCASE("argument checks") {
    CHECK_THROWS_AS(nonlinearity_defect(bhw2, zero, zero, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(nonlinearity_defect(bhw2, zero, zero, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(nonlinearity_defect(bhw2, zero, DensityOperator::maximally_mixed(4), 0.5), std::invalid_argument);
  }
}

TEST_CASE("a fixed point exists for random circuits") {
  std::mt19937_64 rng(36);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n_ctc = (t % 4 == 3) ? 2 : 1;
    const CtcCircuit c = random_circuit(1, n_ctc, rng);
    const DensityOperator in = DensityOperator::from_pure(random_pure(2, rng));
    const FixedPointResult r = solve(c, in);
    CHECK_FALSE(r.basis.empty());
    CHECK(r.residual <= 1e-8);
    CHECK(hermiticity_defect(r.selected.matrix()) <= 1e-10);
    CHECK(hermitian_eigen(r.selected.matrix()).values.minCoeff() >= -1e-10);
    const Superoperator s = ctc_channel(c, in);
    CHECK(trace_distance(r.selected.matrix(), s.apply(r.selected.matrix())) <= 1e-8);
    if (r.unique) CHECK(r.iterative_gap <= 1e-8);
  }
}

TEST_CASE("CTC interaction ignores purifications of the CR input") {
  std::mt19937_64 rng(37);
  const std::array<std::size_t, 1> cr{0};
  for (int t = 0; t < 20; ++t) {
    const CtcCircuit c = t == 0 ? bhw2_circuit() : random_circuit(1, 1, rng);
    const DensityOperator joint = DensityOperator::from_pure(random_pure(4, rng));
    const FixedPointResult extended = solve(c, joint, cr);
    const FixedPointResult reduced = solve(c, reduce_to_qubits(joint, cr));
    CHECK(max_abs_diff(extended.selected.matrix(), reduced.selected.matrix()) <= 1e-10);
  }
  const DensityOperator singlet = ket({0.0, kR, -kR, 0.0});
  const std::array<std::size_t, 1> bob{1};
  CHECK(max_abs_diff(solve(bhw2_circuit(), singlet, bob).selected.matrix(),
                     solve(bhw2_circuit(), DensityOperator::maximally_mixed(2)).selected.matrix()) <= 1e-10);
}

TEST_CASE("classical fixed points") {
  SUBCASE("NOT on one bit") {
    const std::vector<std::size_t> flip{1, 0};
    const ClassicalAnalysis a = classical_fixed_points(flip);
    CHECK(a.fixed_points.empty());
    REQUIRE(a.cycles.size() == 1);
    CHECK(a.cycles[0] == std::vector<std::size_t>{0, 1});
  }
  SUBCASE("identity on one bit") {
    const std::vector<std::size_t> id{0, 1};
    const ClassicalAnalysis a = classical_fixed_points(id);
    CHECK(a.fixed_points == std::vector<std::size_t>{0, 1});
    CHECK(a.cycles.size() == 2);
  }
  SUBCASE("3-bit rotation against exhaustive scan") {
    std::vector<std::size_t> rot(8);
    for (std::size_t b = 0; b < 8; ++b) rot[b] = ((b << 1) | (b >> 2)) & 7U;
    std::vector<std::size_t> scan;
    for (std::size_t b = 0; b < 8; ++b) {
      if (rot[b] == b) scan.push_back(b);
    }
    const ClassicalAnalysis a = classical_fixed_points(rot);
    CHECK(a.fixed_points == scan);
    CHECK(a.fixed_points == std::vector<std::size_t>{0, 7});
    REQUIRE(a.cycles.size() == 4);
    CHECK(a.cycles[1] == std::vector<std::size_t>{1, 2, 4});
    CHECK(a.cycles[2] == std::vector<std::size_t>{3, 6, 5});
  }
  SUBCASE("rejections") {
    const std::vector<std::size_t> three{0, 1, 2};
    CHECK_THROWS_AS(classical_fixed_points(three), std::invalid_argument);
    const std::vector<std::size_t> escape{0, 2};
    CHECK_THROWS_AS(classical_fixed_points(escape), std::invalid_argument);
  }
}
