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

#ifndef DCTC_CTC_SOLVER_HPP_
#define DCTC_CTC_SOLVER_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "dctc/gates.hpp"
#include "dctc/linalg.hpp"
#include "dctc/tolerances.hpp"

/// Deutsch consistency condition for CTC-bound qubits.
///
/// For a standard-form circuit with joint unitary U and chronology-respecting
/// input rho_in, the CTC state must satisfy
///
///     rho_ctc = Tr_CR[ U (rho_in ⊗ rho_ctc) U^dagger ],
///
/// i.e. it is a fixed point of a CPTP map that depends on rho_in. The CR
/// output Tr_CTC[ U (rho_in ⊗ rho_ctc) U^dagger ] is therefore nonlinear in
/// rho_in.
namespace dctc {

/// Column-stacking vectorisation: vec(rho)[i + j*d] = rho[i][j].
ComplexVector vec(const ComplexMatrix& rho);
ComplexMatrix unvec(const ComplexVector& v, std::size_t dim);

/// A linear map on d x d operators stored as a d^2 x d^2 matrix acting on
/// vec(rho). Construction checks trace preservation and complete positivity.
class Superoperator {
 public:
  static Superoperator from_matrix(ComplexMatrix m, const Tolerances& tol = kDefaultTolerances);

  std::size_t dim() const { return dim_; }
  const ComplexMatrix& matrix() const { return m_; }

  ComplexMatrix apply(const ComplexMatrix& rho) const;
  DensityOperator apply(const DensityOperator& rho) const;

  /// sum_ij E_ij ⊗ Λ(E_ij)
  ComplexMatrix choi() const;

 private:
  Superoperator(ComplexMatrix m, std::size_t dim) : m_(std::move(m)), dim_(dim) {}
  ComplexMatrix m_;
  std::size_t dim_;
};

/// The CTC channel rho ↦ Tr_CR[U (cr_input ⊗ rho) U^dagger].
Superoperator ctc_channel(const CtcCircuit& circuit, const DensityOperator& cr_input,
                          const Tolerances& tol = kDefaultTolerances);

struct RankDiagnostics {
  std::vector<double> singular_values;  // of (Λ - id), descending
  std::size_t null_dimension = 0;
  /// Some singular value lies within a factor 10 of the rank cutoff.
  bool ambiguous = false;
};

/// Eigenvalue-1 operator subspace of a channel.
struct FixedPointSpace {
  /// Hermitian, Frobenius-orthonormal, nonnegative trace.
  std::vector<ComplexMatrix> basis;
  bool unique = false;
  RankDiagnostics diagnostics;
  /// Spectral projector onto the fixed space along the remaining generalised
  /// eigenspaces; it maps any start state to the limit of averaged iteration.
  ComplexMatrix spectral_projector;
};

FixedPointSpace fixed_point_space(const Superoperator& channel, const Tolerances& tol = kDefaultTolerances);

enum class AveragingScheme {
  /// x_{k+1} = (x_k + Λ(x_k)) / 2: binomially weighted mean of the iterates,
  /// geometric convergence to the averaged limit.
  binomial,
  /// sigma_N = (1/N) sum_{k<N} Λ^k(start): residual decays as 1/N.
  uniform,
};

struct IterationResult {
  DensityOperator state;
  double residual;  // trace_distance(state, Λ(state))
  std::size_t iterations;
};

/// Raised when averaged iteration misses its tolerance within max_iters.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(DensityOperator best, double residual, std::size_t iterations);
  const DensityOperator& best() const { return best_; }
  double residual() const { return residual_; }
  std::size_t iterations() const { return iterations_; }

 private:
  DensityOperator best_;
  double residual_;
  std::size_t iterations_;
};

/// Raised when a solved fixed point fails its own post-conditions.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Averages channel iterates from `start` until the average is within `tol`
/// (trace distance) of its own image. Throws NonConvergenceError otherwise.
IterationResult iterate_fixed_point(const Superoperator& channel, const DensityOperator& start, double tol,
                                    std::size_t max_iters,
                                    AveragingScheme scheme = AveragingScheme::binomial);

struct FixedPointResult {
  std::vector<ComplexMatrix> basis;
  DensityOperator selected;
  bool unique;
  double residual;
  std::optional<std::size_t> iterations_used;
  /// Trace distance between `selected` and the raw iterate it was projected from.
  double iterative_gap;
  RankDiagnostics diagnostics;
};

/// Exact fixed space plus the canonical fixed point: averaged iteration from
/// I/d, projected into the fixed space. Throws SolverError if the selection's
/// residual exceeds tol.agreement, or if a unique exact solution and the
/// iterate disagree by more than tol.agreement.
FixedPointResult solve(const CtcCircuit& circuit, const DensityOperator& cr_input,
                       const Tolerances& tol = kDefaultTolerances);

/// As solve(), for a CR input embedded in a larger state: `joint` is reduced
/// to `cr_qubits` first, so any entanglement with other systems is dropped.
FixedPointResult solve(const CtcCircuit& circuit, const DensityOperator& joint,
                       std::span<const std::size_t> cr_qubits, const Tolerances& tol = kDefaultTolerances);

/// Tr_CTC[U (cr_input ⊗ ctc_state) U^dagger] for a given CTC state.
DensityOperator output_state(const CtcCircuit& circuit, const DensityOperator& cr_input,
                             const DensityOperator& ctc_state);

/// CR output using the canonical fixed point.
DensityOperator cr_output(const CtcCircuit& circuit, const DensityOperator& cr_input,
                          const Tolerances& tol = kDefaultTolerances);

/// trace_distance(out(λρ1 + (1-λ)ρ2), λ out(ρ1) + (1-λ) out(ρ2)).
double nonlinearity_defect(const CtcCircuit& circuit, const DensityOperator& rho1, const DensityOperator& rho2,
                           double lambda, const Tolerances& tol = kDefaultTolerances);

struct ClassicalAnalysis {
  std::vector<std::size_t> fixed_points;
  /// Every cycle of the functional graph, each rotated to start at its
  /// smallest state, ordered by that state. Fixed points appear as 1-cycles.
  std::vector<std::vector<std::size_t>> cycles;
};

/// Fixed points and cycles of a deterministic update s ↦ transition[s] on
/// {0, ..., 2^n - 1}.
ClassicalAnalysis classical_fixed_points(std::span<const std::size_t> transition);

}  // namespace dctc

#endif  // DCTC_CTC_SOLVER_HPP_
