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

#include "dctc/ctc_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace dctc {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

ComplexMatrix hermitize(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

ComplexMatrix matrix_unit(std::size_t dim, std::size_t i, std::size_t j) {
  ComplexMatrix e = ComplexMatrix::Zero(idx(dim), idx(dim));
  e(idx(i), idx(j)) = 1.0;
  return e;
}

// Re Tr(a^dagger b)
double real_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

// Hermitian, trace-one version of a matrix that is a state up to round-off.
DensityOperator as_state(const ComplexMatrix& m, double tol) {
  ComplexMatrix h = hermitize(m);
  const Complex tr = h.trace();
  if (std::abs(tr) < 1e-300) throw SolverError("fixed point has zero trace");
  h /= tr.real();
  return DensityOperator::from_matrix(std::move(h), tol);
}

std::string describe_residual(double r) {
  std::ostringstream s;
  s << r;
  return s.str();
}

}  // namespace

ComplexVector vec(const ComplexMatrix& rho) {
  return Eigen::Map<const ComplexVector>(rho.data(), rho.size());
}

ComplexMatrix unvec(const ComplexVector& v, std::size_t dim) {
  if (static_cast<std::size_t>(v.size()) != dim * dim) throw std::invalid_argument("unvec: length is not dim^2");
  return Eigen::Map<const ComplexMatrix>(v.data(), idx(dim), idx(dim));
}

// --- Superoperator -----------------------------------------------------------

Superoperator Superoperator::from_matrix(ComplexMatrix m, const Tolerances& tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("superoperator: matrix must be square");
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(m.rows()))));
  if (d * d != static_cast<std::size_t>(m.rows()) || d == 0) {
    throw std::invalid_argument("superoperator: size " + std::to_string(m.rows()) + " is not a perfect square");
  }
  if (!all_finite(m)) throw std::invalid_argument("superoperator: non-finite entry");
  Superoperator op(std::move(m), d);

  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const Complex tr = op.apply(matrix_unit(d, i, j)).trace();
      const double expected = (i == j) ? 1.0 : 0.0;
      if (std::abs(tr - expected) > tol.validity) {
        throw std::invalid_argument("superoperator: not trace preserving on E_" + std::to_string(i) +
                                    std::to_string(j));
      }
    }
  }
  const double min_choi = hermitian_eigen(hermitize(op.choi())).values.minCoeff();
  if (min_choi < -tol.complete_positivity) {
    throw std::invalid_argument("superoperator: not completely positive (Choi eigenvalue " +
                                describe_residual(min_choi) + ")");
  }
  return op;
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& rho) const {
  if (static_cast<std::size_t>(rho.rows()) != dim_ || rho.rows() != rho.cols()) {
    throw std::invalid_argument("superoperator: operand has wrong dimension");
  }
  return unvec(m_ * vec(rho), dim_);
}

DensityOperator Superoperator::apply(const DensityOperator& rho) const {
  return DensityOperator::from_matrix(hermitize(apply(rho.matrix())));
}

ComplexMatrix Superoperator::choi() const {
  const Index d = idx(dim_);
  ComplexMatrix j = ComplexMatrix::Zero(d * d, d * d);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      j.block(idx(r) * d, idx(c) * d, d, d) = apply(matrix_unit(dim_, r, c));
    }
  }
  return j;
}

// --- channel construction ----------------------------------------------------

Superoperator ctc_channel(const CtcCircuit& circuit, const DensityOperator& cr_input, const Tolerances& tol) {
  if (cr_input.dim() != circuit.cr_dim()) {
    throw std::invalid_argument("ctc_channel: CR input has dimension " + std::to_string(cr_input.dim()) +
                                ", circuit expects " + std::to_string(circuit.cr_dim()));
  }
  const std::size_t d = circuit.ctc_dim();
  const ComplexMatrix& u = circuit.unitary().matrix();
  const std::array<std::size_t, 2> dims{circuit.cr_dim(), d};
  const std::array<std::size_t, 1> keep_ctc{1};

  ComplexMatrix s(idx(d * d), idx(d * d));
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      const ComplexMatrix joint = u * kron(cr_input.matrix(), matrix_unit(d, i, j)) * u.adjoint();
      s.col(idx(i + j * d)) = vec(partial_trace(joint, dims, keep_ctc));
    }
  }
  return Superoperator::from_matrix(std::move(s), tol);
}

// --- exact fixed space -------------------------------------------------------

FixedPointSpace fixed_point_space(const Superoperator& channel, const Tolerances& tol) {
  const std::size_t d = channel.dim();
  const Index n = idx(d * d);
  const ComplexMatrix a = channel.matrix() - ComplexMatrix::Identity(n, n);
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);

  FixedPointSpace space;
  const Eigen::VectorXd& sv = svd.singularValues();
  space.diagnostics.singular_values.assign(sv.data(), sv.data() + sv.size());
  std::size_t null_dim = 0;
  for (Index k = 0; k < sv.size(); ++k) {
    if (sv(k) < tol.rank_cutoff) ++null_dim;
    if (sv(k) >= tol.rank_cutoff / 10.0 && sv(k) <= tol.rank_cutoff * 10.0) space.diagnostics.ambiguous = true;
  }
  if (null_dim == 0) {
    // Every CPTP map has a fixed point; fall back to the weakest direction.
    null_dim = 1;
    space.diagnostics.ambiguous = true;
  }
  space.diagnostics.null_dimension = null_dim;

  const ComplexMatrix right = svd.matrixV().rightCols(idx(null_dim));
  const ComplexMatrix left = svd.matrixU().rightCols(idx(null_dim));
  const ComplexMatrix overlap = left.adjoint() * right;
  Eigen::FullPivLU<ComplexMatrix> lu(overlap);
  if (!lu.isInvertible()) throw SolverError("fixed_point_space: eigenvalue 1 is not semisimple");
  space.spectral_projector = right * lu.inverse() * left.adjoint();

  // The fixed space of a Hermiticity-preserving map is closed under adjoint,
  // so the Hermitian and anti-Hermitian parts of each null vector span it.
  std::vector<ComplexMatrix> candidates;
  for (Index k = 0; k < right.cols(); ++k) {
    const ComplexMatrix x = unvec(right.col(k), d);
    candidates.push_back(hermitize(x));
    candidates.push_back((x - x.adjoint()) / Complex(0.0, 2.0));
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const ComplexMatrix& p, const ComplexMatrix& q) { return p.norm() > q.norm(); });
  for (ComplexMatrix c : candidates) {
    if (space.basis.size() == null_dim) break;
    for (int pass = 0; pass < 2; ++pass) {
      for (const ComplexMatrix& b : space.basis) c -= real_inner(b, c) * b;
    }
    const double norm = c.norm();
    if (norm < 1e-6) continue;
    c /= norm;
    if (c.trace().real() < 0.0) c = -c;
    space.basis.push_back(hermitize(c));
  }
  space.unique = space.basis.size() == 1;
  return space;
}

// --- iteration ---------------------------------------------------------------

NonConvergenceError::NonConvergenceError(DensityOperator best, double residual, std::size_t iterations)
    : std::runtime_error("fixed-point iteration did not converge after " + std::to_string(iterations) +
                         " iterations (best residual " + describe_residual(residual) + ")"),
      best_(std::move(best)),
      residual_(residual),
      iterations_(iterations) {}

IterationResult iterate_fixed_point(const Superoperator& channel, const DensityOperator& start, double tol,
                                    std::size_t max_iters, AveragingScheme scheme) {
  if (!(tol > 0.0)) throw std::invalid_argument("iterate_fixed_point: tolerance must be positive");
  if (start.dim() != channel.dim()) throw std::invalid_argument("iterate_fixed_point: start has wrong dimension");

  ComplexMatrix avg = start.matrix();
  ComplexMatrix orbit = start.matrix();  // Λ^k(start), uniform scheme only
  ComplexMatrix sum = start.matrix();
  ComplexMatrix best = avg;
  double best_residual = std::numeric_limits<double>::infinity();

  for (std::size_t k = 0;; ++k) {
    const ComplexMatrix image = hermitize(channel.apply(avg));
    const double residual = trace_distance(avg, image);
    if (residual < best_residual) {
      best_residual = residual;
      best = avg;
    }
    if (residual <= tol) return {as_state(avg, kDefaultTolerances.validity), residual, k};
    if (k == max_iters) break;

    if (scheme == AveragingScheme::binomial) {
      avg = hermitize(0.5 * (avg + image));
    } else {
      orbit = hermitize(channel.apply(orbit));
      sum += orbit;
      avg = sum / static_cast<double>(k + 2);
    }
  }
  throw NonConvergenceError(as_state(best, kDefaultTolerances.validity), best_residual, max_iters);
}

// --- solve -------------------------------------------------------------------

FixedPointResult solve(const CtcCircuit& circuit, const DensityOperator& cr_input, const Tolerances& tol) {
  const Superoperator channel = ctc_channel(circuit, cr_input, tol);
  FixedPointSpace space = fixed_point_space(channel, tol);

  const std::size_t d = channel.dim();
  const IterationResult iterate =
      iterate_fixed_point(channel, DensityOperator::maximally_mixed(d), tol.convergence, tol.max_iters);

  const ComplexVector projected = space.spectral_projector * vec(iterate.state.matrix());
  DensityOperator selected = as_state(unvec(projected, d), tol.validity);
  const double residual = trace_distance(selected.matrix(), channel.apply(selected.matrix()));
  if (residual > tol.agreement) {
    throw SolverError("selected fixed point has residual " + describe_residual(residual));
  }
  if (space.unique) {
    const ComplexMatrix exact = space.basis.front() / space.basis.front().trace();
    const double gap = trace_distance(exact, iterate.state.matrix());
    if (gap > tol.agreement) {
      throw SolverError("exact and iterative fixed points disagree by " + describe_residual(gap));
    }
  }
  const double gap = trace_distance(selected, iterate.state);
  return FixedPointResult{std::move(space.basis), std::move(selected), space.unique,
                          residual,               iterate.iterations,  gap,
                          std::move(space.diagnostics)};
}

FixedPointResult solve(const CtcCircuit& circuit, const DensityOperator& joint,
                       std::span<const std::size_t> cr_qubits, const Tolerances& tol) {
  return solve(circuit, reduce_to_qubits(joint, cr_qubits), tol);
}

DensityOperator output_state(const CtcCircuit& circuit, const DensityOperator& cr_input,
                             const DensityOperator& ctc_state) {
  if (cr_input.dim() != circuit.cr_dim() || ctc_state.dim() != circuit.ctc_dim()) {
    throw std::invalid_argument("output_state: state dimensions do not match the circuit");
  }
  const ComplexMatrix& u = circuit.unitary().matrix();
  const ComplexMatrix joint = u * kron(cr_input.matrix(), ctc_state.matrix()) * u.adjoint();
  const std::array<std::size_t, 2> dims{circuit.cr_dim(), circuit.ctc_dim()};
  const std::array<std::size_t, 1> keep_cr{0};
  return DensityOperator::from_matrix(hermitize(partial_trace(joint, dims, keep_cr)));
}

DensityOperator cr_output(const CtcCircuit& circuit, const DensityOperator& cr_input, const Tolerances& tol) {
  return output_state(circuit, cr_input, solve(circuit, cr_input, tol).selected);
}

double nonlinearity_defect(const CtcCircuit& circuit, const DensityOperator& rho1, const DensityOperator& rho2,
                           double lambda, const Tolerances& tol) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("nonlinearity_defect: lambda outside [0, 1]");
  if (rho1.dim() != rho2.dim()) throw std::invalid_argument("nonlinearity_defect: input dimensions differ");
  const DensityOperator mix =
      DensityOperator::from_matrix(lambda * rho1.matrix() + (1.0 - lambda) * rho2.matrix(), tol.validity);
  const ComplexMatrix linear = lambda * cr_output(circuit, rho1, tol).matrix() +
                               (1.0 - lambda) * cr_output(circuit, rho2, tol).matrix();
  return trace_distance(cr_output(circuit, mix, tol).matrix(), linear);
}

// --- classical ---------------------------------------------------------------

ClassicalAnalysis classical_fixed_points(std::span<const std::size_t> transition) {
  const std::size_t n = transition.size();
  qubit_count_for_dim(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (transition[s] >= n) {
      throw std::invalid_argument("transition maps state " + std::to_string(s) + " outside the domain");
    }
  }

  ClassicalAnalysis out;
  for (std::size_t s = 0; s < n; ++s) {
    if (transition[s] == s) out.fixed_points.push_back(s);
  }

  // 0 = unvisited, 1 = on the current walk, 2 = finished.
  std::vector<int> state(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (state[s] != 0) continue;
    std::vector<std::size_t> walk;
    std::size_t cur = s;
    while (state[cur] == 0) {
      state[cur] = 1;
      walk.push_back(cur);
      cur = transition[cur];
    }
    if (state[cur] == 1) {
      auto first = std::find(walk.begin(), walk.end(), cur);
      std::vector<std::size_t> cycle(first, walk.end());
      std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
      out.cycles.push_back(std::move(cycle));
    }
    for (std::size_t w : walk) state[w] = 2;
  }
  std::sort(out.cycles.begin(), out.cycles.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

}  // namespace dctc
