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

#include "dctc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace dctc {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

// Offsets into the full index contributed by every joint value of the chosen
// subsystems, enumerated big-endian over those subsystems.
std::vector<std::size_t> subsystem_offsets(std::span<const std::size_t> dims,
                                           std::span<const std::size_t> strides,
                                           const std::vector<std::size_t>& chosen) {
  std::vector<std::size_t> offsets{0};
  for (std::size_t s : chosen) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * dims[s]);
    for (std::size_t base : offsets) {
      for (std::size_t v = 0; v < dims[s]; ++v) next.push_back(base + v * strides[s]);
    }
    offsets = std::move(next);
  }
  return offsets;
}

}  // namespace

bool all_finite(const ComplexMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

std::size_t qubit_count_for_dim(std::size_t n) {
  if (n == 0 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("dimension " + std::to_string(n) + " is not a power of two");
  }
  std::size_t q = 0;
  while ((std::size_t{1} << q) < n) ++q;
  return q;
}

// --- PureState ---------------------------------------------------------------

PureState PureState::from_amplitudes(ComplexVector amplitudes, double tol) {
  if (amplitudes.size() == 0) throw std::invalid_argument("pure state: empty amplitude vector");
  if (!all_finite(amplitudes)) throw std::invalid_argument("pure state: non-finite amplitude");
  const double norm = amplitudes.squaredNorm();
  if (std::abs(norm - 1.0) > tol) {
    std::ostringstream msg;
    msg << "pure state: norm " << norm << " differs from 1 by more than " << tol;
    throw std::invalid_argument(msg.str());
  }
  return PureState(std::move(amplitudes));
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::invalid_argument("pure state: basis index out of range");
  ComplexVector v = ComplexVector::Zero(idx(dim));
  v(idx(index)) = 1.0;
  return PureState(std::move(v));
}

ComplexMatrix PureState::projector() const { return amplitudes_ * amplitudes_.adjoint(); }

// --- DensityOperator ---------------------------------------------------------

DensityOperator DensityOperator::from_matrix(ComplexMatrix m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument("density operator: matrix must be square and nonempty");
  }
  qubit_count_for_dim(static_cast<std::size_t>(m.rows()));
  if (!all_finite(m)) throw std::invalid_argument("density operator: non-finite entry");

  std::ostringstream msg;
  if (const double h = hermiticity_defect(m); h > tol) {
    msg << "density operator: not Hermitian (defect " << h << ")";
    throw std::invalid_argument(msg.str());
  }
  if (const Complex tr = m.trace(); std::abs(tr - 1.0) > tol) {
    msg << "density operator: trace " << tr.real() << " differs from 1";
    throw std::invalid_argument(msg.str());
  }
  if (const double lo = hermitian_eigen(m).values.minCoeff(); lo < -tol) {
    msg << "density operator: negative eigenvalue " << lo;
    throw std::invalid_argument(msg.str());
  }
  return DensityOperator(std::move(m));
}

DensityOperator DensityOperator::from_pure(const PureState& psi) { return DensityOperator(psi.projector()); }

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
  qubit_count_for_dim(dim);
  return DensityOperator(ComplexMatrix::Identity(idx(dim), idx(dim)) / static_cast<double>(dim));
}

// --- kernel operations -------------------------------------------------------

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> subsystem_dims,
                            std::span<const std::size_t> keep) {
  std::size_t total = 1;
  for (std::size_t d : subsystem_dims) {
    if (d == 0) throw std::invalid_argument("partial_trace: zero subsystem dimension");
    total *= d;
  }
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != total) {
    std::ostringstream msg;
    msg << "partial_trace: subsystem dimensions multiply to " << total << " but matrix is " << m.rows()
        << "x" << m.cols();
    throw std::invalid_argument(msg.str());
  }
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");

  std::vector<bool> kept(subsystem_dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= subsystem_dims.size()) {
      throw std::invalid_argument("partial_trace: subsystem index " + std::to_string(k) + " out of range (" +
                                  std::to_string(subsystem_dims.size()) + " subsystems)");
    }
    if (kept[k]) throw std::invalid_argument("partial_trace: duplicate subsystem index " + std::to_string(k));
    kept[k] = true;
  }

  std::vector<std::size_t> strides(subsystem_dims.size());
  std::size_t stride = 1;
  for (std::size_t s = subsystem_dims.size(); s-- > 0;) {
    strides[s] = stride;
    stride *= subsystem_dims[s];
  }
  std::vector<std::size_t> kept_list, traced_list;
  for (std::size_t s = 0; s < subsystem_dims.size(); ++s) (kept[s] ? kept_list : traced_list).push_back(s);

  const auto kept_off = subsystem_offsets(subsystem_dims, strides, kept_list);
  const auto traced_off = subsystem_offsets(subsystem_dims, strides, traced_list);

  const Index n = idx(kept_off.size());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Index c = 0; c < n; ++c) {
    for (Index r = 0; r < n; ++r) {
      Complex acc{0.0, 0.0};
      for (std::size_t t : traced_off) acc += m(idx(kept_off[r] + t), idx(kept_off[c] + t));
      out(r, c) = acc;
    }
  }
  return out;
}

DensityOperator reduce_to_qubits(const DensityOperator& rho, std::span<const std::size_t> keep) {
  const std::vector<std::size_t> dims(rho.n_qubits(), 2);
  ComplexMatrix reduced = partial_trace(rho.matrix(), dims, keep);
  return DensityOperator::from_matrix(std::move(reduced));
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eigen: decomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("trace_distance: dimension mismatch (" + std::to_string(a.rows()) + " vs " +
                                std::to_string(b.rows()) + ")");
  }
  const ComplexMatrix diff = a - b;
  // Symmetrize so that round-off in a non-exactly-Hermitian input is not
  // silently dropped by reading only one triangle.
  const ComplexMatrix herm = 0.5 * (diff + diff.adjoint());
  return 0.5 * Eigen::SelfAdjointEigenSolver<ComplexMatrix>(herm, Eigen::EigenvaluesOnly)
                   .eigenvalues()
                   .cwiseAbs()
                   .sum();
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  return trace_distance(rho.matrix(), sigma.matrix());
}

double von_neumann_entropy(const DensityOperator& rho) {
  double s = 0.0;
  for (double lambda : hermitian_eigen(rho.matrix()).values) {
    if (lambda > 1e-12) s -= lambda * std::log2(lambda);
  }
  return s;
}

}  // namespace dctc
