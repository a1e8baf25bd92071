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

#ifndef DCTC_LINALG_HPP_
#define DCTC_LINALG_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dctc/tolerances.hpp"

/// Dense complex linear algebra for few-qubit states and operators.
///
/// Qubit ordering is big-endian throughout: qubit 0 is the most significant
/// bit of a basis index, so kron(a, b) places `a` on the leading qubits.
namespace dctc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// True when every entry is finite.
bool all_finite(const ComplexMatrix& m);

/// Largest |m[i][j] - conj(m[j][i])|.
double hermiticity_defect(const ComplexMatrix& m);

/// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Returns log2(n) if n is a positive power of two, otherwise throws.
std::size_t qubit_count_for_dim(std::size_t n);

/// A pure state vector with unit norm.
class PureState {
 public:
  /// Validates unit norm (|<psi|psi> - 1| <= tol) and finiteness.
  static PureState from_amplitudes(ComplexVector amplitudes,
                                   double tol = kDefaultTolerances.validity);
  /// The computational basis state |index> in dimension `dim`.
  static PureState basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  Complex amplitude(std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

  /// |psi><psi|
  ComplexMatrix projector() const;

 private:
  explicit PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {}
  ComplexVector amplitudes_;
};

/// A trace-one positive-semidefinite operator on 2^n dimensions.
class DensityOperator {
 public:
  /// Validates Hermiticity, unit trace and positivity at tolerance `tol`.
  /// Throws std::invalid_argument naming the violated property.
  static DensityOperator from_matrix(ComplexMatrix m, double tol = kDefaultTolerances.validity);
  static DensityOperator from_pure(const PureState& psi);
  static DensityOperator maximally_mixed(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  std::size_t n_qubits() const { return qubit_count_for_dim(dim()); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  explicit DensityOperator(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// Kronecker product; entry [i*b.rows+k][j*b.cols+l] = a[i][j]*b[k][l].
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduced matrix on the subsystems listed in `keep`.
///
/// `subsystem_dims` lists the factor dimensions in tensor order; their product
/// must equal m.rows() == m.cols(). `keep` is a nonempty set of indices into
/// `subsystem_dims` (duplicates rejected); the kept factors appear in the
/// result in ascending index order. Throws std::invalid_argument on any
/// dimension mismatch.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> subsystem_dims,
                            std::span<const std::size_t> keep);

/// Qubit convenience wrapper: keeps the listed qubits of an n-qubit state.
DensityOperator reduce_to_qubits(const DensityOperator& rho, std::span<const std::size_t> keep);

struct HermitianEigen {
  Eigen::VectorXd values;  // ascending
  ComplexMatrix vectors;   // columns are orthonormal eigenvectors
};

/// Eigen-decomposition of a Hermitian matrix (only the lower triangle is read).
HermitianEigen hermitian_eigen(const ComplexMatrix& m);

/// (1/2) * sum |eig(a - b)| for Hermitian a, b of equal shape.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

/// -sum lambda log2 lambda over eigenvalues above 1e-12, in bits.
double von_neumann_entropy(const DensityOperator& rho);

}  // namespace dctc

#endif  // DCTC_LINALG_HPP_
