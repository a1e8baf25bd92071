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

#ifndef DCTC_TOLERANCES_HPP_
#define DCTC_TOLERANCES_HPP_

#include <cstddef>

namespace dctc {

/// Every numerical threshold used by the library lives here so that callers
/// can tighten or relax them in one place.
struct Tolerances {
  /// Hermiticity, unit trace, positivity, unitarity and norm checks.
  double validity = 1e-10;
  /// Residual target for the iterative fixed-point search.
  double convergence = 1e-12;
  /// Singular values of (channel - identity) below this count as zero.
  double rank_cutoff = 1e-9;
  /// Minimum Choi eigenvalue accepted as completely positive.
  double complete_positivity = 1e-9;
  /// Maximum trace distance between the exact and the iterative fixed point
  /// when the fixed point is unique, and maximum accepted residual of the
  /// selected fixed point.
  double agreement = 1e-8;
  std::size_t max_iters = 100000;
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace dctc

#endif  // DCTC_TOLERANCES_HPP_
