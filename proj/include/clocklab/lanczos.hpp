// Copyright 2026 The clocklab Authors
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

#pragma once

#include <cstdint>
#include <functional>
#include <limits>

#include "clocklab/common.hpp"

namespace clocklab {

struct LanczosOptions {
  int count = 16;
  /// 0 picks min(count, 8). Must be at least the largest multiplicity wanted.
  int block_size = 0;
  /// 0 picks max(3 count, count + 6 block).
  int max_basis = 0;
  int max_restarts = 2000;
  /// Convergence when every wanted residual is below tol * max(1, norm).
  double tol = 1e-10;
  std::uint64_t seed = 0x5eed;
  /// Ritz values at or below this are treated as spurious: never wanted and
  /// dropped at restarts.
  double cutoff = -std::numeric_limits<double>::infinity();
  /// Maps fresh random directions into the subspace of interest.
  std::function<CMatrix(const CMatrix&)> filter;
};

struct LanczosResult {
  RVector values;   // ascending
  CMatrix vectors;  // orthonormal columns
  double max_residual = 0.0;
  int restarts = 0;
  long matvecs = 0;
};

/// Applies a Hermitian operator to a block of column vectors.
using BlockApply = std::function<CMatrix(const CMatrix&)>;

/// Lowest eigenpairs of a Hermitian operator by block Lanczos with full
/// reorthogonalization and thick restarts. `norm` is an upper bound on the
/// operator norm. If `start` is nonempty its columns seed the first block.
LanczosResult lowest_eigenpairs(const BlockApply& apply, std::size_t dim, double norm,
                                const LanczosOptions& options, const CMatrix& start = CMatrix());

}  // namespace clocklab
