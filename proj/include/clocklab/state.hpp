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
#include <string>
#include <vector>

#include "clocklab/common.hpp"
#include "clocklab/rng.hpp"

namespace clocklab {

/// Normalized amplitudes over a tensor product of subsystems. Factor 0 is the
/// most significant index, so the flat index of (i0, i1, ...) is
/// ((i0 * d1 + i1) * d2 + i2) ...
class StateVector {
 public:
  StateVector(CVector amplitudes, std::vector<std::size_t> factor_shape);

  const CVector& amplitudes() const noexcept { return amplitudes_; }
  const std::vector<std::size_t>& factor_shape() const noexcept { return shape_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }

  /// Rescales `v` to unit norm; throws NumericalError on a zero vector.
  static StateVector normalized(CVector v, std::vector<std::size_t> factor_shape);

 private:
  CVector amplitudes_;
  std::vector<std::size_t> shape_;
};

struct BasisOutcome {
  std::size_t index = 0;
  /// Binary label when the subsystem has 2^k levels, decimal otherwise.
  std::string label;
};

/// Born probabilities of the reduced state of one factor.
RVector marginal_probabilities(const StateVector& s, std::size_t subsystem);

/// Projects factor `subsystem` onto basis state `index` and renormalizes.
StateVector collapse(const StateVector& s, std::size_t subsystem, std::size_t index);

/// Samples one basis outcome of factor `subsystem`.
BasisOutcome sample_basis(const StateVector& s, std::size_t subsystem, Rng& rng);
BasisOutcome sample_basis(const StateVector& s, std::size_t subsystem, std::uint64_t seed);

/// Draws an index from a discrete distribution (weights need not sum to 1).
std::size_t sample_index(const RVector& weights, Rng& rng);

std::string basis_label(std::size_t index, std::size_t dim);

}  // namespace clocklab
