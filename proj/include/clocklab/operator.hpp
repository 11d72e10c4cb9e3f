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

#include <span>

#include "clocklab/common.hpp"

namespace clocklab {

/// A Hermitian operator that can be applied without forming its matrix.
class HermitianOperator {
 public:
  virtual ~HermitianOperator() = default;

  virtual std::size_t dim() const = 0;
  /// out = H in
  virtual void apply(std::span<const Complex> in, std::span<Complex> out) const = 0;
  /// Upper bound on the spectral norm.
  virtual double norm_bound() const = 0;
  /// Dense matrix; implementations may refuse above kDenseLimit.
  virtual CMatrix to_dense() const;

  CVector operator*(const CVector& v) const;
  /// Applies H to every column.
  CMatrix apply_block(const CMatrix& in) const;
};

class DenseOperator final : public HermitianOperator {
 public:
  /// Throws NumericalError if `m` is not Hermitian to 1e-12 relative.
  explicit DenseOperator(CMatrix m);

  std::size_t dim() const override { return static_cast<std::size_t>(m_.rows()); }
  void apply(std::span<const Complex> in, std::span<Complex> out) const override;
  double norm_bound() const override { return norm_; }
  CMatrix to_dense() const override { return m_; }
  const CMatrix& matrix() const noexcept { return m_; }

 private:
  CMatrix m_;
  double norm_;
};

/// Throws NumericalError when ||m - m^dagger|| exceeds 1e-12 max(1, ||m||).
void require_hermitian(const CMatrix& m);

}  // namespace clocklab
