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

#include "clocklab/operator.hpp"

#include <string>

#include "clocklab/kernels.hpp"

namespace clocklab {

CMatrix HermitianOperator::to_dense() const {
  const std::size_t d = dim();
  if (d > kDenseLimit) {
    throw CapacityError("operator of dimension " + std::to_string(d) + " is too large to assemble densely");
  }
  const auto n = static_cast<Eigen::Index>(d);
  CMatrix m(n, n);
  CVector e = CVector::Zero(n);
  CVector col(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    e[j] = 1.0;
    apply(as_span(e), as_span(col));
    m.col(j) = col;
    e[j] = 0.0;
  }
  return m;
}

CVector HermitianOperator::operator*(const CVector& v) const {
  if (static_cast<std::size_t>(v.size()) != dim()) throw std::invalid_argument("operator/vector size mismatch");
  CVector out(v.size());
  apply(as_span(v), as_span(out));
  return out;
}

CMatrix HermitianOperator::apply_block(const CMatrix& in) const {
  if (static_cast<std::size_t>(in.rows()) != dim()) throw std::invalid_argument("operator/block size mismatch");
  CMatrix out(in.rows(), in.cols());
  CVector x(in.rows());
  CVector y(in.rows());
  for (Eigen::Index j = 0; j < in.cols(); ++j) {
    x = in.col(j);
    apply(as_span(x), as_span(y));
    out.col(j) = y;
  }
  return out;
}

void require_hermitian(const CMatrix& m) {
  if (m.rows() != m.cols()) throw NumericalError("operator matrix is not square");
  const double norm = m.norm();
  const double err = (m - m.adjoint()).norm();
  if (err > 1e-12 * std::max(1.0, norm)) {
    throw NumericalError("non-Hermitian input (||H - H^dagger|| = " + std::to_string(err) + ")");
  }
}

DenseOperator::DenseOperator(CMatrix m) : m_(std::move(m)) {
  require_hermitian(m_);
  // Frobenius norm bounds the spectral norm
  norm_ = m_.norm();
}

void DenseOperator::apply(std::span<const Complex> in, std::span<Complex> out) const {
  omp::matvec(m_, in, out);
}

}  // namespace clocklab
