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

#include "clocklab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace clocklab {
namespace {

// plain product without the inf/nan recovery of operator*
inline Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) {
    throw std::invalid_argument("kernel operands differ in length");
  }
}

std::size_t block_count(std::size_t n) { return (n + kReductionBlock - 1) / kReductionBlock; }

Complex block_dot(std::span<const Complex> a, std::span<const Complex> b, std::size_t blk) {
  const std::size_t lo = blk * kReductionBlock;
  const std::size_t hi = std::min(a.size(), lo + kReductionBlock);
  Complex s = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    s += std::conj(a[i]) * b[i];
  }
  return s;
}

Complex block_sum(std::span<const Complex> a, std::size_t blk) {
  const std::size_t lo = blk * kReductionBlock;
  const std::size_t hi = std::min(a.size(), lo + kReductionBlock);
  Complex s = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    s += a[i];
  }
  return s;
}

}  // namespace

namespace serial {

Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
  require_same_size(a.size(), b.size());
  Complex s = 0.0;
  for (std::size_t blk = 0; blk < block_count(a.size()); ++blk) {
    s += block_dot(a, b, blk);
  }
  return s;
}

double norm2(std::span<const Complex> a) { return std::sqrt(dot(a, a).real()); }

void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  require_same_size(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] += alpha * x[i];
  }
}

void matvec(const CMatrix& m, std::span<const Complex> x, std::span<Complex> y) {
  require_same_size(static_cast<std::size_t>(m.cols()), x.size());
  require_same_size(static_cast<std::size_t>(m.rows()), y.size());
  std::fill(y.begin(), y.end(), Complex(0.0));
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const Complex xc = x[static_cast<std::size_t>(c)];
    const Complex* col = m.data() + c * m.rows();
    for (Eigen::Index r = 0; r < m.rows(); ++r) y[static_cast<std::size_t>(r)] += mul(col[r], xc);
  }
}

void reflect_uniform(std::span<Complex> v, Complex phase) {
  Complex total = 0.0;
  for (std::size_t blk = 0; blk < block_count(v.size()); ++blk) {
    total += block_sum(v, blk);
  }
  const Complex mean = total / static_cast<double>(v.size());
  const Complex f = phase - 1.0;
  for (auto& x : v) {
    x += f * (x - mean);
  }
}

}  // namespace serial

namespace omp {

Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
  require_same_size(a.size(), b.size());
  const auto nb = static_cast<std::ptrdiff_t>(block_count(a.size()));
  std::vector<Complex> partial(static_cast<std::size_t>(nb));
#pragma omp parallel for schedule(static) if (nb > 1)
  for (std::ptrdiff_t blk = 0; blk < nb; ++blk) {
    partial[static_cast<std::size_t>(blk)] = block_dot(a, b, static_cast<std::size_t>(blk));
  }
  Complex s = 0.0;
  for (const auto& p : partial) {
    s += p;
  }
  return s;
}

double norm2(std::span<const Complex> a) { return std::sqrt(dot(a, a).real()); }

void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  require_same_size(x.size(), y.size());
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (n > 4 * static_cast<std::ptrdiff_t>(kReductionBlock))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    y[static_cast<std::size_t>(i)] += alpha * x[static_cast<std::size_t>(i)];
  }
}

void matvec(const CMatrix& m, std::span<const Complex> x, std::span<Complex> y) {
  require_same_size(static_cast<std::size_t>(m.cols()), x.size());
  require_same_size(static_cast<std::size_t>(m.rows()), y.size());
  const Eigen::Index rows = m.rows();
  constexpr Eigen::Index kChunk = 256;
  const Eigen::Index chunks = (rows + kChunk - 1) / kChunk;
#pragma omp parallel for schedule(static) if (rows * m.cols() > 65536)
  for (Eigen::Index k = 0; k < chunks; ++k) {
    const Eigen::Index r0 = k * kChunk;
    const Eigen::Index r1 = std::min(rows, r0 + kChunk);
    for (Eigen::Index r = r0; r < r1; ++r) y[static_cast<std::size_t>(r)] = 0.0;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Complex xc = x[static_cast<std::size_t>(c)];
      const Complex* col = m.data() + c * rows;
      for (Eigen::Index r = r0; r < r1; ++r) y[static_cast<std::size_t>(r)] += mul(col[r], xc);
    }
  }
}

void reflect_uniform(std::span<Complex> v, Complex phase) {
  const auto nb = static_cast<std::ptrdiff_t>(block_count(v.size()));
  std::vector<Complex> partial(static_cast<std::size_t>(nb));
#pragma omp parallel for schedule(static) if (nb > 1)
  for (std::ptrdiff_t blk = 0; blk < nb; ++blk) {
    partial[static_cast<std::size_t>(blk)] = block_sum(v, static_cast<std::size_t>(blk));
  }
  Complex total = 0.0;
  for (const auto& p : partial) {
    total += p;
  }
  const Complex mean = total / static_cast<double>(v.size());
  const Complex f = phase - 1.0;
  const auto n = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel for schedule(static) if (nb > 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    auto& x = v[static_cast<std::size_t>(i)];
    x += f * (x - mean);
  }
}

}  // namespace omp
}  // namespace clocklab
