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

// Vector kernels in two flavours. `serial` is the reference; `omp` splits the
// work over OpenMP threads. Reductions in both use the same fixed-size blocks
// summed in block order, so the two agree bit for bit on any thread count.

#pragma once

#include <span>

#include "clocklab/common.hpp"

namespace clocklab {

/// Block length for deterministic reductions.
inline constexpr std::size_t kReductionBlock = 4096;

namespace serial {

/// sum_i conj(a_i) b_i
Complex dot(std::span<const Complex> a, std::span<const Complex> b);
double norm2(std::span<const Complex> a);
/// y += alpha x
void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y);
/// y = M x
void matvec(const CMatrix& m, std::span<const Complex> x, std::span<Complex> y);
/// v += (phase - 1) (v - mean(v)), i.e. the interpolated reflection about the
/// uniform vector applied in place.
void reflect_uniform(std::span<Complex> v, Complex phase);

}  // namespace serial

namespace omp {

Complex dot(std::span<const Complex> a, std::span<const Complex> b);
double norm2(std::span<const Complex> a);
void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y);
void matvec(const CMatrix& m, std::span<const Complex> x, std::span<Complex> y);
void reflect_uniform(std::span<Complex> v, Complex phase);

}  // namespace omp

inline std::span<const Complex> as_span(const CVector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
inline std::span<Complex> as_span(CVector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

}  // namespace clocklab
