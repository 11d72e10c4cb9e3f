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

#include "clocklab/state.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <numeric>

namespace clocklab {
namespace {

std::size_t shape_product(const std::vector<std::size_t>& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

// (outer, dim, inner) strides for one factor
struct Split {
  std::size_t outer, dim, inner;
};

Split split_at(const std::vector<std::size_t>& shape, std::size_t subsystem) {
  if (subsystem >= shape.size()) {
    throw std::out_of_range("subsystem index " + std::to_string(subsystem) + " out of range");
  }
  Split s{1, shape[subsystem], 1};
  for (std::size_t i = 0; i < subsystem; ++i) s.outer *= shape[i];
  for (std::size_t i = subsystem + 1; i < shape.size(); ++i) s.inner *= shape[i];
  return s;
}

}  // namespace

StateVector::StateVector(CVector amplitudes, std::vector<std::size_t> factor_shape)
    : amplitudes_(std::move(amplitudes)), shape_(std::move(factor_shape)) {
  if (shape_.empty()) {
    shape_.push_back(static_cast<std::size_t>(amplitudes_.size()));
  }
  if (shape_product(shape_) != static_cast<std::size_t>(amplitudes_.size())) {
    throw std::invalid_argument("factor shape does not match amplitude count");
  }
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw std::invalid_argument("state vector norm " + std::to_string(norm) + " is not 1");
  }
}

StateVector StateVector::normalized(CVector v, std::vector<std::size_t> factor_shape) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw NumericalError("cannot normalize a zero or non-finite vector");
  }
  v /= norm;
  return StateVector(std::move(v), std::move(factor_shape));
}

RVector marginal_probabilities(const StateVector& s, std::size_t subsystem) {
  const Split sp = split_at(s.factor_shape(), subsystem);
  RVector p = RVector::Zero(static_cast<Eigen::Index>(sp.dim));
  const CVector& a = s.amplitudes();
  for (std::size_t o = 0; o < sp.outer; ++o) {
    for (std::size_t k = 0; k < sp.dim; ++k) {
      const std::size_t base = (o * sp.dim + k) * sp.inner;
      double acc = 0.0;
      for (std::size_t i = 0; i < sp.inner; ++i) {
        acc += std::norm(a[static_cast<Eigen::Index>(base + i)]);
      }
      p[static_cast<Eigen::Index>(k)] += acc;
    }
  }
  return p;
}

StateVector collapse(const StateVector& s, std::size_t subsystem, std::size_t index) {
  const Split sp = split_at(s.factor_shape(), subsystem);
  if (index >= sp.dim) {
    throw std::out_of_range("outcome index out of range");
  }
  CVector v = CVector::Zero(s.amplitudes().size());
  for (std::size_t o = 0; o < sp.outer; ++o) {
    const std::size_t base = (o * sp.dim + index) * sp.inner;
    for (std::size_t i = 0; i < sp.inner; ++i) {
      v[static_cast<Eigen::Index>(base + i)] = s.amplitudes()[static_cast<Eigen::Index>(base + i)];
    }
  }
  return StateVector::normalized(std::move(v), s.factor_shape());
}

std::size_t sample_index(const RVector& weights, Rng& rng) {
  const double total = weights.sum();
  if (!(total > 0.0)) {
    throw NumericalError("cannot sample from an all-zero distribution");
  }
  const double u = rng.uniform() * total;
  double acc = 0.0;
  Eigen::Index last_positive = 0;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last_positive = i;
    acc += weights[i];
    if (u < acc) return static_cast<std::size_t>(i);
  }
  return static_cast<std::size_t>(last_positive);
}

std::string basis_label(std::size_t index, std::size_t dim) {
  if (dim >= 2 && std::has_single_bit(dim)) {
    const int width = std::countr_zero(dim);
    std::string bits(static_cast<std::size_t>(width), '0');
    for (int b = 0; b < width; ++b) {
      if ((index >> (width - 1 - b)) & 1U) bits[static_cast<std::size_t>(b)] = '1';
    }
    return bits;
  }
  return std::to_string(index);
}

BasisOutcome sample_basis(const StateVector& s, std::size_t subsystem, Rng& rng) {
  const RVector p = marginal_probabilities(s, subsystem);
  const std::size_t k = sample_index(p, rng);
  return {k, basis_label(k, static_cast<std::size_t>(p.size()))};
}

BasisOutcome sample_basis(const StateVector& s, std::size_t subsystem, std::uint64_t seed) {
  Rng rng(seed);
  return sample_basis(s, subsystem, rng);
}

}  // namespace clocklab
