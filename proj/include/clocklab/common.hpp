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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace clocklab {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

/// Base class for all library failures that are not plain precondition
/// violations (those throw std::invalid_argument / std::out_of_range).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed circuit text. `line()` is 1-based, or 0 for whole-file problems.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// A requested instance exceeds the configured dimension cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Eigensolver non-convergence, non-Hermitian input, failed residual checks.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Largest Hilbert-space dimension any state or operator may have.
/// Defaults to 2^22; the CLOCKLAB_MAX_DIM environment variable overrides it.
std::size_t max_dimension();

/// Largest dimension for which operators are assembled as dense matrices and
/// diagonalized with the dense solver. Above this, matrix-free paths are used.
inline constexpr std::size_t kDenseLimit = std::size_t{1} << 12;

/// Throws CapacityError if `dim` exceeds max_dimension().
void check_dimension(std::size_t dim, const std::string& what);

/// Eigenvalues within this distance count as equal (and as zero near 0).
inline double zero_tolerance(double norm) { return 1e-9 * (norm > 1.0 ? norm : 1.0); }

}  // namespace clocklab
