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
#include <utility>
#include <vector>

#include "clocklab/circuit.hpp"
#include "clocklab/clock_hamiltonian.hpp"
#include "clocklab/operator.hpp"

namespace clocklab {

enum class Solver { Auto, Dense, Iterative };

struct EigenOptions {
  /// Auto: dense up to kDenseLimit, iterative above.
  Solver solver = Solver::Auto;
  /// Eigenpairs the iterative path computes.
  int count = 16;
  int block_size = 0;
  bool want_vectors = false;
  std::uint64_t seed = 0x5eed;
};

struct SpectralResult {
  RVector eigenvalues;   // ascending
  CMatrix eigenvectors;  // empty unless requested
  double residual = 0.0;
  double norm = 0.0;
  /// true when the full spectrum was computed
  bool complete = true;
};

/// Throws NumericalError for non-Hermitian input or when the residual bound
/// 1e-8 max(1, ||H||) is missed.
SpectralResult eigendecompose(const HermitianOperator& h, const EigenOptions& options = {});
double lowest_eigenvalue(const HermitianOperator& h);

/// 1 - cos(pi m / (L+1)) for the open chain or 1 - cos(2 pi m / (L+1)) for
/// the ring, m = 0..L, each 2^n times.
SpectralResult analytic_feynman_spectrum(int L, int n, ClockTopology topology = ClockTopology::Periodic);

struct GapReport {
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  double gap = 0.0;
  /// Equals gap here; gap_to_state() computes it for a designated state.
  double gap_to_state = 0.0;
  int ground_multiplicity = 1;
  /// Set when every eigenvalue sits in the ground cluster (gap is then 0).
  bool degenerate = false;
};

GapReport spectral_gap(const SpectralResult& sr);

/// Smallest |lambda_i - lambda_s| over eigenvectors whose squared overlap with
/// the lambda_s eigenspace is below 1/2. `s` must be an eigenvector.
double gap_to_state(const HermitianOperator& h, const CVector& s, const EigenOptions& options = {});

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> points;
};

/// Least squares of ln(gap) against ln(L).
ScalingFit fit_gap_scaling(const std::vector<std::pair<double, double>>& points);

struct PathGap {
  std::vector<std::pair<double, double>> points;  // (g, gap)
  double g_min = 0.0;
  double gap_min = 0.0;
};

PathGap gap_along_path(const Circuit& c, const std::vector<double>& g_grid, const EigenOptions& options = {});

}  // namespace clocklab
