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

#include <cmath>

#include <gtest/gtest.h>

#include "clocklab/clock_hamiltonian.hpp"
#include "clocklab/lanczos.hpp"
#include "clocklab/spectral.hpp"

namespace clocklab {
namespace {

TEST(Lanczos, MatchesDenseOnClockHamiltonian) {
  const ClockHamiltonian h = build_standard(build_grover(3, 2, "010"), 0.7);
  const SpectralResult dense = eigendecompose(h, {.solver = Solver::Dense});
  const SpectralResult it = eigendecompose(h, {.solver = Solver::Iterative, .count = 10});
  ASSERT_GE(it.eigenvalues.size(), 10);
  for (Eigen::Index i = 0; i < 10; ++i) EXPECT_NEAR(it.eigenvalues[i], dense.eigenvalues[i], 1e-9) << i;
  EXPECT_FALSE(it.complete);
  EXPECT_TRUE(dense.complete);
}

TEST(Lanczos, DegenerateClusterNeedsBlock) {
  // open Feynman chain: every level has multiplicity 2^n = 4
  const ClockHamiltonian h = build_feynman(build_trivial(2, 12), 1.0);
  LanczosOptions opt;
  opt.count = 8;
  opt.block_size = 4;
  const LanczosResult r = lowest_eigenpairs([&](const CMatrix& b) { return h.apply_block(b); }, h.dim(),
                                            h.norm_bound(), opt);
  const RVector ref = analytic_feynman_spectrum(12, 2, ClockTopology::Open).eigenvalues;
  for (Eigen::Index i = 0; i < 8; ++i) EXPECT_NEAR(r.values[i], ref[i], 1e-9);
  const CMatrix overlap = r.vectors.adjoint() * r.vectors;
  EXPECT_NEAR((overlap - CMatrix::Identity(overlap.rows(), overlap.cols())).norm(), 0.0, 1e-10);
}

TEST(Spectral, GoldenGaps) {
  EXPECT_NEAR(spectral_gap(eigendecompose(build_standard(build_trivial(1, 2), 1.0))).gap, 0.13397459621556146, 1e-12);
  EXPECT_NEAR(spectral_gap(eigendecompose(build_standard(build_grover(2, 1, "11"), 1.0))).gap, 0.13397459621556115,
              1e-12);
}

TEST(Spectral, GapReportDegenerate) {
  SpectralResult sr;
  sr.eigenvalues = RVector::Zero(3);
  const GapReport g = spectral_gap(sr);
  EXPECT_TRUE(g.degenerate);
  EXPECT_EQ(g.gap, 0.0);
  sr.eigenvalues = RVector(1);
  EXPECT_THROW(spectral_gap(sr), std::invalid_argument);
}

TEST(Spectral, PathMinimumOnGroverN2) {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(0.1 * i);
  const PathGap p = gap_along_path(build_grover(2, 1, "11"), grid);
  ASSERT_EQ(p.points.size(), 11u);
  EXPECT_NEAR(p.g_min, 0.9, 1e-12);
  EXPECT_NEAR(p.gap_min, 0.13397459621556065, 1e-12);
}

TEST(Fit, RecoversPowerLaw) {
  std::vector<std::pair<double, double>> pts;
  for (const double L : {4.0, 8.0, 16.0, 32.0}) pts.emplace_back(L, 3.0 * std::pow(L, -1.5));
  const ScalingFit f = fit_gap_scaling(pts);
  EXPECT_NEAR(f.slope, -1.5, 1e-12);
  EXPECT_NEAR(std::exp(f.intercept), 3.0, 1e-10);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
}

// Exact Feynman gaps on L = 8..64 are still bending toward the asymptotic -2.
TEST(Fit, AnalyticFeynmanGaps) {
  std::vector<std::pair<double, double>> ring, open;
  for (const int L : {8, 16, 32, 64}) {
    ring.emplace_back(L, 1.0 - std::cos(2.0 * kPi / (L + 1)));
    open.emplace_back(L, spectral_gap(analytic_feynman_spectrum(L, 0, ClockTopology::Open)).gap);
  }
  EXPECT_NEAR(fit_gap_scaling(ring).slope, -1.8843300119916155, 1e-9);
  EXPECT_NEAR(fit_gap_scaling(open).slope, -1.898235299529095, 1e-9);
}

TEST(Fit, TrivialFamilySlope) {
  std::vector<std::pair<double, double>> pts;
  for (const int L : {4, 8, 16, 32, 64}) {
    pts.emplace_back(L, spectral_gap(eigendecompose(build_standard(build_trivial(1, L), 1.0))).gap);
  }
  const double slope = fit_gap_scaling(pts).slope;
  EXPECT_GE(slope, -2.15);
  EXPECT_LE(slope, -1.85);
}

TEST(GapToState, DenseAndIterativeAgree) {
  const Circuit c = build_modified_grover(2, "10");
  const ClockHamiltonian h = build_standard(c, 1.0);
  const CVector zeta = build_history_state(c, 1.0).state.amplitudes();
  const double dense = gap_to_state(h, zeta, {.solver = Solver::Dense});
  const double it = gap_to_state(h, zeta, {.solver = Solver::Iterative});
  EXPECT_NEAR(dense, spectral_gap(eigendecompose(h)).gap, 1e-10);
  EXPECT_NEAR(it, dense, 1e-7);
}

TEST(AnalyticFeynman, Validation) {
  EXPECT_THROW(analytic_feynman_spectrum(0, 1), std::invalid_argument);
  const SpectralResult p = analytic_feynman_spectrum(3, 0, ClockTopology::Periodic);
  ASSERT_EQ(p.eigenvalues.size(), 4);
  EXPECT_NEAR(p.eigenvalues[3], 2.0, 1e-15);
}

}  // namespace
}  // namespace clocklab
