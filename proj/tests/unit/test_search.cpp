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

#include "clocklab/search.hpp"
#include "clocklab/spectral.hpp"

namespace clocklab {
namespace {

TEST(Names, RoundTrip) {
  for (const auto f : {SearchFamily::ModifiedGrover, SearchFamily::ControlledGrover}) {
    EXPECT_EQ(family_from_name(family_name(f)), f);
  }
  for (const auto m :
       {MeasurementMode::ExactProjective, MeasurementMode::PhaseRandomization, MeasurementMode::GadgetRandomization}) {
    EXPECT_EQ(mode_from_name(mode_name(m)), m);
  }
  EXPECT_EQ(mode_from_name("exact"), MeasurementMode::ExactProjective);
  EXPECT_THROW(family_from_name("grover"), std::invalid_argument);
  EXPECT_THROW(mode_from_name("adiabatic"), std::invalid_argument);
}

TEST(Overlaps, ModifiedGroverN2) {
  for (std::size_t x = 0; x < 4; ++x) {
    const std::string X = index_to_bits(x, 2);
    const Circuit c = family_circuit(SearchFamily::ModifiedGrover, 2, X);
    const OverlapReport r = overlap_probabilities(build_history_state(c, 1.0), reference_state(c), X);
    EXPECT_NEAR(r.p_nu_zeta, 0.4, 1e-12);
    EXPECT_NEAR(r.p_X_zeta, 0.55, 1e-12);
    EXPECT_NEAR(r.p_s_lower, 0.22, 1e-12);
  }
}

struct GoldenRow {
  int n;
  double p_nu;
  double p_x;
};

void PrintTo(const GoldenRow& r, std::ostream* os) { *os << "n=" << r.n; }

class AssumptionGolden : public ::testing::TestWithParam<GoldenRow> {};

TEST_P(AssumptionGolden, Minima) {
  const GoldenRow g = GetParam();
  const AssumptionProfile p = assumption_profile(SearchFamily::ModifiedGrover, {g.n});
  ASSERT_EQ(p.rows.size(), 1u);
  EXPECT_NEAR(p.rows[0].min_p_nu_zeta, g.p_nu, 1e-12);
  EXPECT_NEAR(p.rows[0].min_p_X_zeta, g.p_x, 1e-12);
  EXPECT_TRUE(p.theta_one);
}

INSTANTIATE_TEST_SUITE_P(ModifiedGrover, AssumptionGolden,
                         ::testing::Values(GoldenRow{2, 0.4, 0.55}, GoldenRow{3, 1.0 / 3.0, 0.5442708333333329},
                                           GoldenRow{4, 0.3076923076923077, 0.5323063777043269}),
                         [](const ::testing::TestParamInfo<GoldenRow>& info) { return "n" + std::to_string(info.param.n); });

TEST(ReferenceState, NeedsLeadingIdentity) {
  EXPECT_THROW(reference_state(build_grover(2, 1, "11")), std::invalid_argument);
  const StateVector nu = reference_state(build_modified_grover(2, "11"));
  const RVector clock = marginal_probabilities(nu, nu.factor_shape().size() - 1);
  EXPECT_NEAR(clock[0], 0.5, 1e-15);
  EXPECT_NEAR(clock[1], 0.5, 1e-15);
  EXPECT_NEAR(clock[2], 0.0, 1e-15);
}

TEST(Projection, Outcomes) {
  const StateVector s(CVector::Constant(4, 0.5), {4});
  CVector z = CVector::Zero(4);
  z[0] = 1.0;
  Rng rng(1);
  int hits = 0;
  for (int i = 0; i < 4000; ++i) {
    const ProjectionOutcome o = project_onto(s, z, rng);
    if (o.projected) {
      ++hits;
      EXPECT_NEAR(std::abs(o.post_state.amplitudes()[0]), 1.0, 1e-15);
    } else {
      EXPECT_NEAR(std::abs(o.post_state.amplitudes()[0]), 0.0, 1e-15);
    }
  }
  EXPECT_NEAR(hits / 4000.0, 0.25, 3.0 * std::sqrt(0.25 * 0.75 / 4000.0));
}

TEST(Projection, DegenerateGroundThrows) {
  const ClockHamiltonian h = build_feynman(build_trivial(1, 2), 1.0);
  const StateVector s = build_history_state(build_trivial(1, 2), 1.0).state;
  Rng rng(1);
  EXPECT_THROW(measure_ground_state_exact(s, h, rng), NumericalError);
}

TEST(PhaseRandomization, CoherenceFactor) {
  EXPECT_NEAR(coherence_factor(0.0, 1.0, 3), 1.0, 1e-15);
  EXPECT_NEAR(coherence_factor(1.0, 1.0, 1), 0.0, 1e-15);
  EXPECT_LE(coherence_factor(1.7, 1.0, 1), 1.0 / kPi);
  EXPECT_NEAR(coherence_factor(1.7, 1.0, 3), std::pow(coherence_factor(1.7, 1.0, 1), 3), 1e-15);
  EXPECT_THROW(coherence_factor(1.0, 0.0, 1), std::invalid_argument);
}

// Populations in the energy basis are conserved and every off-diagonal
// coherence between levels at least delta apart is suppressed.
TEST(PhaseRandomization, Invariants) {
  const Circuit c = build_modified_grover(2, "01");
  const ClockHamiltonian h = build_standard(c, 1.0);
  const double delta = spectral_gap(eigendecompose(h)).gap;
  const StateVector nu = reference_state(c);
  Rng rng(4);
  for (const int reps : {1, 3}) {
    const RandomizationOutcome r = measure_via_phase_randomization(nu, h, delta, reps, rng);
    EXPECT_NEAR(r.populations.sum(), 1.0, 1e-12);
    EXPECT_LE(r.max_coherence, 0.5 * std::pow(kPi, -reps) + 1e-12);
    EXPECT_GE(r.total_time, 0.0);
    EXPECT_LE(r.total_time, reps * 2.0 * kPi / delta);
    EXPECT_NEAR(r.post_state.amplitudes().norm(), 1.0, 1e-12);
    const RandomizationOutcome again = measure_via_phase_randomization(r.post_state, h, delta, 0, rng);
    EXPECT_NEAR((again.populations - r.populations).norm(), 0.0, 1e-12);
  }
  const RandomizationOutcome none = measure_via_phase_randomization(nu, h, delta, 0, rng);
  EXPECT_EQ((none.post_state.amplitudes() - nu.amplitudes()).norm(), 0.0);
}

TEST(ClockThenSystem, HistoryStateStatistics) {
  const Circuit c = build_modified_grover(2, "10");
  const StateVector z = build_history_state(c, 1.0).state;
  Rng rng(8);
  const int N = 20000;
  int hit = 0;
  for (int i = 0; i < N; ++i) hit += measure_clock_then_system(z, rng) == 2 ? 1 : 0;
  EXPECT_NEAR(hit / static_cast<double>(N), 0.55, 4.0 * std::sqrt(0.55 * 0.45 / N));
}

TEST(Search, Validation) {
  SearchConfig cfg;
  cfg.trials = 0;
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  cfg = {};
  cfg.c_constant = 3.0;
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  cfg = {};
  cfg.n = 1;
  EXPECT_THROW(validate(cfg), std::invalid_argument);
}

TEST(Search, ExactModeMatchesAnalytic) {
  for (const auto f : {SearchFamily::ModifiedGrover, SearchFamily::ControlledGrover}) {
    SearchConfig cfg;
    cfg.family = f;
    cfg.trials = 1500;
    const SearchOutcome o = run_generalized_search(cfg);
    EXPECT_EQ(o.trials, 1500);
    const double p = o.p_s_analytic;
    EXPECT_NEAR(o.empirical_p_s, p, 4.0 * std::sqrt(p * (1 - p) / cfg.trials)) << family_name(f);
    EXPECT_LE(o.p_s_lower, o.p_s_analytic + 1e-15);
    EXPECT_EQ(o.measured_T, 0.0);
  }
}

TEST(Search, RandomizationBeatsLowerBoundAndCountsTime) {
  SearchConfig cfg;
  cfg.mode = MeasurementMode::PhaseRandomization;
  cfg.trials = 800;
  const SearchOutcome o = run_generalized_search(cfg);
  EXPECT_GE(o.empirical_p_s, o.p_s_lower - 4.0 * std::sqrt(0.25 / cfg.trials));
  EXPECT_NEAR(o.measured_T, cfg.trials * kPi / o.gap, 1e-9 * o.measured_T);
  EXPECT_GT(o.randomization_time, 0.0);
  EXPECT_EQ(o.oracle_count, 0);
}

TEST(Search, GadgetModeCountsQueries) {
  SearchConfig cfg;
  cfg.mode = MeasurementMode::GadgetRandomization;
  cfg.trials = 40;
  const SearchOutcome o = run_generalized_search(cfg);
  EXPECT_GT(o.oracle_count, 0);
  EXPECT_GE(o.empirical_p_s, 0.0);
}

TEST(Search, FixedSeedIsDeterministic) {
  SearchConfig cfg;
  cfg.mode = MeasurementMode::PhaseRandomization;
  cfg.trials = 200;
  cfg.seed = 99;
  const SearchOutcome a = run_generalized_search(cfg);
  const SearchOutcome b = run_generalized_search(cfg);
  EXPECT_EQ(a.success_count, b.success_count);
  EXPECT_NEAR(a.randomization_time, b.randomization_time, 1e-9 * a.randomization_time);
}

}  // namespace
}  // namespace clocklab
