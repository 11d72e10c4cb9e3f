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

// Measurement-based search: prepare an X-free reference state, measure the
// history state, then read X off the clock-then-system measurement.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "clocklab/clock_hamiltonian.hpp"
#include "clocklab/rng.hpp"
#include "clocklab/state.hpp"

namespace clocklab {

enum class SearchFamily { ModifiedGrover, ControlledGrover };
enum class MeasurementMode { ExactProjective, PhaseRandomization, GadgetRandomization };

std::string_view family_name(SearchFamily f);
SearchFamily family_from_name(std::string_view name);
std::string_view mode_name(MeasurementMode m);
MeasurementMode mode_from_name(std::string_view name);

/// Modified Grover with the optimal q, or controlled Grover with L = 4q and
/// the oracle block starting at 2q.
Circuit family_circuit(SearchFamily f, int n, const std::string& X);

/// phi^0 (x) uniform clock over 0..p, p = number of leading identity gates.
/// Throws std::invalid_argument when the circuit starts with a non-identity.
StateVector reference_state(const Circuit& c);

struct OverlapReport {
  double p_nu_zeta = 0.0;
  double p_X_zeta = 0.0;
  double p_s_lower = 0.0;  // product of the two
};

/// X is read on the first register factor (the n system qubits).
OverlapReport overlap_probabilities(const HistoryState& zeta, const StateVector& nu, const std::string& X);

struct ProjectionOutcome {
  bool projected = false;
  StateVector post_state;
};

/// Projective measurement {|z><z|, 1 - |z><z|}.
ProjectionOutcome project_onto(const StateVector& s, const CVector& z, Rng& rng);
/// Measures the ground state of h; throws NumericalError when it is degenerate.
ProjectionOutcome measure_ground_state_exact(const StateVector& s, const ClockHamiltonian& h, Rng& rng);

/// |E[exp(i omega t)]|^reps for t uniform on [0, 2 pi / delta_est].
double coherence_factor(double omega, double delta_est, int reps);

struct RandomizationOutcome {
  StateVector post_state;   // one draw of the ensemble
  RVector populations;      // |<v_i|s>|^2, invariant under the evolution
  double max_coherence = 0.0;  // largest ensemble-averaged |rho_ij| across distinct eigenvalues
  double total_time = 0.0;  // sum of the drawn t_k
};

/// Evolves s under h for reps independent random times.
RandomizationOutcome measure_via_phase_randomization(const StateVector& s, const ClockHamiltonian& h,
                                                     double delta_est, int reps, Rng& rng);

/// Samples the clock (last factor), collapses it, then samples the first
/// factor. Returns the first-factor index.
std::size_t measure_clock_then_system(const StateVector& s, Rng& rng);

struct SearchConfig {
  int n = 2;
  SearchFamily family = SearchFamily::ModifiedGrover;
  MeasurementMode mode = MeasurementMode::ExactProjective;
  long trials = 1000;
  std::uint64_t seed = 1;
  double c_constant = kPi;
  int reps = 3;
  /// Largest Trotter step in gadget mode.
  double max_tau = 0.25;
};

void validate(const SearchConfig& cfg);

struct SearchOutcome {
  long success_count = 0;
  long trials = 0;
  double empirical_p_s = 0.0;
  /// sum over trials of c / delta
  double measured_T = 0.0;
  /// sum of the drawn randomization times
  double randomization_time = 0.0;
  long oracle_count = 0;  // gadget mode only
  double gap = 0.0;
  double p_nu_zeta = 0.0;
  /// average over X of p_nu * p_X, and its minimum
  double p_s_analytic = 0.0;
  double p_s_lower = 0.0;
};

SearchOutcome run_generalized_search(const SearchConfig& cfg);

struct AssumptionRow {
  int n = 0;
  double min_p_nu_zeta = 0.0;
  double min_p_X_zeta = 0.0;
};

struct AssumptionProfile {
  std::vector<AssumptionRow> rows;
  /// both minima above 0.15 for every n
  bool theta_one = false;
};

AssumptionProfile assumption_profile(SearchFamily f, const std::vector<int>& n_values);

}  // namespace clocklab
