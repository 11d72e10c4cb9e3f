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

// Frustration-free certificates and the square-root gap amplification that
// couples each projector term to its own ancilla level.

#pragma once

#include <string>
#include <vector>

#include "clocklab/clock_hamiltonian.hpp"
#include "clocklab/spectral.hpp"

namespace clocklab {

struct TermCheck {
  Term term;
  std::string label;
  double min_eigenvalue = 0.0;
  /// ||term psi||
  double residual_norm = 0.0;
};

struct FrustrationFreeCertificate {
  bool is_ff = false;
  std::vector<TermCheck> per_term;
};

/// Every term must be PSD (min eigenvalue >= -1e-10) and annihilate psi to 1e-9.
FrustrationFreeCertificate check_frustration_free(const ClockHamiltonian& h, const CVector& psi);

struct AmplifiedHamiltonian {
  /// sum_k T_k (x) (|k><0| + |0><k|) on an ancilla with terms + 1 levels
  ClockHamiltonian matrix;
  TermList source;
};

/// Throws Error("amplification requires projector terms") unless every term
/// has spectrum in {0, 1}.
AmplifiedHamiltonian amplify(const ClockHamiltonian& h);

/// psi (x) |0>_a
CVector pivot_embed(const CVector& psi, std::size_t ancilla_dim);

/// Amplified H^U = coupling * O (x) P_tilde + H_sc_tilde.
struct AmplifiedSplit {
  CMatrix P_tilde;  // on clock (x) ancilla, index c * A + a
  ClockHamiltonian oracle_part;
  ClockHamiltonian H_sc;
  double coupling = 0.5;
  std::vector<int> oracle_levels;
};

AmplifiedSplit amplified_oracle_split(const Circuit& c);

struct AmplifiedGapReport {
  double delta = 0.0;
  double delta_tilde = 0.0;
  /// delta_tilde / sqrt(delta)
  double ratio = 0.0;
  bool frustration_free = false;
};

AmplifiedGapReport verify_amplified_gap(const Circuit& c, const EigenOptions& options = {});

}  // namespace clocklab
