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

// Fractional oracle exp(-i s O (x) P) from one controlled oracle call per
// attempt, Trotterized evolution under H^U = k O (x) P_c + H_sc, and an exact
// ledger of oracle calls.
//
// States live on system (x) K where K is the space P acts on (the clock, or
// clock (x) ancilla for the amplified split); the flat index is s * K + k.

#pragma once

#include <memory>
#include <vector>

#include "clocklab/circuit.hpp"
#include "clocklab/rng.hpp"

namespace clocklab {

/// P = V^dagger diag(lambda) V
struct CouplingDiagonalization {
  CMatrix V;
  RVector lambda;
};

/// Throws std::invalid_argument when P is not Hermitian or ||P|| > 1 + 1e-12.
CouplingDiagonalization diagonalize_coupling(const CMatrix& P);

struct GadgetResult {
  bool success = false;
  CVector post_state;
  /// Probability of the |0>_b outcome; 1 / N*^2 for every input state.
  double success_probability = 0.0;
};

/// Explicit accumulator of controlled-oracle applications.
struct QueryCounter {
  long count = 0;
};

/// Normalization N* = max_k (|cos(s lambda_k)| + |sin(s lambda_k)|).
double gadget_normalization(double s, const RVector& lambda);

/// One attempt of the ancilla circuit in the eigenbasis of P: clock-controlled
/// R1 on b, oracle controlled on b, clock-controlled R2, measure b. On outcome
/// 0 the state is exp(-i s O (x) D) psi. `oracle` is applied exactly once.
GadgetResult gadget_step(const CVector& psi, double s, const RVector& lambda, const CompiledGate& oracle,
                         std::size_t system_dim, Rng& rng, QueryCounter& counter);

/// exp(-i s O (x) P) realized as V^dagger gadget V.
class FractionalOracle {
 public:
  FractionalOracle(const Circuit& c, const CMatrix& P);

  std::size_t system_dim() const noexcept { return sys_; }
  std::size_t coupling_dim() const noexcept { return static_cast<std::size_t>(diag_.lambda.size()); }
  const CouplingDiagonalization& diagonalization() const noexcept { return diag_; }

  GadgetResult apply(const CVector& psi, double s, Rng& rng, QueryCounter& counter) const;
  /// Reference exp(-i s O (x) P) psi, computed without the ancilla and not
  /// counted as a query.
  CVector exact(const CVector& psi, double s) const;

 private:
  CVector to_eigenbasis(const CVector& psi, bool inverse) const;

  std::size_t sys_;
  CouplingDiagonalization diag_;
  std::shared_ptr<CompiledGate> oracle_;
};

struct TrotterResult {
  CVector state;
  double error = 0.0;  // ||state - exp(-i H t) psi0||
  long oracle_count = 0;
  int steps = 0;
  long failures = 0;
};

/// Product-formula simulation of exp(-i H^U t). The X-free part is applied
/// exactly; every oracle factor goes through the fractional-oracle gadget,
/// retried from the last checkpoint until it succeeds.
class TrotterEngine {
 public:
  explicit TrotterEngine(const Circuit& c);

  const Circuit& circuit() const noexcept { return circuit_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(h_values_.size()); }
  /// phi^0 (x) uniform clock over the leading identity block, or |0>_c.
  const CVector& default_initial() const noexcept { return initial_; }

  CVector exact(const CVector& psi0, double t) const;
  TrotterResult simulate(const CVector& psi0, double t, int steps, int order, Rng& rng) const;
  /// Error of the same product formula with exact oracle factors.
  double formula_error(const CVector& psi0, double t, int steps, int order) const;

 private:
  CVector sc_step(const CVector& psi, double tau) const;

  Circuit circuit_;
  double coupling_ = 0.5;
  FractionalOracle oracle_;
  CMatrix sc_vectors_;
  RVector sc_values_;
  CMatrix h_vectors_;
  RVector h_values_;
  CVector initial_;
};

TrotterResult trotter_simulate(const Circuit& c, double t, int steps, int order, std::uint64_t seed);

struct QueryLedger {
  struct Entry {
    double t = 0.0;
    long oracle_count = 0;
    int steps = 0;
    double error = 0.0;
  };
  std::vector<Entry> entries;
  double epsilon = 1e-3;
  int order = 2;
  double fitted_gamma = 0.0;
};

/// Smallest step count meeting `epsilon` for each t (doubling, then
/// bisection), then one gadget run per t at that count.
QueryLedger sweep_ledger(const TrotterEngine& engine, const std::vector<double>& times, double epsilon, int order,
                         std::uint64_t seed);

/// Log-log slope of oracle_count against t.
double fit_query_exponent(const QueryLedger& ledger);

}  // namespace clocklab
