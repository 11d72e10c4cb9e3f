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

// Clock Hamiltonians on system (x) clock (x) optional ancilla, stored as a
// term list and applied matrix-free. The flat index of (s, c, a) is
// (s * C + c) * A + a with C = L + 1 clock levels and A ancilla levels.

#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "clocklab/circuit.hpp"
#include "clocklab/operator.hpp"
#include "clocklab/state.hpp"

namespace clocklab {

/// Open: terms l = 1..L. Periodic: adds a wrap term coupling |L> back to |0>
/// through (U^L ... U^1)^dagger, which makes the clock a ring.
enum class ClockTopology { Open, Periodic };

enum class TermTag {
  Feynman,    // h^l, l = 1..L (L + 1 is the periodic wrap)
  Input,      // penalty on qubit j at clock 0
  Pointer,    // 1 (x) |l><l|
  ClockPair,  // (1 (x) |l><l| + 1 (x) |l-1><l-1|) / 2
  OracleHop,  // -(U^l (x) |l><l-1| + h.c.)
  Identity,
};

/// weight * T + offset * 1, where T is the operator named by tag/index. With
/// ancilla > 0 the operator is T (x) (|ancilla><0| + |0><ancilla|).
struct Term {
  TermTag tag = TermTag::Identity;
  int index = 0;
  double weight = 1.0;
  double offset = 0.0;
  int ancilla = 0;
};

using TermList = std::vector<Term>;

std::string term_label(const Term& t);

class ClockHamiltonian final : public HermitianOperator {
 public:
  ClockHamiltonian(Circuit c, double g, TermList terms, std::size_t ancilla_dim = 1,
                   ClockTopology topology = ClockTopology::Open);

  const Circuit& circuit() const noexcept { return circuit_; }
  double g() const noexcept { return g_; }
  const TermList& terms() const noexcept { return terms_; }
  ClockTopology topology() const noexcept { return topology_; }
  std::size_t system_dim() const noexcept { return sys_; }
  std::size_t clock_dim() const noexcept { return clock_; }
  std::size_t ancilla_dim() const noexcept { return anc_; }
  /// register shape, then clock, then ancilla when present
  std::vector<std::size_t> factor_shape() const;

  std::size_t dim() const override { return sys_ * clock_ * anc_; }
  /// OpenMP path: terms with disjoint clock support run concurrently.
  void apply(std::span<const Complex> in, std::span<Complex> out) const override;
  /// Serial reference path.
  void apply_serial(std::span<const Complex> in, std::span<Complex> out) const;
  /// out += term * in
  void apply_term(const Term& t, std::span<const Complex> in, std::span<Complex> out) const;
  double norm_bound() const override;
  /// Assembled once on first use and shared by copies.
  CMatrix to_dense() const override;
  const CMatrix& dense() const;

  /// Clock levels a term acts on.
  std::vector<int> term_support(const Term& t) const;
  /// The term restricted to system (x) its clock support (no ancilla), with
  /// local index s * K + position of the clock level in term_support.
  CMatrix term_block(const Term& t) const;

  /// Unitary the hop of Feynman/OracleHop term l applies from clock l-1 to l.
  CMatrix hop_unitary(int l) const;

 private:
  struct Shared;
  struct Scratch;
  void add_term(const Term& t, std::span<const Complex> in, std::span<Complex> out, Scratch& scratch) const;
  void check_term(const Term& t) const;

  Circuit circuit_;
  double g_;
  TermList terms_;
  std::size_t anc_;
  ClockTopology topology_;
  std::size_t sys_;
  std::size_t clock_;
  std::vector<CompiledGate> gates_;
  std::vector<std::vector<std::vector<std::size_t>>> colors_;  // color -> task -> term indices
  std::shared_ptr<Shared> shared_;
};

TermList feynman_terms(const Circuit& c, ClockTopology topology = ClockTopology::Open);
TermList input_terms(const Circuit& c);

/// Sum of h^l(g) alone.
ClockHamiltonian build_feynman(const Circuit& c, double g, ClockTopology topology = ClockTopology::Open);
/// Input penalty alone: sum_j |-><-|_j (x) |0><0|_c, or the bit-flip
/// projectors for a basis initial state.
ClockHamiltonian build_input_penalty(const Circuit& c);
/// H^U(g) = sum_l h^l(g) + H_input
ClockHamiltonian build_standard(const Circuit& c, double g, ClockTopology topology = ClockTopology::Open);
/// sum_l beta^l h^l(g) + H_input + sum_l E^l 1 (x) |l><l|, shifted so its
/// lowest eigenvalue is zero.
ClockHamiltonian build_modified(const Circuit& c, const std::vector<double>& beta, const std::vector<double>& energies,
                                double g);

struct HistoryState {
  StateVector state;
  std::vector<Complex> alpha;
};

/// (L+1)^{-1/2} sum_l phi^l(g) (x) |l>
HistoryState build_history_state(const Circuit& c, double g);
/// Writes psi as sum_l alpha^l phi^l(g) (x) |l>; throws NumericalError if psi
/// is not of that form to 1e-8.
HistoryState decompose_history(const Circuit& c, double g, const CVector& psi);

/// sys (x) clock
CVector tensor(const CVector& a, const CVector& b);

/// W = sum_l U^l ... U^1 (x) |l><l|, dense.
CMatrix conjugation_unitary(const Circuit& c, double g);
/// v <- W v (or W^dagger v) without forming W; v lives on system (x) clock.
void apply_conjugation(const Circuit& c, double g, CVector& v, bool adjoint = false);

/// H^U = coupling * O (x) P_c + H_sc for circuits whose oracle gates are
/// pairwise non-adjacent. H_sc holds every term that does not see X.
struct OracleSplit {
  CMatrix P_c;
  ClockHamiltonian oracle_part;  // O (x) P_c
  ClockHamiltonian H_sc;
  double coupling = 0.5;
  std::vector<int> oracle_levels;
};

/// Throws Error("non-Grover oracle layout") for adjacent or mixed oracle gates.
std::vector<int> oracle_levels(const Circuit& c);
OracleSplit oracle_split(const Circuit& c);

/// One "row col re im" line per entry with magnitude above `tol`.
void write_triplets(const HermitianOperator& h, std::ostream& out, double tol = 0.0);

}  // namespace clocklab
