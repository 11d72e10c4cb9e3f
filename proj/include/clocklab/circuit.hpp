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

// Circuit representation, text format, Grover-family builders and a dense
// statevector engine.
//
// Qubit 0 is the most significant bit of a register index. When a circuit has
// a control ancilla b, it is qubit n (the least significant bit), so the
// system register has shape {2^n, 2}.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clocklab/common.hpp"
#include "clocklab/state.hpp"

namespace clocklab {

enum class GateKind { Id, Oracle, Reflect, COracle, CReflect, Custom };

std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_kind_from_name(std::string_view name);
inline bool is_oracle_kind(GateKind k) { return k == GateKind::Oracle || k == GateKind::COracle; }

struct OracleSpec {
  int n = 0;
  std::string bits;

  /// Basis index of |X> on the n system qubits.
  std::size_t index() const;
  bool operator==(const OracleSpec&) const = default;
};

/// Validates a 0/1 string and wraps it.
OracleSpec make_oracle(const std::string& bits);

struct Gate {
  GateKind kind = GateKind::Id;
  /// CUSTOM only. targets[0] is the most significant bit of the matrix index.
  std::vector<int> targets;
  /// CUSTOM only, row-major 2^k x 2^k.
  std::vector<Complex> matrix;

  bool operator==(const Gate&) const = default;
};

struct InitialState {
  enum class Kind { PlusAll, Basis };
  Kind kind = Kind::PlusAll;
  std::string bits;  // Basis only, length n

  bool operator==(const InitialState&) const = default;
};

struct Circuit {
  int n = 1;
  bool has_control_ancilla = false;
  std::optional<OracleSpec> oracle;
  std::vector<Gate> gates;
  /// Applies to the n system qubits; the control ancilla always starts in |+>.
  InitialState initial;

  int L() const { return static_cast<int>(gates.size()); }
  int num_qubits() const { return n + (has_control_ancilla ? 1 : 0); }
  std::size_t system_dim() const { return std::size_t{1} << num_qubits(); }
  std::size_t clock_dim() const { return gates.size() + 1; }
  /// {2^n} or {2^n, 2}
  std::vector<std::size_t> register_shape() const;

  bool operator==(const Circuit&) const = default;
};

/// Throws std::invalid_argument when a structural invariant is violated.
void validate(const Circuit& c);

/// Throws ParseError with the 1-based line of the offending directive.
Circuit parse_circuit(std::string_view text);
/// Canonical text, no trailing newline.
std::string serialize_circuit(const Circuit& c);

std::string index_to_bits(std::size_t index, int n);

/// Optimal Grover iteration count floor(pi / (4 asin(2^{-n/2}))), at least 1.
int grover_iterations(int n);

/// n qubits, L identity gates.
Circuit build_trivial(int n, int L);
Circuit build_grover(int n, int iterations, const std::string& X);
/// q identities, q (ORACLE, REFLECT) pairs, q identities; q = grover_iterations(n).
Circuit build_modified_grover(int n, const std::string& X);
Circuit build_modified_grover(int n, const std::string& X, int q);
Circuit build_controlled_grover(int n, const std::string& X, int l0, int L);

/// Gate U(g) specialised to a circuit's register, applied without forming
/// its matrix.
class CompiledGate {
 public:
  CompiledGate(const Gate& gate, const Circuit& c, double g);

  GateKind kind() const noexcept { return kind_; }
  bool is_identity() const noexcept { return identity_; }

  /// out = U in (or U^dagger in). Spans have length c.system_dim().
  void apply(std::span<const Complex> in, std::span<Complex> out, bool adjoint = false) const;
  void apply_inplace(std::span<Complex> v, bool adjoint = false) const;

 private:
  GateKind kind_;
  bool identity_ = false;
  int num_qubits_ = 0;
  bool control_ = false;
  std::size_t marked_ = 0;
  Complex phase_ = 1.0;
  std::vector<int> targets_;
  CMatrix local_;
};

/// Dense U(g) on the full system register (including the control ancilla).
CMatrix gate_unitary(const Gate& gate, const Circuit& c, double g);

StateVector initial_state(const Circuit& c);
/// phi^l(g) = U^l(g) ... U^1(g) phi^0
StateVector apply_circuit_prefix(const Circuit& c, int l, double g);
/// phi^0 .. phi^L
std::vector<CVector> prefix_states(const Circuit& c, double g);

}  // namespace clocklab
