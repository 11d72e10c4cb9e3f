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

#include "clocklab/circuit.hpp"
#include "clocklab/kernels.hpp"

namespace clocklab {
namespace {

double overlap2(const CVector& a, const CVector& b) { return std::norm(a.dot(b)); }

CVector basis(std::size_t dim, std::size_t i) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
  v[static_cast<Eigen::Index>(i)] = 1.0;
  return v;
}

TEST(GroverIterations, OptimalCounts) {
  EXPECT_EQ(grover_iterations(1), 1);
  EXPECT_EQ(grover_iterations(2), 1);
  EXPECT_EQ(grover_iterations(3), 2);
  EXPECT_EQ(grover_iterations(4), 3);
  EXPECT_EQ(grover_iterations(5), 4);
  EXPECT_EQ(grover_iterations(6), 6);
}

TEST(Builders, GroverLayout) {
  const Circuit c = build_grover(2, 1, "11");
  ASSERT_EQ(c.L(), 2);
  EXPECT_EQ(c.gates[0].kind, GateKind::Oracle);
  EXPECT_EQ(c.gates[1].kind, GateKind::Reflect);
  EXPECT_THROW(build_grover(2, 0, "11"), std::invalid_argument);
  EXPECT_THROW(build_grover(2, 1, "1"), std::invalid_argument);
}

TEST(Builders, ModifiedGroverQuarters) {
  for (int n = 2; n <= 5; ++n) {
    const Circuit c = build_modified_grover(n, std::string(static_cast<std::size_t>(n), '0'));
    const int q = grover_iterations(n);
    ASSERT_EQ(c.L(), 4 * q);
    for (int l = 0; l < q; ++l) {
      EXPECT_EQ(c.gates[static_cast<std::size_t>(l)].kind, GateKind::Id);
      EXPECT_EQ(c.gates[static_cast<std::size_t>(3 * q + l)].kind, GateKind::Id);
    }
  }
  EXPECT_THROW(build_modified_grover(1, "1"), std::invalid_argument);
}

TEST(Builders, ModifiedGroverN2HitsTargetAtLevelThree) {
  const Circuit c = build_modified_grover(2, "11");
  const auto phis = prefix_states(c, 1.0);
  EXPECT_NEAR(overlap2(phis[3], basis(4, 3)), 1.0, 1e-12);
  EXPECT_NEAR(overlap2(phis[4], basis(4, 3)), 1.0, 1e-12);
  EXPECT_NEAR((phis[1] - phis[0]).norm(), 0.0, 1e-15);
}

TEST(Builders, ControlledGroverParity) {
  EXPECT_THROW(build_controlled_grover(2, "11", 1, 4), std::invalid_argument);
  EXPECT_THROW(build_controlled_grover(2, "11", 5, 4), std::invalid_argument);
  const Circuit c = build_controlled_grover(2, "11", 4, 4);
  for (const Gate& g : c.gates) EXPECT_EQ(g.kind, GateKind::Id);
}

TEST(Builders, ControlledGroverFinalState) {
  const Circuit c = build_controlled_grover(2, "11", 2, 4);
  ASSERT_TRUE(c.has_control_ancilla);
  const CVector fin = apply_circuit_prefix(c, c.L(), 1.0).amplitudes();
  // register index s * 2 + b
  CVector expect = CVector::Zero(8);
  for (int s = 0; s < 4; ++s) expect[s * 2] = 0.5 / std::sqrt(2.0);
  expect[3 * 2 + 1] = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(overlap2(expect, fin), 1.0, 1e-12);

  // tracing out b leaves the equal mixture of phi^0 and |X>
  const StateVector sv = apply_circuit_prefix(c, c.L(), 1.0);
  const RVector pb = marginal_probabilities(sv, 1);
  EXPECT_NEAR(pb[0], 0.5, 1e-10);
  EXPECT_NEAR(pb[1], 0.5, 1e-10);
}

TEST(GateUnitary, EndpointsAndHalfway) {
  const Circuit c = build_grover(2, 1, "10");
  for (const Gate& g : c.gates) {
    EXPECT_NEAR((gate_unitary(g, c, 0.0) - CMatrix::Identity(4, 4)).norm(), 0.0, 1e-14);
  }
  const CMatrix o = gate_unitary(c.gates[0], c, 1.0);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(o(i, i) - (i == 2 ? -1.0 : 1.0)), 0.0, 1e-14);
  const CMatrix half = gate_unitary(c.gates[0], c, 0.5);
  EXPECT_NEAR(std::abs(half(2, 2) - Complex(0.0, 1.0)), 0.0, 1e-14);
  const CMatrix r = gate_unitary(c.gates[1], c, 1.0);
  const CVector plus = CVector::Constant(4, 0.5);
  EXPECT_NEAR((r * plus - plus).norm(), 0.0, 1e-14);
}

class GateUnitarity : public ::testing::TestWithParam<double> {};

TEST_P(GateUnitarity, AllKinds) {
  const double g = GetParam();
  std::vector<Circuit> circuits = {build_grover(3, 2, "101"), build_controlled_grover(2, "01", 2, 6),
                                   parse_circuit("qubits 2\ngate CUSTOM [1 0] [1 0 0 0 0 0 1 0 0 1 0 0 0 0 0 1]\n"
                                                 "gate CUSTOM [0] [0.6 0.8i 0.8i 0.6]\ngates ID")};
  for (const Circuit& c : circuits) {
    for (const Gate& gate : c.gates) {
      const CMatrix u = gate_unitary(gate, c, g);
      EXPECT_LE((u * u.adjoint() - CMatrix::Identity(u.rows(), u.cols())).norm(), 1e-10) << gate_name(gate.kind);
    }
    for (int l = 0; l <= c.L(); ++l) EXPECT_NEAR(apply_circuit_prefix(c, l, g).amplitudes().norm(), 1.0, 1e-10);
  }
}

INSTANTIATE_TEST_SUITE_P(Grid, GateUnitarity, ::testing::Values(0.0, 0.3, 0.7, 1.0));

TEST(GateUnitary, CustomPrincipalPower) {
  const Circuit c = parse_circuit("qubits 1\ngate CUSTOM [0] [0 1 1 0]");
  const CMatrix half = gate_unitary(c.gates[0], c, 0.5);
  EXPECT_NEAR((half * half - gate_unitary(c.gates[0], c, 1.0)).norm(), 0.0, 1e-12);
  const Circuit bad = parse_circuit("qubits 1\ngate CUSTOM [0] [-1 0 0 -1]");
  EXPECT_THROW(gate_unitary(bad.gates[0], bad, 0.5), Error);
}

TEST(CompiledGate, MatchesDenseUnitary) {
  const Circuit c = parse_circuit(
      "qubits 2\ncontrol-ancilla\noracle 10\ngates CORACLE CREFLECT\ngate CUSTOM [2 0] [1 0 0 0 0 1 0 0 0 0 0 1 0 0 1 0]");
  CVector v(8);
  for (int i = 0; i < 8; ++i) v[i] = Complex(std::cos(i + 0.3), std::sin(2.0 * i));
  for (const double g : {0.4, 1.0}) {
    for (const Gate& gate : c.gates) {
      const CompiledGate cg(gate, c, g);
      const CMatrix u = gate_unitary(gate, c, g);
      CVector out(8);
      cg.apply(as_span(v), as_span(out));
      EXPECT_NEAR((out - u * v).norm(), 0.0, 1e-12);
      cg.apply(as_span(v), as_span(out), true);
      EXPECT_NEAR((out - u.adjoint() * v).norm(), 0.0, 1e-12);
    }
  }
}

TEST(Grover, ExactAtN2) {
  for (int x = 0; x < 4; ++x) {
    const std::string X = index_to_bits(static_cast<std::size_t>(x), 2);
    const Circuit c = build_grover(2, 1, X);
    EXPECT_NEAR(overlap2(apply_circuit_prefix(c, 2, 1.0).amplitudes(), basis(4, static_cast<std::size_t>(x))), 1.0,
                1e-10);
  }
}

TEST(Grover, RotationFormula) {
  for (int n = 3; n <= 5; ++n) {
    const int q = grover_iterations(n);
    const std::string X = index_to_bits(5, n);
    const Circuit c = build_grover(n, q, X);
    const double expect = std::pow(std::sin((2 * q + 1) * std::asin(std::pow(2.0, -0.5 * n))), 2);
    EXPECT_NEAR(overlap2(apply_circuit_prefix(c, c.L(), 1.0).amplitudes(), basis(std::size_t{1} << n, 5)), expect,
                1e-10);
  }
  const Circuit c3 = build_grover(3, 2, "000");
  EXPECT_NEAR(overlap2(apply_circuit_prefix(c3, 4, 1.0).amplitudes(), basis(8, 0)), 0.9453125, 1e-10);
}

TEST(Prefix, RangeChecked) {
  const Circuit c = build_trivial(1, 2);
  EXPECT_THROW(apply_circuit_prefix(c, 3, 1.0), std::out_of_range);
  EXPECT_THROW(apply_circuit_prefix(c, -1, 1.0), std::out_of_range);
  EXPECT_NEAR((apply_circuit_prefix(c, 0, 1.0).amplitudes() - CVector::Constant(2, 1.0 / std::sqrt(2.0))).norm(), 0.0,
              1e-15);
}

TEST(Validate, RejectsBadCircuits) {
  Circuit c = build_grover(2, 1, "11");
  c.oracle.reset();
  EXPECT_THROW(validate(c), std::invalid_argument);
  Circuit d = build_trivial(1, 1);
  d.gates = {Gate{GateKind::Custom, {0}, {1.0, 1.0, 0.0, 1.0}}};
  EXPECT_THROW(validate(d), std::invalid_argument);
  Circuit e = build_trivial(1, 1);
  e.gates.clear();
  EXPECT_THROW(validate(e), std::invalid_argument);
}

}  // namespace
}  // namespace clocklab
