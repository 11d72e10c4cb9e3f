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

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "clocklab/clock_hamiltonian.hpp"
#include "clocklab/kernels.hpp"
#include "clocklab/spectral.hpp"

namespace clocklab {
namespace {

RVector eigenvalues(const CMatrix& m) { return Eigen::SelfAdjointEigenSolver<CMatrix>(m, Eigen::EigenvaluesOnly).eigenvalues(); }

Circuit identity_twin(Circuit c) {
  for (Gate& g : c.gates) g = Gate{};
  c.oracle.reset();
  return c;
}

std::vector<Circuit> test_circuits() {
  return {build_trivial(1, 3),
          build_trivial(2, 5),
          build_grover(2, 1, "10"),
          build_grover(3, 2, "011"),
          build_modified_grover(2, "11"),
          build_modified_grover(3, "100"),
          build_controlled_grover(2, "01", 2, 4),
          parse_circuit("qubits 2\ninitial basis 10\ngate CUSTOM [0 1] [1 0 0 0 0 1 0 0 0 0 0 1 0 0 1 0]\ngates REFLECT"),
          parse_circuit("qubits 1\ngate CUSTOM [0] [0.6 0.8i 0.8i 0.6]\ngates ID")};
}

TEST(ClockHamiltonian, ParallelSerialAndDenseAgree) {
  for (const Circuit& c : test_circuits()) {
    for (const double g : {0.35, 1.0}) {
      const ClockHamiltonian h = build_standard(c, g);
      CVector v(static_cast<Eigen::Index>(h.dim()));
      for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex(std::sin(1.3 * i), std::cos(0.7 * i));
      CVector a(v.size()), b(v.size());
      h.apply(as_span(v), as_span(a));
      h.apply_serial(as_span(v), as_span(b));
      EXPECT_NEAR((a - b).norm(), 0.0, 1e-12);
      EXPECT_NEAR((a - h.to_dense() * v).norm(), 0.0, 1e-12);
      const CMatrix d = h.to_dense();
      EXPECT_NEAR((d - d.adjoint()).norm(), 0.0, 1e-14);
      EXPECT_LE(eigenvalues(d).cwiseAbs().maxCoeff(), h.norm_bound() + 1e-12);
    }
  }
}

TEST(ClockHamiltonian, TrivialGoldenGap) {
  const GapReport g = spectral_gap(eigendecompose(build_standard(build_trivial(1, 2), 1.0)));
  EXPECT_NEAR(g.gap, 0.13397459621556146, 1e-12);
}

TEST(ClockHamiltonian, GroverGoldenGap) {
  const GapReport g = spectral_gap(eigendecompose(build_standard(build_grover(2, 1, "11"), 1.0)));
  EXPECT_NEAR(g.gap, 0.13397459621556115, 1e-12);
}

TEST(ClockHamiltonian, ModifiedPointerGolden) {
  const Circuit c = build_trivial(1, 4);
  const std::vector<double> beta(4, 1.0);
  const std::vector<double> e = {0.0, 0.25, 0.5, 0.75, 1.0};
  const ClockHamiltonian h = build_modified(c, beta, e, 1.0);
  const RVector ev = eigenvalues(h.to_dense());
  EXPECT_NEAR(ev[0], 0.0, 1e-12);
  EXPECT_NEAR(ev[1] - ev[0], 0.3858632254263817, 1e-12);
  const Term shift = h.terms().back();
  EXPECT_EQ(shift.tag, TermTag::Identity);
  EXPECT_NEAR(shift.weight, -0.19815271013465202, 1e-12);
  EXPECT_THROW(build_modified(c, {1.0, 1.0, 1.5, 1.0}, e, 1.0), std::invalid_argument);
  EXPECT_THROW(build_modified(c, beta, {0.0, 1.0}, 1.0), std::invalid_argument);
}

// The history state is the zero-energy ground state along the whole path.
TEST(HistoryState, GroundStateOnGrid) {
  for (const Circuit& c : test_circuits()) {
    for (const double g : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const ClockHamiltonian h = build_standard(c, g);
      const CVector psi = build_history_state(c, g).state.amplitudes();
      const double norm = h.norm_bound();
      EXPECT_LE((h * psi).norm(), 1e-12 * norm) << serialize_circuit(c) << " g=" << g;
      const GapReport gr = spectral_gap(eigendecompose(h));
      EXPECT_NEAR(gr.lambda0, 0.0, 1e-9);
      EXPECT_EQ(gr.ground_multiplicity, 1);
    }
  }
}

TEST(HistoryState, DecomposeRecoversAmplitudes) {
  const Circuit c = build_modified_grover(2, "01");
  const HistoryState hs = build_history_state(c, 0.6);
  const HistoryState back = decompose_history(c, 0.6, hs.state.amplitudes());
  for (const Complex a : back.alpha) EXPECT_NEAR(std::abs(a - 1.0 / std::sqrt(5.0)), 0.0, 1e-12);
  CVector junk = CVector::Zero(static_cast<Eigen::Index>(hs.state.dim()));
  junk[1] = 1.0;
  EXPECT_THROW(decompose_history(c, 0.6, junk), NumericalError);
}

TEST(Conjugation, OperatorIdentity) {
  for (const Circuit& c : test_circuits()) {
    const double g = 0.8;
    const CMatrix W = conjugation_unitary(c, g);
    const CMatrix h1 = build_standard(identity_twin(c), g).to_dense();
    EXPECT_NEAR((W * h1 * W.adjoint() - build_standard(c, g).to_dense()).norm(), 0.0, 1e-12);
    CVector v = CVector::Ones(W.rows()) / std::sqrt(static_cast<double>(W.rows()));
    CVector w = v;
    apply_conjugation(c, g, w);
    EXPECT_NEAR((w - W * v).norm(), 0.0, 1e-12);
    apply_conjugation(c, g, w, true);
    EXPECT_NEAR((w - v).norm(), 0.0, 1e-12);
  }
}

TEST(Conjugation, SpectraMatchForAllTargets) {
  const std::vector<double> beta = {1.0, 0.5, 0.8, 0.3};
  const std::vector<double> e = {0.0, 0.1, 0.4, 0.2, 0.9};
  for (std::size_t x = 0; x < 4; ++x) {
    const Circuit c = build_modified_grover(2, index_to_bits(x, 2));
    const Circuit t = identity_twin(c);
    EXPECT_LE((eigenvalues(build_standard(c, 1.0).to_dense()) - eigenvalues(build_standard(t, 1.0).to_dense()))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-10);
    EXPECT_LE((eigenvalues(build_modified(c, beta, e, 1.0).to_dense()) -
               eigenvalues(build_modified(t, beta, e, 1.0).to_dense()))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-10);
  }
}

TEST(Feynman, OpenChainSpectrum) {
  for (const int L : {1, 4, 9}) {
    const Circuit c = build_grover(2, 1, "01");
    Circuit cl = c;
    cl.gates.resize(static_cast<std::size_t>(L), Gate{GateKind::Reflect, {}, {}});
    const RVector ev = eigenvalues(build_feynman(cl, 1.0, ClockTopology::Open).to_dense());
    const RVector ref = analytic_feynman_spectrum(L, 2, ClockTopology::Open).eigenvalues;
    EXPECT_LE((ev - ref).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Feynman, PeriodicSpectrum) {
  const RVector l1 = eigenvalues(build_feynman(build_trivial(1, 1), 1.0, ClockTopology::Periodic).to_dense());
  ASSERT_EQ(l1.size(), 4);
  EXPECT_NEAR(l1[0], 0.0, 1e-14);
  EXPECT_NEAR(l1[1], 0.0, 1e-14);
  EXPECT_NEAR(l1[2], 2.0, 1e-14);
  EXPECT_NEAR(l1[3], 2.0, 1e-14);
  const RVector t7 = eigenvalues(build_feynman(build_trivial(1, 7), 1.0, ClockTopology::Periodic).to_dense());
  EXPECT_NEAR(t7[2], 1.0 - std::cos(kPi / 4.0), 1e-12);
}

TEST(InputPenalty, BasisInitialState) {
  const Circuit c = parse_circuit("qubits 2\ninitial basis 10\ngates ID ID");
  const ClockHamiltonian h = build_input_penalty(c);
  CVector good = CVector::Zero(static_cast<Eigen::Index>(h.dim()));
  good[2 * 3 + 0] = 1.0;  // |10>|0>
  EXPECT_NEAR((h * good).norm(), 0.0, 1e-15);
  CVector bad = CVector::Zero(good.size());
  bad[0] = 1.0;  // |00>|0>
  EXPECT_NEAR((h * bad).norm(), 1.0, 1e-15);
}

TEST(OracleSplit, ReassemblesStandardOperator) {
  for (const Circuit& c : {build_modified_grover(2, "10"), build_grover(3, 2, "111"),
                           build_controlled_grover(2, "11", 2, 6)}) {
    const OracleSplit s = oracle_split(c);
    const CMatrix h = build_standard(c, 1.0).to_dense();
    EXPECT_NEAR((s.coupling * s.oracle_part.to_dense() + s.H_sc.to_dense() - h).norm(), 0.0, 1e-12);
    const RVector lam = eigenvalues(s.P_c);
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      const double a = std::abs(lam[i]);
      EXPECT_TRUE(a < 1e-12 || std::abs(a - 1.0) < 1e-12) << lam[i];
    }
    // H_sc does not depend on the marked item
    Circuit other = c;
    other.oracle = make_oracle(std::string(static_cast<std::size_t>(c.n), '0'));
    EXPECT_NEAR((oracle_split(other).H_sc.to_dense() - s.H_sc.to_dense()).norm(), 0.0, 1e-14);
  }
}

TEST(OracleSplit, RejectsAdjacentOracles) {
  const Circuit c = parse_circuit("qubits 2\noracle 11\ngates ORACLE ORACLE REFLECT");
  EXPECT_THROW(oracle_split(c), Error);
}

TEST(Triplets, DenseRoundTrip) {
  const ClockHamiltonian h = build_standard(build_grover(2, 1, "11"), 0.5);
  std::ostringstream os;
  write_triplets(h, os, 1e-14);
  std::istringstream is(os.str());
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(h.dim()), static_cast<Eigen::Index>(h.dim()));
  long r = 0, c = 0;
  double re = 0, im = 0;
  while (is >> r >> c >> re >> im) m(r, c) = Complex(re, im);
  EXPECT_NEAR((m - h.to_dense()).norm(), 0.0, 1e-12);
}

TEST(Capacity, DenseAssemblyLimit) {
  const ClockHamiltonian h = build_standard(build_trivial(6, 80), 1.0);
  EXPECT_GT(h.dim(), kDenseLimit);
  EXPECT_THROW(h.to_dense(), CapacityError);
}

}  // namespace
}  // namespace clocklab
