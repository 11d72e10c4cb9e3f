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

#include "clocklab/oracle_gadget.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "clocklab/clock_hamiltonian.hpp"
#include "clocklab/kernels.hpp"
#include "clocklab/spectral.hpp"

namespace clocklab {
namespace {

struct Rotations {
  Complex r1_00, r1_10;  // R1 |0> = r1_00 |0> + r1_10 |1>
  double cb, sb;         // R2 = [[cb, sb], [-sb, cb]]
};

// Angles for target exp(-i theta O) = c 1 + d O with c = cos theta,
// d = -i sin theta, scaled by 1 / n_star.
Rotations rotations(double theta, double n_star) {
  const double c = std::cos(theta);
  const double d = -std::sin(theta);  // imaginary part of d
  const double ac = std::abs(c);
  const double ad = std::abs(d);
  const double a = std::acos(std::clamp((ac + ad) / n_star, -1.0, 1.0));
  const double b = std::acos(std::clamp((ac - ad) / n_star, -1.0, 1.0));
  const double alpha = 0.5 * (a + b);
  const double beta = 0.5 * (b - a);
  const double g0 = c < 0.0 ? kPi : 0.0;
  const double g1 = d == 0.0 ? 0.0 : (d < 0.0 ? -0.5 * kPi : 0.5 * kPi);
  return {std::polar(std::cos(alpha), g0), std::polar(std::sin(alpha), g1), std::cos(beta), std::sin(beta)};
}

void apply_oracle_slices(const CompiledGate& oracle, CVector& v, std::size_t sys, std::size_t k_dim) {
  std::vector<Complex> buf(sys);
  for (std::size_t k = 0; k < k_dim; ++k) {
    for (std::size_t s = 0; s < sys; ++s) buf[s] = v[static_cast<Eigen::Index>(s * k_dim + k)];
    oracle.apply_inplace(buf);
    for (std::size_t s = 0; s < sys; ++s) v[static_cast<Eigen::Index>(s * k_dim + k)] = buf[s];
  }
}

Gate oracle_gate_of(const Circuit& c) {
  for (const Gate& g : c.gates) {
    if (is_oracle_kind(g.kind)) return g;
  }
  return Gate{c.has_control_ancilla ? GateKind::COracle : GateKind::Oracle, {}, {}};
}

}  // namespace

CouplingDiagonalization diagonalize_coupling(const CMatrix& P) {
  if (P.rows() != P.cols() || P.rows() == 0) throw std::invalid_argument("coupling must be a nonempty square matrix");
  if ((P - P.adjoint()).norm() > 1e-12 * std::max(1.0, P.norm())) {
    throw std::invalid_argument("coupling must be Hermitian");
  }
  CouplingDiagonalization d;
  const CMatrix off = P - CMatrix(P.diagonal().asDiagonal());
  if (off.norm() == 0.0) {
    d.V = CMatrix::Identity(P.rows(), P.cols());
    d.lambda = P.diagonal().real();
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(P);
    if (es.info() != Eigen::Success) throw NumericalError("coupling eigensolver failed");
    d.V = es.eigenvectors().adjoint();
    d.lambda = es.eigenvalues();
  }
  if (d.lambda.cwiseAbs().maxCoeff() > 1.0 + 1e-12) throw std::invalid_argument("coupling norm exceeds 1");
  return d;
}

double gadget_normalization(double s, const RVector& lambda) {
  double n_star = 0.0;
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    const double th = s * lambda[k];
    n_star = std::max(n_star, std::abs(std::cos(th)) + std::abs(std::sin(th)));
  }
  return n_star;
}

GadgetResult gadget_step(const CVector& psi, double s, const RVector& lambda, const CompiledGate& oracle,
                         std::size_t system_dim, Rng& rng, QueryCounter& counter) {
  const auto K = static_cast<std::size_t>(lambda.size());
  if (static_cast<std::size_t>(psi.size()) != system_dim * K) throw std::invalid_argument("state does not match gadget");
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    if (std::abs(s * lambda[k]) > kPi) throw std::invalid_argument("rotation-domain violation: |s lambda| > pi");
  }
  const double n_star = gadget_normalization(s, lambda);
  std::vector<Rotations> rot(K);
  for (std::size_t k = 0; k < K; ++k) rot[k] = rotations(s * lambda[static_cast<Eigen::Index>(k)], n_star);

  // R1 on the fresh ancilla
  CVector b0(psi.size()), b1(psi.size());
  for (std::size_t i = 0; i < static_cast<std::size_t>(psi.size()); ++i) {
    const Rotations& r = rot[i % K];
    b0[static_cast<Eigen::Index>(i)] = r.r1_00 * psi[static_cast<Eigen::Index>(i)];
    b1[static_cast<Eigen::Index>(i)] = r.r1_10 * psi[static_cast<Eigen::Index>(i)];
  }
  // the single oracle call, controlled on b = 1
  apply_oracle_slices(oracle, b1, system_dim, K);
  ++counter.count;
  // R2, then measure b
  CVector out0(psi.size()), out1(psi.size());
  for (std::size_t i = 0; i < static_cast<std::size_t>(psi.size()); ++i) {
    const Rotations& r = rot[i % K];
    const auto e = static_cast<Eigen::Index>(i);
    out0[e] = r.cb * b0[e] + r.sb * b1[e];
    out1[e] = -r.sb * b0[e] + r.cb * b1[e];
  }
  const double p0 = out0.squaredNorm();
  const double total = p0 + out1.squaredNorm();
  GadgetResult res;
  res.success_probability = std::clamp(p0 / total, 0.0, 1.0);
  res.success = rng.uniform() < res.success_probability;
  CVector& kept = res.success ? out0 : out1;
  res.post_state = kept / kept.norm();
  return res;
}

FractionalOracle::FractionalOracle(const Circuit& c, const CMatrix& P)
    : sys_(c.system_dim()),
      diag_(diagonalize_coupling(P)),
      oracle_(std::make_shared<CompiledGate>(oracle_gate_of(c), c, 1.0)) {
  if (!c.oracle) throw std::invalid_argument("fractional oracle needs a circuit with an oracle");
}

CVector FractionalOracle::to_eigenbasis(const CVector& psi, bool inverse) const {
  const auto K = static_cast<Eigen::Index>(diag_.lambda.size());
  CVector out(psi.size());
  for (Eigen::Index s = 0; s < static_cast<Eigen::Index>(sys_); ++s) {
    if (inverse) {
      out.segment(s * K, K) = diag_.V.adjoint() * psi.segment(s * K, K);
    } else {
      out.segment(s * K, K) = diag_.V * psi.segment(s * K, K);
    }
  }
  return out;
}

GadgetResult FractionalOracle::apply(const CVector& psi, double s, Rng& rng, QueryCounter& counter) const {
  GadgetResult r = gadget_step(to_eigenbasis(psi, false), s, diag_.lambda, *oracle_, sys_, rng, counter);
  r.post_state = to_eigenbasis(r.post_state, true);
  return r;
}

CVector FractionalOracle::exact(const CVector& psi, double s) const {
  const auto K = static_cast<std::size_t>(diag_.lambda.size());
  CVector v = to_eigenbasis(psi, false);
  CVector ov = v;
  apply_oracle_slices(*oracle_, ov, sys_, K);
  for (std::size_t i = 0; i < static_cast<std::size_t>(v.size()); ++i) {
    const double th = s * diag_.lambda[static_cast<Eigen::Index>(i % K)];
    const auto e = static_cast<Eigen::Index>(i);
    v[e] = std::cos(th) * v[e] - Complex(0.0, std::sin(th)) * ov[e];
  }
  return to_eigenbasis(v, true);
}

TrotterEngine::TrotterEngine(const Circuit& c)
    : circuit_(c), oracle_(c, oracle_split(c).P_c) {
  const OracleSplit split = oracle_split(c);
  coupling_ = split.coupling;
  Eigen::SelfAdjointEigenSolver<CMatrix> sc(split.H_sc.to_dense());
  Eigen::SelfAdjointEigenSolver<CMatrix> full(build_standard(c, 1.0).to_dense());
  if (sc.info() != Eigen::Success || full.info() != Eigen::Success) throw NumericalError("eigensolver failed");
  sc_vectors_ = sc.eigenvectors();
  sc_values_ = sc.eigenvalues();
  h_vectors_ = full.eigenvectors();
  h_values_ = full.eigenvalues();

  // leading identity block of the circuit sets the reference clock support
  int p = 0;
  while (p < c.L() && c.gates[static_cast<std::size_t>(p)].kind == GateKind::Id) ++p;
  CVector clock = CVector::Zero(static_cast<Eigen::Index>(c.clock_dim()));
  clock.head(p + 1).setConstant(1.0 / std::sqrt(static_cast<double>(p + 1)));
  initial_ = tensor(initial_state(c).amplitudes(), clock);
}

CVector TrotterEngine::exact(const CVector& psi0, double t) const {
  CVector coeff = h_vectors_.adjoint() * psi0;
  for (Eigen::Index i = 0; i < coeff.size(); ++i) coeff[i] *= std::polar(1.0, -h_values_[i] * t);
  return h_vectors_ * coeff;
}

CVector TrotterEngine::sc_step(const CVector& psi, double tau) const {
  CVector coeff = sc_vectors_.adjoint() * psi;
  for (Eigen::Index i = 0; i < coeff.size(); ++i) coeff[i] *= std::polar(1.0, -sc_values_[i] * tau);
  return sc_vectors_ * coeff;
}

TrotterResult TrotterEngine::simulate(const CVector& psi0, double t, int steps, int order, Rng& rng) const {
  if (steps < 1) throw std::invalid_argument("Trotter simulation needs at least one step");
  if (order != 1 && order != 2) throw std::invalid_argument("Trotter order must be 1 or 2");
  if (static_cast<std::size_t>(psi0.size()) != dim()) throw std::invalid_argument("initial state does not match");
  TrotterResult r;
  r.steps = steps;
  const double tau = t / steps;
  QueryCounter counter;
  CVector psi = psi0;
  auto oracle_factor = [&](const CVector& checkpoint) {
    for (;;) {
      GadgetResult g = oracle_.apply(checkpoint, coupling_ * tau, rng, counter);
      if (g.success) return g.post_state;
      ++r.failures;
    }
  };
  for (int k = 0; k < steps; ++k) {
    if (order == 1) {
      psi = sc_step(oracle_factor(psi), tau);
    } else {
      psi = sc_step(oracle_factor(sc_step(psi, 0.5 * tau)), 0.5 * tau);
    }
  }
  r.oracle_count = counter.count;
  r.state = psi;
  r.error = (psi - exact(psi0, t)).norm();
  return r;
}

double TrotterEngine::formula_error(const CVector& psi0, double t, int steps, int order) const {
  if (steps < 1) throw std::invalid_argument("Trotter simulation needs at least one step");
  if (order != 1 && order != 2) throw std::invalid_argument("Trotter order must be 1 or 2");
  const double tau = t / steps;
  CVector psi = psi0;
  for (int k = 0; k < steps; ++k) {
    if (order == 1) {
      psi = sc_step(oracle_.exact(psi, coupling_ * tau), tau);
    } else {
      psi = sc_step(oracle_.exact(sc_step(psi, 0.5 * tau), coupling_ * tau), 0.5 * tau);
    }
  }
  return (psi - exact(psi0, t)).norm();
}

TrotterResult trotter_simulate(const Circuit& c, double t, int steps, int order, std::uint64_t seed) {
  const TrotterEngine engine(c);
  Rng rng(seed);
  return engine.simulate(engine.default_initial(), t, steps, order, rng);
}

QueryLedger sweep_ledger(const TrotterEngine& engine, const std::vector<double>& times, double epsilon, int order,
                         std::uint64_t seed) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("error target must be positive");
  QueryLedger ledger;
  ledger.epsilon = epsilon;
  ledger.order = order;
  const CVector& psi0 = engine.default_initial();
  constexpr int kMaxSteps = 1 << 20;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    int hi = 1;
    while (engine.formula_error(psi0, t, hi, order) > epsilon) {
      if (hi >= kMaxSteps) throw NumericalError("step underflow: error target not reached at t = " + std::to_string(t));
      hi *= 2;
    }
    int lo = hi / 2;  // fails (or is 0)
    while (hi - lo > 1) {
      const int mid = lo + (hi - lo) / 2;
      if (engine.formula_error(psi0, t, mid, order) <= epsilon) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    Rng rng(derive_seed(seed, 11, i));
    const TrotterResult r = engine.simulate(psi0, t, hi, order, rng);
    ledger.entries.push_back({t, r.oracle_count, hi, r.error});
  }
  if (ledger.entries.size() >= 3) ledger.fitted_gamma = fit_query_exponent(ledger);
  return ledger;
}

double fit_query_exponent(const QueryLedger& ledger) {
  if (ledger.entries.size() < 3) throw std::invalid_argument("query exponent fit needs at least 3 ledger entries");
  std::vector<std::pair<double, double>> pts;
  for (const auto& e : ledger.entries) {
    if (!(e.t > 0.0) || e.oracle_count <= 0) throw std::invalid_argument("ledger entries need t > 0 and queries > 0");
    pts.emplace_back(e.t, static_cast<double>(e.oracle_count));
  }
  return fit_gap_scaling(pts).slope;
}

}  // namespace clocklab
