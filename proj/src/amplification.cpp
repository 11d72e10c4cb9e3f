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

#include "clocklab/amplification.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "clocklab/kernels.hpp"

namespace clocklab {
namespace {

RVector term_spectrum(const ClockHamiltonian& h, const Term& t) {
  const CMatrix block = h.term_block(t);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(block, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("term eigensolver failed");
  RVector ev = es.eigenvalues();
  // the term acts as offset * 1 outside its clock support
  if (h.term_support(t).size() < h.clock_dim()) {
    ev.conservativeResize(ev.size() + 1);
    ev[ev.size() - 1] = t.offset;
  }
  return ev;
}

}  // namespace

FrustrationFreeCertificate check_frustration_free(const ClockHamiltonian& h, const CVector& psi) {
  if (static_cast<std::size_t>(psi.size()) != h.dim()) throw std::invalid_argument("dimension mismatch");
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw std::invalid_argument("state must have unit norm");
  FrustrationFreeCertificate cert;
  cert.is_ff = true;
  CVector out(psi.size());
  for (const Term& t : h.terms()) {
    TermCheck tc;
    tc.term = t;
    tc.label = term_label(t);
    tc.min_eigenvalue = term_spectrum(h, t).minCoeff();
    out.setZero();
    h.apply_term(t, as_span(psi), as_span(out));
    tc.residual_norm = out.norm();
    if (tc.min_eigenvalue < -1e-10 || tc.residual_norm > 1e-9) cert.is_ff = false;
    cert.per_term.push_back(tc);
  }
  return cert;
}

AmplifiedHamiltonian amplify(const ClockHamiltonian& h) {
  if (h.ancilla_dim() != 1) throw std::invalid_argument("operator is already coupled to an ancilla");
  TermList terms;
  int level = 0;
  for (const Term& t : h.terms()) {
    const RVector ev = term_spectrum(h, t);
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (std::min(std::abs(ev[i]), std::abs(ev[i] - 1.0)) > 1e-9) {
        throw Error("amplification requires projector terms (" + term_label(t) + ")");
      }
    }
    Term coupled = t;
    coupled.ancilla = ++level;
    terms.push_back(coupled);
  }
  const std::size_t A = h.terms().size() + 1;
  return {ClockHamiltonian(h.circuit(), h.g(), terms, A, h.topology()), h.terms()};
}

CVector pivot_embed(const CVector& psi, std::size_t ancilla_dim) {
  CVector out = CVector::Zero(psi.size() * static_cast<Eigen::Index>(ancilla_dim));
  for (Eigen::Index i = 0; i < psi.size(); ++i) out[i * static_cast<Eigen::Index>(ancilla_dim)] = psi[i];
  return out;
}

AmplifiedSplit amplified_oracle_split(const Circuit& c) {
  const auto levels = oracle_levels(c);
  const int L = c.L();
  const std::size_t A = static_cast<std::size_t>(L + c.num_qubits() + 1);
  const std::size_t K = c.clock_dim() * A;
  if (K > kDenseLimit) throw CapacityError("amplified coupling of dimension " + std::to_string(K) + " is too large");
  CMatrix p = CMatrix::Zero(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(K));
  auto idx = [A](int clock, int anc) { return static_cast<Eigen::Index>(static_cast<std::size_t>(clock) * A + static_cast<std::size_t>(anc)); };
  TermList hops;
  TermList rest;
  for (int l = 1; l <= L; ++l) {
    if (std::find(levels.begin(), levels.end(), l) != levels.end()) {
      // (|l><l-1| + |l-1><l|)_c (x) (|l><0| + |0><l|)_a
      for (const auto& [cr, cc] : {std::pair{l, l - 1}, std::pair{l - 1, l}}) {
        p(idx(cr, l), idx(cc, 0)) = -1.0;
        p(idx(cr, 0), idx(cc, l)) = -1.0;
      }
      hops.push_back({TermTag::OracleHop, l, 1.0, 0.0, l});
      rest.push_back({TermTag::ClockPair, l, 1.0, 0.0, l});
    } else {
      rest.push_back({TermTag::Feynman, l, 1.0, 0.0, l});
    }
  }
  for (int j = 0; j < c.num_qubits(); ++j) rest.push_back({TermTag::Input, j, 1.0, 0.0, L + 1 + j});
  return AmplifiedSplit{std::move(p), ClockHamiltonian(c, 1.0, std::move(hops), A),
                        ClockHamiltonian(c, 1.0, std::move(rest), A), 0.5, levels};
}

AmplifiedGapReport verify_amplified_gap(const Circuit& c, const EigenOptions& options) {
  const ClockHamiltonian h = build_standard(c, 1.0);
  AmplifiedGapReport r;
  r.delta = spectral_gap(eigendecompose(h, options)).gap;
  const CVector zeta = build_history_state(c, 1.0).state.amplitudes();
  r.frustration_free = check_frustration_free(h, zeta).is_ff;
  const AmplifiedHamiltonian amp = amplify(h);
  r.delta_tilde = gap_to_state(amp.matrix, pivot_embed(zeta, amp.matrix.ancilla_dim()), options);
  r.ratio = r.delta_tilde / std::sqrt(r.delta);
  return r;
}

}  // namespace clocklab
