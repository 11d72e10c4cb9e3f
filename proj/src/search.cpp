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

#include "clocklab/search.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <Eigen/Eigenvalues>

#include "clocklab/oracle_gadget.hpp"
#include "clocklab/spectral.hpp"

namespace clocklab {
namespace {

constexpr std::uint64_t kTrialStream = 0x5ea2c4;

int leading_identities(const Circuit& c) {
  int p = 0;
  while (p < c.L() && c.gates[static_cast<std::size_t>(p)].kind == GateKind::Id) ++p;
  return p;
}

struct Eigensystem {
  RVector values;
  CMatrix vectors;
};

Eigensystem dense_eigensystem(const ClockHamiltonian& h) {
  if (h.dim() > kDenseLimit) {
    throw CapacityError("operator of dimension " + std::to_string(h.dim()) + " exceeds the dense limit");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.dense());
  if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

CVector evolve(const Eigensystem& es, const CVector& psi, double t) {
  CVector coeff = es.vectors.adjoint() * psi;
  for (Eigen::Index i = 0; i < coeff.size(); ++i) coeff[i] *= std::polar(1.0, -es.values[i] * t);
  return es.vectors * coeff;
}

// Per-target data shared read-only by all trials.
struct Instance {
  Circuit circuit;
  StateVector zeta;
  Eigensystem eig;
  std::unique_ptr<TrotterEngine> engine;
};

}  // namespace

std::string_view family_name(SearchFamily f) {
  return f == SearchFamily::ModifiedGrover ? "modified_grover" : "controlled_grover";
}

SearchFamily family_from_name(std::string_view name) {
  if (name == "modified_grover") return SearchFamily::ModifiedGrover;
  if (name == "controlled_grover") return SearchFamily::ControlledGrover;
  throw std::invalid_argument("unsupported search family '" + std::string(name) + "'");
}

std::string_view mode_name(MeasurementMode m) {
  switch (m) {
    case MeasurementMode::ExactProjective: return "exact_projective";
    case MeasurementMode::PhaseRandomization: return "phase_randomization";
    case MeasurementMode::GadgetRandomization: return "gadget";
  }
  return "?";
}

MeasurementMode mode_from_name(std::string_view name) {
  if (name == "exact_projective" || name == "exact") return MeasurementMode::ExactProjective;
  if (name == "phase_randomization") return MeasurementMode::PhaseRandomization;
  if (name == "gadget") return MeasurementMode::GadgetRandomization;
  throw std::invalid_argument("unknown measurement mode '" + std::string(name) + "'");
}

Circuit family_circuit(SearchFamily f, int n, const std::string& X) {
  if (f == SearchFamily::ModifiedGrover) return build_modified_grover(n, X);
  const int q = grover_iterations(n);
  return build_controlled_grover(n, X, 2 * q, 4 * q);
}

StateVector reference_state(const Circuit& c) {
  const int p = leading_identities(c);
  if (p == 0) throw std::invalid_argument("unsupported family: circuit has no leading identity block");
  CVector clock = CVector::Zero(static_cast<Eigen::Index>(c.clock_dim()));
  clock.head(p + 1).setConstant(1.0 / std::sqrt(static_cast<double>(p + 1)));
  std::vector<std::size_t> shape = c.register_shape();
  shape.push_back(c.clock_dim());
  return StateVector::normalized(tensor(initial_state(c).amplitudes(), clock), std::move(shape));
}

OverlapReport overlap_probabilities(const HistoryState& zeta, const StateVector& nu, const std::string& X) {
  const StateVector& z = zeta.state;
  if (z.dim() != nu.dim() || z.factor_shape() != nu.factor_shape()) {
    throw std::invalid_argument("dimension mismatch between reference and history state");
  }
  const OracleSpec spec = make_oracle(X);
  if ((std::size_t{1} << spec.n) != z.factor_shape().front()) throw std::invalid_argument("dimension mismatch for X");
  OverlapReport r;
  r.p_nu_zeta = std::min(1.0, std::norm(nu.amplitudes().dot(z.amplitudes())));
  // clock-then-system statistics equal the plain marginal of the first factor
  r.p_X_zeta = std::clamp(marginal_probabilities(z, 0)[static_cast<Eigen::Index>(spec.index())], 0.0, 1.0);
  r.p_s_lower = r.p_nu_zeta * r.p_X_zeta;
  return r;
}

ProjectionOutcome project_onto(const StateVector& s, const CVector& z, Rng& rng) {
  if (static_cast<std::size_t>(z.size()) != s.dim()) throw std::invalid_argument("dimension mismatch");
  const Complex ov = z.dot(s.amplitudes());
  const double p = std::clamp(std::norm(ov), 0.0, 1.0);
  if (rng.uniform() < p) return {true, StateVector::normalized(z * ov, s.factor_shape())};
  return {false, StateVector::normalized(s.amplitudes() - z * ov, s.factor_shape())};
}

ProjectionOutcome measure_ground_state_exact(const StateVector& s, const ClockHamiltonian& h, Rng& rng) {
  EigenOptions opts;
  opts.want_vectors = true;
  opts.count = 4;
  const SpectralResult sr = eigendecompose(h, opts);
  const GapReport gr = spectral_gap(sr);
  if (gr.ground_multiplicity != 1) throw NumericalError("degenerate ground space");
  return project_onto(s, sr.eigenvectors.col(0), rng);
}

double coherence_factor(double omega, double delta_est, int reps) {
  if (!(delta_est > 0.0)) throw std::invalid_argument("randomization gap estimate must be positive");
  const double x = omega * 2.0 * kPi / delta_est;
  const double one = std::abs(x) < 1e-12 ? 1.0 : std::abs(std::sin(0.5 * x) / (0.5 * x));
  return std::pow(one, reps);
}

RandomizationOutcome measure_via_phase_randomization(const StateVector& s, const ClockHamiltonian& h,
                                                     double delta_est, int reps, Rng& rng) {
  if (!(delta_est > 0.0)) throw std::invalid_argument("randomization gap estimate must be positive");
  if (reps < 0) throw std::invalid_argument("repetition count must be nonnegative");
  if (s.dim() != h.dim()) throw std::invalid_argument("dimension mismatch");
  const Eigensystem es = dense_eigensystem(h);
  const CVector a = es.vectors.adjoint() * s.amplitudes();
  RandomizationOutcome out{s, a.cwiseAbs2(), 0.0, 0.0};
  if (reps == 0) return out;
  const double tol = zero_tolerance(std::max(std::abs(es.values[0]), std::abs(es.values[es.values.size() - 1])));
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = i + 1; j < a.size(); ++j) {
      const double w = es.values[j] - es.values[i];
      if (w <= tol) continue;
      out.max_coherence = std::max(out.max_coherence, std::abs(a[i] * std::conj(a[j])) * coherence_factor(w, delta_est, reps));
    }
  }
  const double window = 2.0 * kPi / delta_est;
  CVector psi = s.amplitudes();
  for (int r = 0; r < reps; ++r) {
    const double t = window * rng.uniform();
    psi = evolve(es, psi, t);
    out.total_time += t;
  }
  out.post_state = StateVector::normalized(psi, s.factor_shape());
  return out;
}

std::size_t measure_clock_then_system(const StateVector& s, Rng& rng) {
  const std::size_t clock = s.factor_shape().size() - 1;
  const std::size_t l = sample_index(marginal_probabilities(s, clock), rng);
  const StateVector after = collapse(s, clock, l);
  return sample_index(marginal_probabilities(after, 0), rng);
}

void validate(const SearchConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (!(cfg.c_constant >= kPi)) throw std::invalid_argument("c_constant must be at least pi");
  if (cfg.n < 2) throw std::invalid_argument("search needs n >= 2");
  if (cfg.reps < 0) throw std::invalid_argument("repetition count must be nonnegative");
  if (!(cfg.max_tau > 0.0)) throw std::invalid_argument("Trotter step bound must be positive");
}

SearchOutcome run_generalized_search(const SearchConfig& cfg) {
  validate(cfg);
  const std::size_t N = std::size_t{1} << cfg.n;
  const bool gadget = cfg.mode == MeasurementMode::GadgetRandomization;

  std::vector<Instance> inst;
  inst.reserve(N);
  for (std::size_t x = 0; x < N; ++x) {
    const std::string X = index_to_bits(x, cfg.n);
    Circuit c = family_circuit(cfg.family, cfg.n, X);
    const ClockHamiltonian h = build_standard(c, 1.0);
    StateVector zeta = build_history_state(c, 1.0).state;
    Eigensystem eig = dense_eigensystem(h);
    std::unique_ptr<TrotterEngine> engine;
    if (gadget) engine = std::make_unique<TrotterEngine>(c);
    inst.push_back({std::move(c), std::move(zeta), std::move(eig), std::move(engine)});
  }
  const StateVector nu = reference_state(inst.front().circuit);

  SearchOutcome out;
  out.trials = cfg.trials;
  {
    const RVector& ev = inst.front().eig.values;
    const double tol = zero_tolerance(std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1])));
    if (ev.size() < 2 || ev[1] - ev[0] <= tol) throw NumericalError("degenerate ground space");
    out.gap = ev[1] - ev[0];
  }
  out.p_s_lower = 1.0;
  for (std::size_t x = 0; x < N; ++x) {
    const OverlapReport r = overlap_probabilities({inst[x].zeta, {}}, nu, index_to_bits(x, cfg.n));
    out.p_nu_zeta = r.p_nu_zeta;
    out.p_s_analytic += r.p_s_lower / static_cast<double>(N);
    out.p_s_lower = std::min(out.p_s_lower, r.p_s_lower);
  }

  const double window = 2.0 * kPi / out.gap;
  long successes = 0;
  long queries = 0;
  double rand_time = 0.0;
  std::string failure;
#pragma omp parallel for schedule(static) reduction(+ : successes, queries, rand_time)
  for (long trial = 0; trial < cfg.trials; ++trial) {
    try {
      Rng rng(derive_seed(cfg.seed, kTrialStream, static_cast<std::uint64_t>(trial)));
      const std::size_t x = rng.below(N);
      const Instance& in = inst[x];
      std::size_t guess = N;
      if (cfg.mode == MeasurementMode::ExactProjective) {
        const ProjectionOutcome po = project_onto(nu, in.zeta.amplitudes(), rng);
        if (po.projected) guess = measure_clock_then_system(po.post_state, rng);
      } else {
        CVector psi = nu.amplitudes();
        for (int r = 0; r < cfg.reps; ++r) {
          const double t = window * rng.uniform();
          rand_time += t;
          if (gadget) {
            const int steps = std::max(1, static_cast<int>(std::ceil(t / cfg.max_tau)));
            const TrotterResult tr = in.engine->simulate(psi, t, steps, 2, rng);
            queries += tr.oracle_count;
            psi = tr.state;
          } else {
            psi = evolve(in.eig, psi, t);
          }
        }
        guess = measure_clock_then_system(StateVector::normalized(psi, nu.factor_shape()), rng);
      }
      if (guess == x) ++successes;
    } catch (const std::exception& e) {
#pragma omp critical(clocklab_search_failure)
      if (failure.empty()) failure = e.what();
    }
  }
  if (!failure.empty()) throw NumericalError("search trial failed: " + failure);

  out.success_count = successes;
  out.empirical_p_s = static_cast<double>(successes) / static_cast<double>(cfg.trials);
  out.oracle_count = queries;
  out.randomization_time = rand_time;
  if (cfg.mode != MeasurementMode::ExactProjective) {
    out.measured_T = static_cast<double>(cfg.trials) * cfg.c_constant / out.gap;
  }
  return out;
}

AssumptionProfile assumption_profile(SearchFamily f, const std::vector<int>& n_values) {
  if (n_values.empty()) throw std::invalid_argument("n range must be nonempty");
  AssumptionProfile prof;
  prof.theta_one = true;
  for (const int n : n_values) {
    AssumptionRow row{n, 1.0, 1.0};
    const std::size_t N = std::size_t{1} << n;
    for (std::size_t x = 0; x < N; ++x) {
      const std::string X = index_to_bits(x, n);
      const Circuit c = family_circuit(f, n, X);
      const OverlapReport r = overlap_probabilities(build_history_state(c, 1.0), reference_state(c), X);
      row.min_p_nu_zeta = std::min(row.min_p_nu_zeta, r.p_nu_zeta);
      row.min_p_X_zeta = std::min(row.min_p_X_zeta, r.p_X_zeta);
    }
    if (row.min_p_nu_zeta <= 0.15 || row.min_p_X_zeta <= 0.15) prof.theta_one = false;
    prof.rows.push_back(row);
  }
  return prof;
}

}  // namespace clocklab
