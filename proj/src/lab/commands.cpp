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
#include <map>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "clocklab/amplification.hpp"
#include "clocklab/kernels.hpp"
#include "clocklab/lab.hpp"

namespace clocklab::lab {
namespace {

json to_json(const RVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json circuit_summary(const Circuit& c) {
  return {{"n", c.n},
          {"L", c.L()},
          {"control_ancilla", c.has_control_ancilla},
          {"oracle", c.oracle ? json(c.oracle->bits) : json(nullptr)},
          {"text", serialize_circuit(c)}};
}

ClockTopology topology_from_name(const std::string& name) {
  if (name == "open") return ClockTopology::Open;
  if (name == "periodic") return ClockTopology::Periodic;
  throw std::invalid_argument("unknown topology '" + name + "'");
}

CMatrix oracle_matrix(const Circuit& c) {
  for (const Gate& g : c.gates) {
    if (is_oracle_kind(g.kind)) return gate_unitary(g, c, 1.0);
  }
  throw std::invalid_argument("circuit has no oracle gate");
}

CVector random_state(Eigen::Index dim, std::uint64_t seed) {
  Rng rng(seed);
  CVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
  return v / v.norm();
}

double operator_norm(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

json fit_json(const ScalingFit& f) {
  return {{"slope", f.slope}, {"intercept", f.intercept}, {"r_squared", f.r_squared}};
}

json fit_groups(const std::vector<GapScanRow>& rows) {
  std::map<std::pair<std::string, int>, std::vector<std::pair<double, double>>> groups;
  for (const auto& r : rows) groups[{r.family, r.n}].emplace_back(r.L, r.delta);
  json fits = json::array();
  for (const auto& [key, pts] : groups) {
    json f = fit_json(fit_gap_scaling(pts));
    f["family"] = key.first;
    f["n"] = key.second;
    f["points"] = pts.size();
    fits.push_back(f);
  }
  return fits;
}

json row_json(const GapScanRow& r) {
  return {{"family", r.family},
          {"n", r.n},
          {"L", r.L},
          {"delta", r.delta},
          {"delta_tilde", r.delta_tilde ? json(*r.delta_tilde) : json(nullptr)},
          {"ratio", r.ratio ? json(*r.ratio) : json(nullptr)}};
}

}  // namespace

json cmd_spectrum(const SpectrumOptions& opt) {
  const Circuit c = load_circuit(opt.source);
  const ClockTopology topo = topology_from_name(opt.topology);
  std::optional<ClockHamiltonian> h;
  if (opt.construction == "standard") {
    h.emplace(build_standard(c, opt.g, topo));
  } else if (opt.construction == "feynman") {
    h.emplace(build_feynman(c, opt.g, topo));
  } else if (opt.construction == "modified") {
    std::vector<double> energies;
    for (int l = 0; l <= c.L(); ++l) energies.push_back(static_cast<double>(l) / c.L());
    h.emplace(build_modified(c, std::vector<double>(static_cast<std::size_t>(c.L()), 1.0), energies, opt.g));
  } else {
    throw std::invalid_argument("unknown construction '" + opt.construction + "'");
  }
  if (opt.count < 1) throw std::invalid_argument("eigenvalue count must be positive");
  EigenOptions eo;
  eo.solver = opt.solver;
  eo.count = opt.count;
  eo.want_vectors = true;
  const SpectralResult sr = eigendecompose(*h, eo);
  const GapReport gr = spectral_gap(sr);
  const CVector v0 = sr.eigenvectors.col(0);
  CVector hv(v0.size());
  h->apply(as_span(v0), as_span(hv));
  const double lambda0_residual = (hv - sr.eigenvalues[0] * v0).norm();
  const auto shown = std::min<Eigen::Index>(opt.count, sr.eigenvalues.size());
  json payload{{"circuit", circuit_summary(c)},
               {"construction", opt.construction},
               {"topology", opt.topology},
               {"g", opt.g},
               {"dim", h->dim()},
               {"complete", sr.complete},
               {"eigenvalues", to_json(sr.eigenvalues.head(shown))},
               {"lambda0", gr.lambda0},
               {"lambda0_residual", lambda0_residual},
               {"gap", gr.gap},
               {"ground_multiplicity", gr.ground_multiplicity},
               {"residual", sr.residual},
               {"L", c.L()},
               {"n", c.n}};
  if (opt.source.path) payload["source"] = *opt.source.path;
  return finalize_record("spectrum", std::move(payload));
}

GapScanResult cmd_gap_scan(const GapScanOptions& opt) {
  if (opt.L_values.size() < 3) throw std::invalid_argument("gap scan needs at least 3 L values");
  if (opt.n_values.empty()) throw std::invalid_argument("gap scan needs at least one n");
  EigenOptions eo;
  eo.solver = opt.solver;
  eo.count = 4;
  GapScanResult res;
  for (const int n : opt.n_values) {
    for (const int L : opt.L_values) {
      const Circuit c = make_family_circuit(opt.family, n, L, opt.X);
      GapScanRow row{opt.family, n, L, 0.0, std::nullopt, std::nullopt};
      if (opt.amplify) {
        const AmplifiedGapReport ar = verify_amplified_gap(c, eo);
        row.delta = ar.delta;
        row.delta_tilde = ar.delta_tilde;
        row.ratio = ar.ratio;
      } else {
        row.delta = spectral_gap(eigendecompose(build_standard(c, 1.0), eo)).gap;
      }
      res.rows.push_back(row);
    }
  }
  json rows = json::array();
  for (const auto& r : res.rows) rows.push_back(row_json(r));
  res.record = finalize_record("gap-scan", {{"family", opt.family},
                                            {"amplify", opt.amplify},
                                            {"rows", rows},
                                            {"fits", fit_groups(res.rows)}});
  return res;
}

json cmd_amplify(const CircuitSource& src, const EigenOptions& eig) {
  const Circuit c = load_circuit(src);
  const ClockHamiltonian h = build_standard(c, 1.0);
  const CVector zeta = build_history_state(c, 1.0).state.amplitudes();
  const FrustrationFreeCertificate cert = check_frustration_free(h, zeta);
  const AmplifiedHamiltonian amp = amplify(h);
  const CVector pivot = pivot_embed(zeta, amp.matrix.ancilla_dim());
  CVector g_pivot(pivot.size());
  amp.matrix.apply(as_span(pivot), as_span(g_pivot));
  const AmplifiedGapReport gap = verify_amplified_gap(c, eig);

  json terms = json::array();
  for (const auto& t : cert.per_term) {
    terms.push_back({{"term", t.label}, {"min_eigenvalue", t.min_eigenvalue}, {"residual", t.residual_norm}});
  }
  json payload{{"circuit", circuit_summary(c)},
               {"frustration_free", cert.is_ff},
               {"terms", terms},
               {"ancilla_dim", amp.matrix.ancilla_dim()},
               {"dim", amp.matrix.dim()},
               {"annihilation_residual", g_pivot.norm()},
               {"delta", gap.delta},
               {"delta_tilde", gap.delta_tilde},
               {"sqrt_delta", std::sqrt(gap.delta)},
               {"ratio", gap.ratio}};
  if (c.oracle) {
    try {
      payload["P_tilde_norm"] = operator_norm(amplified_oracle_split(c).P_tilde);
    } catch (const CapacityError&) {
      payload["P_tilde_norm"] = nullptr;
    }
  }
  return finalize_record("amplify", std::move(payload));
}

json cmd_search(const SearchConfig& cfg) {
  const SearchOutcome o = run_generalized_search(cfg);
  const double p = o.p_s_analytic;
  const double sigma = std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(o.trials));
  json payload{{"config",
                {{"n", cfg.n},
                 {"family", family_name(cfg.family)},
                 {"mode", mode_name(cfg.mode)},
                 {"trials", cfg.trials},
                 {"seed", cfg.seed},
                 {"c_constant", cfg.c_constant},
                 {"reps", cfg.reps}}},
               {"success_count", o.success_count},
               {"trials", o.trials},
               {"empirical_p_s", o.empirical_p_s},
               {"p_nu_zeta", o.p_nu_zeta},
               {"p_s_analytic", o.p_s_analytic},
               {"p_s_lower", o.p_s_lower},
               {"sigma_binomial", sigma},
               {"gap", o.gap},
               {"measured_T", o.measured_T},
               {"randomization_time", o.randomization_time}};
  payload["oracle_count"] = cfg.mode == MeasurementMode::GadgetRandomization ? json(o.oracle_count) : json(nullptr);
  return finalize_record("search", std::move(payload));
}

GadgetCheckResult cmd_gadget_check(const GadgetCheckOptions& opt) {
  const Circuit c = load_circuit(opt.source);
  if (!c.oracle) throw std::invalid_argument("gadget-check needs a circuit with an oracle");
  const CMatrix P = opt.amplified ? amplified_oracle_split(c).P_tilde : oracle_split(c).P_c;
  const FractionalOracle frac(c, P);
  const CMatrix O = oracle_matrix(c);
  const auto sys = static_cast<Eigen::Index>(c.system_dim());
  const Eigen::Index K = P.rows();
  if (sys * K > static_cast<Eigen::Index>(kDenseLimit)) {
    throw CapacityError("gadget check of dimension " + std::to_string(sys * K) + " exceeds the dense limit");
  }
  // dense reference for exp(-i s O (x) P)
  CMatrix M(sys * K, sys * K);
  for (Eigen::Index a = 0; a < sys; ++a) {
    for (Eigen::Index b = 0; b < sys; ++b) M.block(a * K, b * K, K, K) = O(a, b) * P;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> mes(M);
  const CVector psi = random_state(sys * K, derive_seed(opt.seed, 1));

  json fids = json::array();
  QueryCounter fid_counter;
  Rng rng(derive_seed(opt.seed, 2));
  double min_fidelity = 1.0;
  for (const double s : opt.s_values) {
    CVector coeff = mes.eigenvectors().adjoint() * psi;
    for (Eigen::Index i = 0; i < coeff.size(); ++i) coeff[i] *= std::polar(1.0, -s * mes.eigenvalues()[i]);
    const CVector ref = mes.eigenvectors() * coeff;
    const long before = fid_counter.count;
    GadgetResult g;
    do {
      g = frac.apply(psi, s, rng, fid_counter);
    } while (!g.success);
    const double fidelity = std::norm(ref.dot(g.post_state));
    min_fidelity = std::min(min_fidelity, fidelity);
    const double n_star = gadget_normalization(s, frac.diagonalization().lambda);
    fids.push_back({{"s", s},
                    {"fidelity", fidelity},
                    {"success_probability", g.success_probability},
                    {"expected_success_probability", 1.0 / (n_star * n_star)},
                    {"attempts", fid_counter.count - before}});
  }
  const CMatrix recon = frac.diagonalization().V.adjoint() * frac.diagonalization().lambda.asDiagonal() *
                        frac.diagonalization().V;
  json payload{{"circuit", circuit_summary(c)},
               {"amplified", opt.amplified},
               {"coupling_dim", K},
               {"coupling_norm", operator_norm(P)},
               {"reassembly_error", (recon - P).norm()},
               {"lambda", to_json(frac.diagonalization().lambda)},
               {"fidelity", fids},
               {"min_fidelity", min_fidelity}};

  GadgetCheckResult res;
  res.ledger.epsilon = opt.epsilon;
  res.ledger.order = opt.order;
  if (!opt.amplified) {
    const TrotterEngine engine(c);
    json trotter = json::object();
    for (const int order : {1, 2}) {
      json runs = json::array();
      double prev = 0.0;
      for (std::size_t i = 0; i < opt.steps.size(); ++i) {
        Rng trng(derive_seed(opt.seed, 3 + static_cast<std::uint64_t>(order), i));
        const TrotterResult tr = engine.simulate(engine.default_initial(), opt.t, opt.steps[i], order, trng);
        json run{{"steps", opt.steps[i]},
                 {"error", tr.error},
                 {"oracle_count", tr.oracle_count},
                 {"failures", tr.failures}};
        run["ratio"] = i > 0 && tr.error > 0.0 ? json(prev / tr.error) : json(nullptr);
        prev = tr.error;
        runs.push_back(run);
      }
      trotter["order" + std::to_string(order)] = runs;
    }
    payload["trotter"] = {{"t", opt.t}, {"runs", trotter}};

    res.ledger = sweep_ledger(engine, opt.ledger_times, opt.epsilon, opt.order, opt.seed);
    json entries = json::array();
    for (const auto& e : res.ledger.entries) {
      entries.push_back({{"t", e.t}, {"oracle_count", e.oracle_count}, {"steps", e.steps}, {"error", e.error}});
    }
    payload["ledger"] = {{"epsilon", opt.epsilon},
                         {"order", opt.order},
                         {"entries", entries},
                         {"gamma", res.ledger.entries.size() >= 3 ? json(res.ledger.fitted_gamma) : json(nullptr)}};
  }
  res.record = finalize_record("gadget-check", std::move(payload));
  return res;
}

json cmd_theorem_report(const std::vector<GapScanRow>& scan, const QueryLedger& ledger) {
  const double gamma = fit_query_exponent(ledger);
  json payload = to_json(theorem_report(scan, gamma));
  json entries = json::array();
  for (const auto& e : ledger.entries) {
    entries.push_back({{"t", e.t}, {"oracle_count", e.oracle_count}, {"steps", e.steps}, {"error", e.error}});
  }
  payload["ledger"] = entries;
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : scan) pts.emplace_back(r.L, r.delta);
  if (pts.size() >= 3) payload["gap_fits"] = fit_groups(scan);
  return finalize_record("theorem-report", std::move(payload));
}

ParseResult cmd_parse(const std::string& text) {
  const Circuit c = parse_circuit(text);
  ParseResult r;
  r.canonical = serialize_circuit(c);
  const Circuit again = parse_circuit(r.canonical);
  r.stable = again == c && serialize_circuit(again) == r.canonical;
  return r;
}

json cmd_fit(const std::string& text) {
  std::vector<GapScanRow> rows;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    const json in = json::parse(text);
    auto take = [&rows](const json& r) {
      GapScanRow row;
      row.family = r.value("family", std::string("unknown"));
      row.n = r.value("n", 0);
      row.L = r.at("L").get<int>();
      row.delta = r.contains("delta") ? r.at("delta").get<double>() : r.at("gap").get<double>();
      rows.push_back(row);
    };
    if (in.is_object() && in.contains("rows")) {
      for (const auto& r : in.at("rows")) take(r);
    } else if (in.is_array()) {
      for (const auto& rec : in) {
        json r = rec;
        if (rec.contains("circuit") && !rec.contains("family")) r["family"] = "circuit";
        take(r);
      }
    } else {
      throw ParseError(0, "fit input must be a gap-scan CSV, a record with rows, or an array of records");
    }
  } else {
    std::istringstream is(text);
    rows = read_gap_scan_csv(is);
  }
  json points = json::array();
  for (const auto& r : rows) points.push_back({{"family", r.family}, {"n", r.n}, {"L", r.L}, {"delta", r.delta}});
  return finalize_record("fit", {{"points", points}, {"fits", fit_groups(rows)}});
}

}  // namespace clocklab::lab
