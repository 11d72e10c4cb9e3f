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

#include "clocklab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "clocklab/kernels.hpp"
#include "clocklab/lanczos.hpp"
#include "clocklab/rng.hpp"

namespace clocklab {
namespace {

bool use_dense(const HermitianOperator& h, Solver solver) {
  if (solver == Solver::Dense) {
    if (h.dim() > kDenseLimit) {
      throw CapacityError("dense solver limited to dimension " + std::to_string(kDenseLimit));
    }
    return true;
  }
  if (solver == Solver::Iterative) return false;
  return h.dim() <= kDenseLimit;
}

BlockApply block_apply(const HermitianOperator& h) {
  return [&h](const CMatrix& in) { return h.apply_block(in); };
}

// Probes <x, H y> = <H x, y> on random vectors.
void probe_hermitian(const HermitianOperator& h, std::uint64_t seed) {
  Rng rng(seed);
  const auto n = static_cast<Eigen::Index>(h.dim());
  CVector x(n), y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x[i] = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
    y[i] = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
  }
  const Complex a = x.dot(h * y);
  const Complex b = (h * x).dot(y);
  if (std::abs(a - b) > 1e-10 * std::max(1.0, h.norm_bound()) * x.norm() * y.norm()) {
    throw NumericalError("non-Hermitian input (probe mismatch " + std::to_string(std::abs(a - b)) + ")");
  }
}

}  // namespace

SpectralResult eigendecompose(const HermitianOperator& h, const EigenOptions& options) {
  check_dimension(h.dim(), "operator");
  SpectralResult sr;
  if (use_dense(h, options.solver)) {
    const CMatrix m = h.to_dense();
    require_hermitian(m);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
    sr.eigenvalues = es.eigenvalues();
    sr.norm = std::max(std::abs(sr.eigenvalues[0]), std::abs(sr.eigenvalues[sr.eigenvalues.size() - 1]));
    sr.residual = (m * es.eigenvectors() - es.eigenvectors() * sr.eigenvalues.asDiagonal()).colwise().norm().maxCoeff();
    if (options.want_vectors) sr.eigenvectors = es.eigenvectors();
    sr.complete = true;
  } else {
    probe_hermitian(h, options.seed);
    LanczosOptions lo;
    lo.count = options.count;
    lo.block_size = options.block_size;
    lo.seed = options.seed;
    const LanczosResult lr = lowest_eigenpairs(block_apply(h), h.dim(), h.norm_bound(), lo);
    sr.eigenvalues = lr.values;
    sr.residual = lr.max_residual;
    sr.norm = h.norm_bound();
    if (options.want_vectors) sr.eigenvectors = lr.vectors;
    sr.complete = static_cast<std::size_t>(lr.values.size()) == h.dim();
  }
  if (!(sr.residual <= 1e-8 * std::max(1.0, sr.norm))) {
    throw NumericalError("eigen residual " + std::to_string(sr.residual) + " above tolerance");
  }
  return sr;
}

double lowest_eigenvalue(const HermitianOperator& h) {
  EigenOptions o;
  o.count = 4;
  return eigendecompose(h, o).eigenvalues[0];
}

SpectralResult analytic_feynman_spectrum(int L, int n, ClockTopology topology) {
  if (L < 1) throw std::invalid_argument("L must be at least 1");
  if (n < 0 || n > 30) throw std::invalid_argument("qubit count out of range");
  const double period = topology == ClockTopology::Periodic ? 2.0 : 1.0;
  const std::size_t mult = std::size_t{1} << n;
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(L + 1) * mult);
  for (int m = 0; m <= L; ++m) {
    const double v = 1.0 - std::cos(period * kPi * m / (L + 1));
    values.insert(values.end(), mult, v);
  }
  std::sort(values.begin(), values.end());
  SpectralResult sr;
  sr.eigenvalues = Eigen::Map<RVector>(values.data(), static_cast<Eigen::Index>(values.size()));
  sr.norm = sr.eigenvalues.maxCoeff();
  return sr;
}

GapReport spectral_gap(const SpectralResult& sr) {
  const auto& ev = sr.eigenvalues;
  if (ev.size() < 2) throw std::invalid_argument("gap needs at least two eigenvalues");
  const double norm = std::max({sr.norm, std::abs(ev[0]), std::abs(ev[ev.size() - 1])});
  const double tol = zero_tolerance(norm);
  GapReport g;
  g.lambda0 = ev[0];
  g.ground_multiplicity = 1;
  Eigen::Index i = 1;
  while (i < ev.size() && ev[i] <= g.lambda0 + tol) {
    ++i;
    ++g.ground_multiplicity;
  }
  if (i == ev.size()) {
    g.degenerate = true;
    g.lambda1 = g.lambda0;
    g.gap = 0.0;
  } else {
    g.lambda1 = ev[i];
    g.gap = g.lambda1 - g.lambda0;
  }
  g.gap_to_state = g.gap;
  return g;
}

double gap_to_state(const HermitianOperator& h, const CVector& s_in, const EigenOptions& options) {
  if (static_cast<std::size_t>(s_in.size()) != h.dim()) throw std::invalid_argument("state does not match operator");
  const double sn = s_in.norm();
  if (!(sn > 0.0)) throw std::invalid_argument("designated state is zero");
  const CVector s = s_in / sn;
  const CVector hs = h * s;
  const double lambda_s = s.dot(hs).real();
  const double norm = h.norm_bound();
  const double residual = (hs - lambda_s * s).norm();
  if (residual > 1e-8 * std::max(1.0, norm)) {
    throw NumericalError("designated state is not an eigenvector (residual " + std::to_string(residual) + ")");
  }
  double best = std::numeric_limits<double>::infinity();

  if (use_dense(h, options.solver)) {
    const CMatrix m = h.to_dense();
    require_hermitian(m);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
    const RVector& ev = es.eigenvalues();
    const double tol = zero_tolerance(std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1])));
    std::vector<Eigen::Index> cluster;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (std::abs(ev[i] - lambda_s) <= tol) cluster.push_back(i);
    }
    CMatrix basis(m.rows(), static_cast<Eigen::Index>(cluster.size()));
    for (std::size_t j = 0; j < cluster.size(); ++j) basis.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(cluster[j]);
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      const double overlap = (basis.adjoint() * es.eigenvectors().col(i)).squaredNorm();
      if (overlap < 0.5) best = std::min(best, std::abs(ev[i] - lambda_s));
    }
    return best;
  }

  // Folded operator (H - lambda_s)^2 started inside range(H - lambda_s), so
  // the lambda_s eigenspace never enters the Krylov space.
  probe_hermitian(h, options.seed);
  const double fnorm = (norm + std::abs(lambda_s)) * (norm + std::abs(lambda_s));
  auto shifted = [&h, lambda_s](const CMatrix& in) { return CMatrix(h.apply_block(in) - lambda_s * in); };
  auto folded = [&shifted](const CMatrix& in) { return shifted(shifted(in)); };
  // Only the lowest folded value is needed; the Ritz residual enters it
  // squared, so a loose tolerance still gives the gap to ~1e-12.
  LanczosOptions lo;
  lo.count = 2;
  lo.block_size = options.block_size > 0 ? options.block_size : 2;
  lo.max_basis = 160;
  lo.seed = options.seed;
  lo.tol = 1e-9;
  lo.cutoff = 1e-12 * std::max(1.0, fnorm);
  lo.filter = shifted;
  Rng rng(derive_seed(options.seed, 7));
  CMatrix start(s.size(), lo.block_size);
  for (Eigen::Index j = 0; j < start.cols(); ++j) {
    for (Eigen::Index i = 0; i < start.rows(); ++i) start(i, j) = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
  }
  start = shifted(start);
  const LanczosResult lr = lowest_eigenpairs(folded, h.dim(), fnorm, lo, start);
  for (Eigen::Index j = 0; j < lr.values.size(); ++j) {
    if (std::norm(s.dot(lr.vectors.col(j))) >= 0.5) continue;
    best = std::min(best, std::sqrt(lr.values[j]));
  }
  return best;
}

ScalingFit fit_gap_scaling(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw std::invalid_argument("scaling fit needs at least 3 points");
  double sx = 0.0, sy = 0.0;
  for (const auto& [L, d] : points) {
    if (!(L > 0.0)) throw std::invalid_argument("scaling fit needs positive L");
    if (!(d > 0.0)) throw std::invalid_argument("scaling fit needs positive gaps");
    sx += std::log(L);
    sy += std::log(d);
  }
  const double n = static_cast<double>(points.size());
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [L, d] : points) {
    const double x = std::log(L) - mx;
    const double y = std::log(d) - my;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("scaling fit needs at least two distinct L values");
  ScalingFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (const auto& [L, d] : points) {
    const double r = std::log(d) - (fit.intercept + fit.slope * std::log(L));
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  fit.points = points;
  return fit;
}

PathGap gap_along_path(const Circuit& c, const std::vector<double>& g_grid, const EigenOptions& options) {
  if (g_grid.empty()) throw std::invalid_argument("g grid is empty");
  PathGap pg;
  pg.gap_min = std::numeric_limits<double>::infinity();
  for (double g : g_grid) {
    if (!(g >= 0.0 && g <= 1.0)) throw std::invalid_argument("g grid must lie in [0, 1]");
    const GapReport r = spectral_gap(eigendecompose(build_standard(c, g), options));
    pg.points.emplace_back(g, r.gap);
    if (r.gap < pg.gap_min) {
      pg.gap_min = r.gap;
      pg.g_min = g;
    }
  }
  return pg;
}

}  // namespace clocklab
