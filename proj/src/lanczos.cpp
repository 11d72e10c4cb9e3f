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

#include "clocklab/lanczos.hpp"

#include <algorithm>
#include <string>

#include <Eigen/Eigenvalues>

#include "clocklab/rng.hpp"

namespace clocklab {
namespace {

CVector random_vector(Eigen::Index n, Rng& rng) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v[i] = Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
  }
  return v;
}

// Orthonormalizes the columns of `block` against `basis` and each other
// (classical Gram-Schmidt, applied twice). Columns that collapse are replaced
// by fresh random directions, and dropped when those collapse too (the basis
// then spans an invariant subspace of everything reachable).
CMatrix orthonormalize(CMatrix block, const CMatrix& basis, Rng& rng, const LanczosOptions& opts) {
  const Eigen::Index n = block.rows();
  for (Eigen::Index j = 0; j < block.cols();) {
    bool kept = false;
    for (int attempt = 0; attempt < 10; ++attempt) {
      CVector v = block.col(j);
      const double before = v.norm();
      for (int pass = 0; pass < 2; ++pass) {
        if (basis.cols() > 0) v -= basis * (basis.adjoint() * v);
        if (j > 0) v -= block.leftCols(j) * (block.leftCols(j).adjoint() * v);
      }
      const double after = v.norm();
      if (after > 1e-8 * std::max(before, 1e-300) && after > 1e-280) {
        block.col(j) = v / after;
        kept = true;
        break;
      }
      block.col(j) = opts.filter ? CVector(opts.filter(random_vector(n, rng))) : random_vector(n, rng);
    }
    if (kept) {
      ++j;
    } else {
      const Eigen::Index last = block.cols() - 1;
      if (j < last) block.col(j) = block.col(last);
      block.conservativeResize(Eigen::NoChange, last);
    }
  }
  return block;
}

}  // namespace

LanczosResult lowest_eigenpairs(const BlockApply& apply, std::size_t dim, double norm,
                                const LanczosOptions& options, const CMatrix& start) {
  const auto n = static_cast<Eigen::Index>(dim);
  if (n == 0) throw std::invalid_argument("empty operator");
  const Eigen::Index k = std::min<Eigen::Index>(options.count, n);
  Eigen::Index b = options.block_size > 0 ? options.block_size : std::min<Eigen::Index>(k, 8);
  b = std::max<Eigen::Index>(1, std::min(b, n));
  Eigen::Index m = options.max_basis > 0 ? options.max_basis : std::max(3 * k, k + 6 * b);
  const double scale = std::max(1.0, norm);
  const double tol = options.tol * scale;
  Rng rng(options.seed);
  LanczosResult result;

  // A small space is cheaper to project completely.
  if (start.cols() == 0 && n <= std::max<Eigen::Index>(2 * m, 64)) {
    const CMatrix h = apply(CMatrix::Identity(n, n));
    result.matvecs = n;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
    if (es.info() != Eigen::Success) throw NumericalError("projected eigensolver failed");
    result.values = es.eigenvalues().head(k);
    result.vectors = es.eigenvectors().leftCols(k);
    result.max_residual = (h * result.vectors - result.vectors * result.values.asDiagonal()).colwise().norm().maxCoeff();
    return result;
  }
  m = std::min(m, n);

  CMatrix q(n, b);
  for (Eigen::Index j = 0; j < b; ++j) {
    q.col(j) = j < start.cols() ? CVector(start.col(j)) : random_vector(n, rng);
  }
  CMatrix v(n, 0);
  CMatrix w(n, 0);
  q = orthonormalize(std::move(q), v, rng, options);

  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    // extend the Krylov basis one block at a time
    while (q.cols() > 0 && v.cols() + q.cols() <= m) {
      const CMatrix hq = apply(q);
      result.matvecs += q.cols();
      const Eigen::Index old = v.cols();
      v.conservativeResize(n, old + q.cols());
      w.conservativeResize(n, old + q.cols());
      v.rightCols(q.cols()) = q;
      w.rightCols(q.cols()) = hq;
      if (v.cols() + b > m) break;
      q = orthonormalize(hq, v, rng, options);
    }

    // Rayleigh-Ritz on the whole basis
    CMatrix t = v.adjoint() * w;
    t = 0.5 * (t + t.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(t);
    if (es.info() != Eigen::Success) throw NumericalError("projected eigensolver failed");
    const RVector& theta = es.eigenvalues();
    const CMatrix& y = es.eigenvectors();
    Eigen::Index j0 = 0;
    while (j0 < theta.size() && theta[j0] <= options.cutoff) ++j0;
    const Eigen::Index kw = std::min(k, theta.size() - j0);
    if (kw < 1) throw NumericalError("Lanczos basis holds only spurious Ritz values");
    const CMatrix x = v * y.middleCols(j0, kw);
    const CMatrix hx = w * y.middleCols(j0, kw);
    const CMatrix res = hx - x * theta.segment(j0, kw).asDiagonal();
    const RVector rn = res.colwise().norm();
    result.max_residual = rn.maxCoeff();
    result.restarts = restart;
    const bool exhausted = q.cols() == 0;
    if (result.max_residual <= tol && (kw == k || exhausted)) {
      result.values = theta.segment(j0, kw);
      result.vectors = x;
      return result;
    }

    // thick restart: keep the best Ritz vectors, continue from residuals of
    // the unconverged ones
    const Eigen::Index avail = v.cols() - j0;
    const Eigen::Index keep = std::min<Eigen::Index>(avail - b, std::max<Eigen::Index>(kw + b, m / 2));
    CMatrix fresh(n, b);
    Eigen::Index filled = 0;
    for (Eigen::Index j = 0; j < kw && filled < b; ++j) {
      if (rn[j] > tol) fresh.col(filled++) = res.col(j);
    }
    for (Eigen::Index j = j0 + kw; filled < b; ++j) {
      if (j < v.cols()) {
        fresh.col(filled++) = w * y.col(j) - theta[j] * (v * y.col(j));
      } else {
        fresh.col(filled++) = options.filter ? CVector(options.filter(random_vector(n, rng))) : random_vector(n, rng);
      }
    }
    if (exhausted) throw NumericalError("Lanczos basis exhausted the space");
    const CMatrix vk = v * y.middleCols(j0, std::max<Eigen::Index>(keep, 1));
    const CMatrix wk = w * y.middleCols(j0, std::max<Eigen::Index>(keep, 1));
    v = vk;
    w = wk;
    q = orthonormalize(std::move(fresh), v, rng, options);
  }
  throw NumericalError("eigensolver did not converge after " + std::to_string(options.max_restarts) +
                       " restarts (residual " + std::to_string(result.max_residual) + ")");
}

}  // namespace clocklab
