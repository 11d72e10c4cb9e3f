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

#include "clocklab/clock_hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <ostream>
#include <set>

#include "clocklab/kernels.hpp"
#include "clocklab/spectral.hpp"

namespace clocklab {

struct ClockHamiltonian::Shared {
  std::once_flag once;
  CMatrix dense;
};

struct ClockHamiltonian::Scratch {
  explicit Scratch(std::size_t s) : xa(s), xb(s), ya(s), yb(s) {}
  std::vector<Complex> xa, xb, ya, yb;
};

namespace {

using CSpan = std::span<const Complex>;
using MSpan = std::span<Complex>;

double term_norm(const Term& t) {
  const double base = t.tag == TermTag::ClockPair ? 0.5 : 1.0;
  return std::abs(t.weight) * base + std::abs(t.offset);
}

}  // namespace

std::string term_label(const Term& t) {
  std::string name;
  switch (t.tag) {
    case TermTag::Feynman: name = "FEYNMAN"; break;
    case TermTag::Input: name = "INPUT"; break;
    case TermTag::Pointer: name = "POINTER"; break;
    case TermTag::ClockPair: name = "CLOCKPAIR"; break;
    case TermTag::OracleHop: name = "ORACLEHOP"; break;
    case TermTag::Identity: return "IDENTITY";
  }
  return name + "(" + std::to_string(t.index) + ")";
}

ClockHamiltonian::ClockHamiltonian(Circuit c, double g, TermList terms, std::size_t ancilla_dim,
                                   ClockTopology topology)
    : circuit_(std::move(c)),
      g_(g),
      terms_(std::move(terms)),
      anc_(ancilla_dim),
      topology_(topology),
      sys_(0),
      clock_(0),
      shared_(std::make_shared<Shared>()) {
  validate(circuit_);
  if (!(g_ >= 0.0 && g_ <= 1.0)) throw std::invalid_argument("interpolation parameter g must lie in [0, 1]");
  if (anc_ < 1) throw std::invalid_argument("ancilla dimension must be positive");
  sys_ = circuit_.system_dim();
  clock_ = circuit_.clock_dim();
  check_dimension(sys_ * clock_ * anc_, "clock Hamiltonian");
  gates_.reserve(circuit_.gates.size());
  for (const Gate& gate : circuit_.gates) gates_.emplace_back(gate, circuit_, g_);
  for (const Term& t : terms_) check_term(t);

  // tasks: all input terms share one task; everything else is its own task
  std::vector<std::vector<std::size_t>> tasks;
  std::vector<std::set<int>> supports;
  std::size_t input_task = static_cast<std::size_t>(-1);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    const auto sup = term_support(t);
    std::set<int> s(sup.begin(), sup.end());
    if (t.offset != 0.0 || t.tag == TermTag::Identity) {
      for (int l = 0; l < static_cast<int>(clock_); ++l) s.insert(l);
    }
    if (t.tag == TermTag::Input && t.offset == 0.0) {
      if (input_task == static_cast<std::size_t>(-1)) {
        input_task = tasks.size();
        tasks.emplace_back();
        supports.push_back(s);
      }
      tasks[input_task].push_back(i);
      continue;
    }
    tasks.push_back({i});
    supports.push_back(std::move(s));
  }
  std::vector<std::set<int>> used;
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    std::size_t color = 0;
    for (; color < colors_.size(); ++color) {
      bool clash = false;
      for (int l : supports[k]) {
        if (used[color].count(l)) {
          clash = true;
          break;
        }
      }
      if (!clash) break;
    }
    if (color == colors_.size()) {
      colors_.emplace_back();
      used.emplace_back();
    }
    colors_[color].push_back(tasks[k]);
    used[color].insert(supports[k].begin(), supports[k].end());
  }
}

void ClockHamiltonian::check_term(const Term& t) const {
  const int L = circuit_.L();
  const int max_hop = topology_ == ClockTopology::Periodic ? L + 1 : L;
  switch (t.tag) {
    case TermTag::Feynman:
    case TermTag::ClockPair:
      if (t.index < 1 || t.index > max_hop) throw std::out_of_range("Feynman term index out of range");
      break;
    case TermTag::OracleHop:
      if (t.index < 1 || t.index > L) throw std::out_of_range("oracle term index out of range");
      break;
    case TermTag::Input:
      if (t.index < 0 || t.index >= circuit_.num_qubits()) throw std::out_of_range("input term qubit out of range");
      break;
    case TermTag::Pointer:
      if (t.index < 0 || t.index > L) throw std::out_of_range("pointer term clock level out of range");
      break;
    case TermTag::Identity:
      break;
  }
  if (t.ancilla < 0 || static_cast<std::size_t>(t.ancilla) >= std::max<std::size_t>(anc_, 1) ||
      (t.ancilla > 0 && anc_ < 2)) {
    throw std::out_of_range("term ancilla level out of range");
  }
}

std::vector<std::size_t> ClockHamiltonian::factor_shape() const {
  auto shape = circuit_.register_shape();
  shape.push_back(clock_);
  if (anc_ > 1) shape.push_back(anc_);
  return shape;
}

std::vector<int> ClockHamiltonian::term_support(const Term& t) const {
  const int L = circuit_.L();
  switch (t.tag) {
    case TermTag::Feynman:
    case TermTag::ClockPair:
    case TermTag::OracleHop:
      if (t.index == L + 1) return {0, L};
      return {t.index - 1, t.index};
    case TermTag::Input:
      return {0};
    case TermTag::Pointer:
      return {t.index};
    case TermTag::Identity: {
      std::vector<int> all(clock_);
      for (std::size_t l = 0; l < clock_; ++l) all[l] = static_cast<int>(l);
      return all;
    }
  }
  return {};
}

void ClockHamiltonian::add_term(const Term& t, CSpan in, MSpan out, Scratch& sc) const {
  const std::size_t C = clock_;
  const std::size_t A = anc_;
  const std::size_t S = sys_;
  const int L = circuit_.L();
  auto gather = [&](std::size_t c, std::size_t a, std::vector<Complex>& buf) {
    for (std::size_t s = 0; s < S; ++s) buf[s] = in[(s * C + c) * A + a];
  };
  auto scatter = [&](std::size_t c, std::size_t a, Complex coeff, const std::vector<Complex>& buf) {
    for (std::size_t s = 0; s < S; ++s) out[(s * C + c) * A + a] += coeff * buf[s];
  };
  // U of hop l applied in place
  auto hop = [&](int l, std::vector<Complex>& buf, bool adjoint) {
    MSpan v(buf.data(), S);
    if (l <= L) {
      gates_[static_cast<std::size_t>(l - 1)].apply_inplace(v, adjoint);
      return;
    }
    // wrap: V = (U^L ... U^1)^dagger
    if (!adjoint) {
      for (int k = L; k >= 1; --k) gates_[static_cast<std::size_t>(k - 1)].apply_inplace(v, true);
    } else {
      for (int k = 1; k <= L; ++k) gates_[static_cast<std::size_t>(k - 1)].apply_inplace(v, false);
    }
  };

  if (t.offset != 0.0) serial::axpy(t.offset, in, out);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (src, dst) ancilla levels
  if (t.ancilla == 0) {
    for (std::size_t a = 0; a < A; ++a) pairs.emplace_back(a, a);
  } else {
    const auto k = static_cast<std::size_t>(t.ancilla);
    pairs = {{0, k}, {k, 0}};
  }
  const double w = t.weight;
  if (w == 0.0) return;

  for (const auto& [src, dst] : pairs) {
    switch (t.tag) {
      case TermTag::Feynman:
      case TermTag::ClockPair:
      case TermTag::OracleHop: {
        const std::size_t ca = t.index == L + 1 ? static_cast<std::size_t>(L) : static_cast<std::size_t>(t.index - 1);
        const std::size_t cb = t.index == L + 1 ? 0 : static_cast<std::size_t>(t.index);
        gather(ca, src, sc.xa);
        gather(cb, src, sc.xb);
        if (t.tag == TermTag::ClockPair) {
          scatter(ca, dst, 0.5 * w, sc.xa);
          scatter(cb, dst, 0.5 * w, sc.xb);
          break;
        }
        sc.ya = sc.xa;
        sc.yb = sc.xb;
        hop(t.index, sc.ya, false);  // U x_a
        hop(t.index, sc.yb, true);   // U^dagger x_b
        if (t.tag == TermTag::Feynman) {
          scatter(cb, dst, 0.5 * w, sc.xb);
          scatter(cb, dst, -0.5 * w, sc.ya);
          scatter(ca, dst, 0.5 * w, sc.xa);
          scatter(ca, dst, -0.5 * w, sc.yb);
        } else {
          scatter(cb, dst, -w, sc.ya);
          scatter(ca, dst, -w, sc.yb);
        }
        break;
      }
      case TermTag::Input: {
        gather(0, src, sc.xa);
        const int nq = circuit_.num_qubits();
        const std::size_t m = std::size_t{1} << (nq - 1 - t.index);
        const bool basis = t.index < circuit_.n && circuit_.initial.kind == InitialState::Kind::Basis;
        if (basis) {
          // projector onto the flipped bit
          const bool want = circuit_.initial.bits[static_cast<std::size_t>(t.index)] == '0';
          for (std::size_t s = 0; s < S; ++s) sc.ya[s] = (((s & m) != 0) == want) ? sc.xa[s] : Complex(0.0);
        } else {
          for (std::size_t s = 0; s < S; ++s) {
            if (s & m) continue;
            const Complex d = 0.5 * (sc.xa[s] - sc.xa[s | m]);
            sc.ya[s] = d;
            sc.ya[s | m] = -d;
          }
        }
        scatter(0, dst, w, sc.ya);
        break;
      }
      case TermTag::Pointer:
        gather(static_cast<std::size_t>(t.index), src, sc.xa);
        scatter(static_cast<std::size_t>(t.index), dst, w, sc.xa);
        break;
      case TermTag::Identity:
        for (std::size_t c = 0; c < C; ++c) {
          gather(c, src, sc.xa);
          scatter(c, dst, w, sc.xa);
        }
        break;
    }
  }
}

void ClockHamiltonian::apply_term(const Term& t, CSpan in, MSpan out) const {
  if (in.size() != dim() || out.size() != dim()) throw std::invalid_argument("vector length does not match operator");
  check_term(t);
  Scratch sc(sys_);
  add_term(t, in, out, sc);
}

void ClockHamiltonian::apply_serial(CSpan in, MSpan out) const {
  if (in.size() != dim() || out.size() != dim()) throw std::invalid_argument("vector length does not match operator");
  std::fill(out.begin(), out.end(), Complex(0.0));
  Scratch sc(sys_);
  for (const Term& t : terms_) add_term(t, in, out, sc);
}

void ClockHamiltonian::apply(CSpan in, MSpan out) const {
  if (in.size() != dim() || out.size() != dim()) throw std::invalid_argument("vector length does not match operator");
  std::fill(out.begin(), out.end(), Complex(0.0));
#pragma omp parallel if (dim() >= 4096)
  {
    Scratch sc(sys_);
    for (const auto& color : colors_) {
      const auto ntasks = static_cast<std::ptrdiff_t>(color.size());
#pragma omp for schedule(dynamic)
      for (std::ptrdiff_t k = 0; k < ntasks; ++k) {
        for (std::size_t i : color[static_cast<std::size_t>(k)]) add_term(terms_[i], in, out, sc);
      }
    }
  }
}

double ClockHamiltonian::norm_bound() const {
  double s = 0.0;
  for (const Term& t : terms_) s += term_norm(t);
  return s;
}

CMatrix ClockHamiltonian::hop_unitary(int l) const {
  const int L = circuit_.L();
  if (l < 1 || l > L + 1) throw std::out_of_range("hop index out of range");
  const auto S = static_cast<Eigen::Index>(sys_);
  CMatrix u(S, S);
  std::vector<Complex> buf(sys_);
  Scratch sc(sys_);
  for (Eigen::Index col = 0; col < S; ++col) {
    std::fill(buf.begin(), buf.end(), Complex(0.0));
    buf[static_cast<std::size_t>(col)] = 1.0;
    if (l <= L) {
      gates_[static_cast<std::size_t>(l - 1)].apply_inplace(MSpan(buf.data(), sys_));
    } else {
      for (int k = L; k >= 1; --k) gates_[static_cast<std::size_t>(k - 1)].apply_inplace(MSpan(buf.data(), sys_), true);
    }
    for (Eigen::Index r = 0; r < S; ++r) u(r, col) = buf[static_cast<std::size_t>(r)];
  }
  return u;
}

namespace {

// Adds coeff * B (or coeff * 1 when B is null) into the (row block, col block)
// of a matrix whose index is s * stride + base.
void add_block(CMatrix& m, std::size_t s_dim, std::size_t stride, std::size_t row_base, std::size_t col_base,
               Complex coeff, const CMatrix* b) {
  for (std::size_t s2 = 0; s2 < s_dim; ++s2) {
    const auto col = static_cast<Eigen::Index>(s2 * stride + col_base);
    if (b == nullptr) {
      m(static_cast<Eigen::Index>(s2 * stride + row_base), col) += coeff;
      continue;
    }
    for (std::size_t s1 = 0; s1 < s_dim; ++s1) {
      const Complex v = (*b)(static_cast<Eigen::Index>(s1), static_cast<Eigen::Index>(s2));
      if (v != Complex(0.0)) m(static_cast<Eigen::Index>(s1 * stride + row_base), col) += coeff * v;
    }
  }
}

CMatrix input_projector(const Circuit& c, int j) {
  const auto S = static_cast<Eigen::Index>(c.system_dim());
  CMatrix p = CMatrix::Zero(S, S);
  const std::size_t m = std::size_t{1} << (c.num_qubits() - 1 - j);
  const bool basis = j < c.n && c.initial.kind == InitialState::Kind::Basis;
  const bool want = basis && c.initial.bits[static_cast<std::size_t>(j)] == '0';
  for (std::size_t s = 0; s < static_cast<std::size_t>(S); ++s) {
    const auto i = static_cast<Eigen::Index>(s);
    if (basis) {
      if (((s & m) != 0) == want) p(i, i) = 1.0;
    } else if ((s & m) == 0) {
      const auto k = static_cast<Eigen::Index>(s | m);
      p(i, i) = 0.5;
      p(k, k) = 0.5;
      p(i, k) = -0.5;
      p(k, i) = -0.5;
    }
  }
  return p;
}

// Writes weight * T of one term into m. base(c, a) gives the offset of clock
// level c / ancilla level a; a < 0 means "no ancilla factor".
template <typename Base>
void assemble_term(const ClockHamiltonian& h, const Term& t, CMatrix& m, std::size_t stride, Base base,
                   bool with_ancilla) {
  const std::size_t S = h.system_dim();
  const int L = h.circuit().L();
  std::vector<std::pair<int, int>> pairs;
  if (!with_ancilla) {
    pairs = {{-1, -1}};
  } else if (t.ancilla == 0) {
    for (std::size_t a = 0; a < h.ancilla_dim(); ++a) pairs.emplace_back(static_cast<int>(a), static_cast<int>(a));
  } else {
    pairs = {{0, t.ancilla}, {t.ancilla, 0}};
  }
  const double w = t.weight;
  for (const auto& [src, dst] : pairs) {
    switch (t.tag) {
      case TermTag::Feynman:
      case TermTag::ClockPair:
      case TermTag::OracleHop: {
        const int ca = t.index == L + 1 ? L : t.index - 1;
        const int cb = t.index == L + 1 ? 0 : t.index;
        if (t.tag != TermTag::OracleHop) {
          const double f = 0.5 * w;
          add_block(m, S, stride, base(ca, dst), base(ca, src), f, nullptr);
          add_block(m, S, stride, base(cb, dst), base(cb, src), f, nullptr);
        }
        if (t.tag == TermTag::ClockPair) break;
        const double f = t.tag == TermTag::Feynman ? -0.5 * w : -w;
        const CMatrix u = h.hop_unitary(t.index);
        const CMatrix ud = u.adjoint();
        add_block(m, S, stride, base(cb, dst), base(ca, src), f, &u);
        add_block(m, S, stride, base(ca, dst), base(cb, src), f, &ud);
        break;
      }
      case TermTag::Input: {
        const CMatrix p = input_projector(h.circuit(), t.index);
        add_block(m, S, stride, base(0, dst), base(0, src), w, &p);
        break;
      }
      case TermTag::Pointer:
        add_block(m, S, stride, base(t.index, dst), base(t.index, src), w, nullptr);
        break;
      case TermTag::Identity:
        for (int c = 0; c < static_cast<int>(h.clock_dim()); ++c) {
          add_block(m, S, stride, base(c, dst), base(c, src), w, nullptr);
        }
        break;
    }
  }
}

}  // namespace

CMatrix ClockHamiltonian::to_dense() const { return dense(); }

const CMatrix& ClockHamiltonian::dense() const {
  if (dim() > kDenseLimit) {
    throw CapacityError("operator of dimension " + std::to_string(dim()) + " is too large to assemble densely");
  }
  std::call_once(shared_->once, [this] {
    const auto n = static_cast<Eigen::Index>(dim());
    CMatrix m = CMatrix::Zero(n, n);
    const std::size_t stride = clock_ * anc_;
    auto base = [this](int c, int a) { return static_cast<std::size_t>(c) * anc_ + static_cast<std::size_t>(a); };
    for (const Term& t : terms_) {
      assemble_term(*this, t, m, stride, base, true);
      if (t.offset != 0.0) m.diagonal().array() += t.offset;
    }
    shared_->dense = std::move(m);
  });
  return shared_->dense;
}

CMatrix ClockHamiltonian::term_block(const Term& t) const {
  check_term(t);
  const auto support = term_support(t);
  const std::size_t K = support.size();
  const auto n = static_cast<Eigen::Index>(sys_ * K);
  CMatrix m = CMatrix::Zero(n, n);
  auto base = [&support](int c, int) {
    return static_cast<std::size_t>(std::find(support.begin(), support.end(), c) - support.begin());
  };
  assemble_term(*this, t, m, K, base, false);
  if (t.offset != 0.0) m.diagonal().array() += t.offset;
  return m;
}

TermList feynman_terms(const Circuit& c, ClockTopology topology) {
  TermList terms;
  for (int l = 1; l <= c.L(); ++l) terms.push_back({TermTag::Feynman, l});
  if (topology == ClockTopology::Periodic) terms.push_back({TermTag::Feynman, c.L() + 1});
  return terms;
}

TermList input_terms(const Circuit& c) {
  TermList terms;
  for (int j = 0; j < c.num_qubits(); ++j) terms.push_back({TermTag::Input, j});
  return terms;
}

ClockHamiltonian build_feynman(const Circuit& c, double g, ClockTopology topology) {
  return ClockHamiltonian(c, g, feynman_terms(c, topology), 1, topology);
}

ClockHamiltonian build_input_penalty(const Circuit& c) { return ClockHamiltonian(c, 0.0, input_terms(c)); }

ClockHamiltonian build_standard(const Circuit& c, double g, ClockTopology topology) {
  TermList terms = feynman_terms(c, topology);
  const TermList in = input_terms(c);
  terms.insert(terms.end(), in.begin(), in.end());
  return ClockHamiltonian(c, g, std::move(terms), 1, topology);
}

ClockHamiltonian build_modified(const Circuit& c, const std::vector<double>& beta, const std::vector<double>& energies,
                                double g) {
  if (beta.size() != static_cast<std::size_t>(c.L())) throw std::invalid_argument("need one weight per gate");
  if (energies.size() != c.clock_dim()) throw std::invalid_argument("need one pointer energy per clock level");
  TermList terms;
  for (int l = 1; l <= c.L(); ++l) {
    const double b = beta[static_cast<std::size_t>(l - 1)];
    if (!(std::abs(b) <= 1.0)) throw std::invalid_argument("weight out of range: |beta| must be at most 1");
    terms.push_back({TermTag::Feynman, l, b});
  }
  const TermList in = input_terms(c);
  terms.insert(terms.end(), in.begin(), in.end());
  for (int l = 0; l <= c.L(); ++l) {
    const double e = energies[static_cast<std::size_t>(l)];
    if (!std::isfinite(e)) throw std::invalid_argument("pointer energy must be finite");
    terms.push_back({TermTag::Pointer, l, e});
  }
  const ClockHamiltonian unshifted(c, g, terms);
  const double lmin = lowest_eigenvalue(unshifted);
  terms.push_back({TermTag::Identity, 0, -lmin});
  return ClockHamiltonian(c, g, std::move(terms));
}

CVector tensor(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

HistoryState build_history_state(const Circuit& c, double g) {
  const auto phis = prefix_states(c, g);
  const std::size_t C = c.clock_dim();
  const std::size_t S = c.system_dim();
  check_dimension(S * C, "history state");
  const double amp = 1.0 / std::sqrt(static_cast<double>(C));
  CVector v(static_cast<Eigen::Index>(S * C));
  for (std::size_t l = 0; l < C; ++l) {
    for (std::size_t s = 0; s < S; ++s) v[static_cast<Eigen::Index>(s * C + l)] = amp * phis[l][static_cast<Eigen::Index>(s)];
  }
  auto shape = c.register_shape();
  shape.push_back(C);
  return {StateVector::normalized(std::move(v), std::move(shape)), std::vector<Complex>(C, Complex(amp))};
}

HistoryState decompose_history(const Circuit& c, double g, const CVector& psi) {
  const auto phis = prefix_states(c, g);
  const std::size_t C = c.clock_dim();
  const std::size_t S = c.system_dim();
  if (static_cast<std::size_t>(psi.size()) != S * C) throw std::invalid_argument("state does not live on system x clock");
  std::vector<Complex> alpha(C);
  double err = 0.0;
  for (std::size_t l = 0; l < C; ++l) {
    CVector slice(static_cast<Eigen::Index>(S));
    for (std::size_t s = 0; s < S; ++s) slice[static_cast<Eigen::Index>(s)] = psi[static_cast<Eigen::Index>(s * C + l)];
    alpha[l] = phis[l].dot(slice);
    err = std::max(err, (slice - alpha[l] * phis[l]).norm());
  }
  if (err > 1e-8) throw NumericalError("state is not a history state (deviation " + std::to_string(err) + ")");
  auto shape = c.register_shape();
  shape.push_back(C);
  return {StateVector::normalized(psi, std::move(shape)), std::move(alpha)};
}

void apply_conjugation(const Circuit& c, double g, CVector& v, bool adjoint) {
  const std::size_t C = c.clock_dim();
  const std::size_t S = c.system_dim();
  if (static_cast<std::size_t>(v.size()) != S * C) throw std::invalid_argument("state does not live on system x clock");
  std::vector<CompiledGate> gates;
  for (const Gate& gate : c.gates) gates.emplace_back(gate, c, g);
  std::vector<Complex> buf(S);
  for (std::size_t l = 1; l < C; ++l) {
    for (std::size_t s = 0; s < S; ++s) buf[s] = v[static_cast<Eigen::Index>(s * C + l)];
    if (!adjoint) {
      for (std::size_t k = 0; k < l; ++k) gates[k].apply_inplace(buf);
    } else {
      for (std::size_t k = l; k-- > 0;) gates[k].apply_inplace(buf, true);
    }
    for (std::size_t s = 0; s < S; ++s) v[static_cast<Eigen::Index>(s * C + l)] = buf[s];
  }
}

CMatrix conjugation_unitary(const Circuit& c, double g) {
  const std::size_t d = c.system_dim() * c.clock_dim();
  if (d > kDenseLimit) throw CapacityError("conjugation unitary of dimension " + std::to_string(d) + " is too large");
  const auto n = static_cast<Eigen::Index>(d);
  CMatrix w(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    CVector e = CVector::Zero(n);
    e[j] = 1.0;
    apply_conjugation(c, g, e);
    w.col(j) = e;
  }
  return w;
}

std::vector<int> oracle_levels(const Circuit& c) {
  std::vector<int> levels;
  std::optional<GateKind> kind;
  for (int l = 1; l <= c.L(); ++l) {
    const GateKind k = c.gates[static_cast<std::size_t>(l - 1)].kind;
    if (!is_oracle_kind(k)) continue;
    if ((kind && *kind != k) || (!levels.empty() && levels.back() == l - 1)) {
      throw Error("non-Grover oracle layout");
    }
    kind = k;
    levels.push_back(l);
  }
  return levels;
}

OracleSplit oracle_split(const Circuit& c) {
  const auto levels = oracle_levels(c);
  const auto C = static_cast<Eigen::Index>(c.clock_dim());
  CMatrix p = CMatrix::Zero(C, C);
  TermList hops;
  TermList rest;
  for (int l = 1; l <= c.L(); ++l) {
    if (std::find(levels.begin(), levels.end(), l) != levels.end()) {
      p(l, l - 1) = -1.0;
      p(l - 1, l) = -1.0;
      hops.push_back({TermTag::OracleHop, l});
      rest.push_back({TermTag::ClockPair, l});
    } else {
      rest.push_back({TermTag::Feynman, l});
    }
  }
  const TermList in = input_terms(c);
  rest.insert(rest.end(), in.begin(), in.end());
  return OracleSplit{std::move(p), ClockHamiltonian(c, 1.0, std::move(hops)), ClockHamiltonian(c, 1.0, std::move(rest)),
                     0.5, levels};
}

void write_triplets(const HermitianOperator& h, std::ostream& out, double tol) {
  const CMatrix m = h.to_dense();
  const auto old = out.precision(17);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (std::abs(m(i, j)) > tol && m(i, j) != Complex(0.0)) {
        out << i << ' ' << j << ' ' << m(i, j).real() << ' ' << m(i, j).imag() << '\n';
      }
    }
  }
  out.precision(old);
}

}  // namespace clocklab
