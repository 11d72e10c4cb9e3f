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

#include "clocklab/circuit.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "clocklab/kernels.hpp"

namespace clocklab {
namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 6> kGateNames{{
    {GateKind::Id, "ID"},
    {GateKind::Oracle, "ORACLE"},
    {GateKind::Reflect, "REFLECT"},
    {GateKind::COracle, "CORACLE"},
    {GateKind::CReflect, "CREFLECT"},
    {GateKind::Custom, "CUSTOM"},
}};

constexpr double kUnitaryTol = 1e-12;

void check_g(double g) {
  if (!(g >= 0.0 && g <= 1.0)) {
    throw std::invalid_argument("interpolation parameter g must lie in [0, 1]");
  }
}

CMatrix custom_matrix(const Gate& gate) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << gate.targets.size());
  if (static_cast<Eigen::Index>(gate.matrix.size()) != d * d) {
    throw std::invalid_argument("CUSTOM matrix size does not match its target count");
  }
  CMatrix m(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      m(r, c) = gate.matrix[static_cast<std::size_t>(r * d + c)];
    }
  }
  return m;
}

// Principal power U^g of a unitary via its Schur form.
CMatrix principal_power(const CMatrix& u, double g) {
  if (g == 0.0) return CMatrix::Identity(u.rows(), u.cols());
  if (g == 1.0) return u;
  Eigen::ComplexSchur<CMatrix> schur(u);
  const CMatrix& t = schur.matrixT();
  const CMatrix& z = schur.matrixU();
  int minus_one = 0;
  CVector phases(u.rows());
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    double theta = std::arg(t(i, i));
    if (std::abs(std::abs(theta) - kPi) < 1e-9) {
      theta = kPi;
      ++minus_one;
    }
    phases[i] = std::polar(1.0, g * theta);
  }
  if (minus_one >= 2) {
    throw Error("non-interpolable gate: eigenvalue -1 is degenerate");
  }
  return z * phases.asDiagonal() * z.adjoint();
}

}  // namespace

std::string_view gate_name(GateKind kind) {
  for (const auto& [k, name] : kGateNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
  for (const auto& [k, n] : kGateNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::size_t OracleSpec::index() const {
  std::size_t x = 0;
  for (char ch : bits) {
    x = (x << 1) | (ch == '1' ? 1U : 0U);
  }
  return x;
}

OracleSpec make_oracle(const std::string& bits) {
  if (bits.empty() || !std::all_of(bits.begin(), bits.end(), [](char ch) { return ch == '0' || ch == '1'; })) {
    throw std::invalid_argument("oracle bitstring must be a nonempty string of 0 and 1");
  }
  if (bits.size() > 30) {
    throw std::invalid_argument("oracle bitstring too long");
  }
  return OracleSpec{static_cast<int>(bits.size()), bits};
}

std::vector<std::size_t> Circuit::register_shape() const {
  std::vector<std::size_t> shape{std::size_t{1} << n};
  if (has_control_ancilla) shape.push_back(2);
  return shape;
}

std::string index_to_bits(std::size_t index, int n) { return basis_label(index, std::size_t{1} << n); }

void validate(const Circuit& c) {
  if (c.n < 1 || c.n > 30) {
    throw std::invalid_argument("qubit count must be between 1 and 30");
  }
  if (c.gates.empty()) {
    throw std::invalid_argument("circuit needs at least one gate");
  }
  if (c.oracle) {
    make_oracle(c.oracle->bits);
    if (c.oracle->n != c.n || static_cast<int>(c.oracle->bits.size()) != c.n) {
      throw std::invalid_argument("oracle bitstring length mismatch");
    }
  }
  if (c.initial.kind == InitialState::Kind::Basis) {
    if (static_cast<int>(c.initial.bits.size()) != c.n ||
        !std::all_of(c.initial.bits.begin(), c.initial.bits.end(), [](char ch) { return ch == '0' || ch == '1'; })) {
      throw std::invalid_argument("basis initial state must be a bitstring of length n");
    }
  }
  for (const Gate& gate : c.gates) {
    switch (gate.kind) {
      case GateKind::Oracle:
      case GateKind::COracle:
        if (!c.oracle) throw std::invalid_argument("oracle gate without oracle spec");
        [[fallthrough]];
      case GateKind::Reflect:
      case GateKind::CReflect:
        if ((gate.kind == GateKind::COracle || gate.kind == GateKind::CReflect) && !c.has_control_ancilla) {
          throw std::invalid_argument("controlled gate without control-ancilla");
        }
        [[fallthrough]];
      case GateKind::Id:
        if (!gate.targets.empty() || !gate.matrix.empty()) {
          throw std::invalid_argument(std::string(gate_name(gate.kind)) + " takes no targets or matrix");
        }
        break;
      case GateKind::Custom: {
        if (gate.targets.empty()) throw std::invalid_argument("CUSTOM gate needs targets");
        std::vector<int> sorted = gate.targets;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
          throw std::invalid_argument("CUSTOM gate targets repeat a qubit");
        }
        for (int t : gate.targets) {
          if (t < 0 || t >= c.num_qubits()) throw std::invalid_argument("gate qubit index out of range");
        }
        const CMatrix m = custom_matrix(gate);
        const double err = (m * m.adjoint() - CMatrix::Identity(m.rows(), m.cols())).norm();
        if (err > kUnitaryTol) throw std::invalid_argument("non-unitary CUSTOM matrix");
        break;
      }
    }
  }
}

int grover_iterations(int n) {
  if (n < 1) throw std::invalid_argument("qubit count must be positive");
  const double theta = std::asin(std::pow(2.0, -0.5 * n));
  return std::max(1, static_cast<int>(std::floor(kPi / (4.0 * theta))));
}

Circuit build_trivial(int n, int L) {
  if (L < 1) throw std::invalid_argument("L must be at least 1");
  Circuit c;
  c.n = n;
  c.gates.assign(static_cast<std::size_t>(L), Gate{});
  validate(c);
  return c;
}

Circuit build_grover(int n, int iterations, const std::string& X) {
  if (iterations < 1) throw std::invalid_argument("Grover needs at least one iteration");
  Circuit c;
  c.n = n;
  c.oracle = make_oracle(X);
  for (int i = 0; i < iterations; ++i) {
    c.gates.push_back(Gate{GateKind::Oracle, {}, {}});
    c.gates.push_back(Gate{GateKind::Reflect, {}, {}});
  }
  validate(c);
  return c;
}

Circuit build_modified_grover(int n, const std::string& X) {
  if (n < 2) throw std::invalid_argument("modified Grover needs n >= 2");
  return build_modified_grover(n, X, grover_iterations(n));
}

Circuit build_modified_grover(int n, const std::string& X, int q) {
  if (q < 1) throw std::invalid_argument("modified Grover needs q >= 1");
  Circuit c;
  c.n = n;
  c.oracle = make_oracle(X);
  c.gates.assign(static_cast<std::size_t>(q), Gate{});
  for (int i = 0; i < q; ++i) {
    c.gates.push_back(Gate{GateKind::Oracle, {}, {}});
    c.gates.push_back(Gate{GateKind::Reflect, {}, {}});
  }
  c.gates.insert(c.gates.end(), static_cast<std::size_t>(q), Gate{});
  validate(c);
  return c;
}

Circuit build_controlled_grover(int n, const std::string& X, int l0, int L) {
  if (l0 < 0 || l0 > L || L < 1) throw std::invalid_argument("controlled Grover needs 0 <= l0 <= L, L >= 1");
  if ((L - l0) % 2 != 0) throw std::invalid_argument("controlled Grover needs L - l0 even");
  Circuit c;
  c.n = n;
  c.has_control_ancilla = true;
  c.oracle = make_oracle(X);
  c.gates.assign(static_cast<std::size_t>(l0), Gate{});
  for (int i = 0; i < (L - l0) / 2; ++i) {
    c.gates.push_back(Gate{GateKind::COracle, {}, {}});
    c.gates.push_back(Gate{GateKind::CReflect, {}, {}});
  }
  validate(c);
  return c;
}

CompiledGate::CompiledGate(const Gate& gate, const Circuit& c, double g)
    : kind_(gate.kind), num_qubits_(c.num_qubits()), control_(c.has_control_ancilla) {
  check_g(g);
  phase_ = std::polar(1.0, kPi * g);
  switch (kind_) {
    case GateKind::Id:
      identity_ = true;
      break;
    case GateKind::Oracle:
    case GateKind::COracle:
      if (!c.oracle) throw std::invalid_argument("oracle gate without oracle spec");
      marked_ = c.oracle->index();
      identity_ = g == 0.0;
      break;
    case GateKind::Reflect:
    case GateKind::CReflect:
      identity_ = g == 0.0;
      break;
    case GateKind::Custom:
      targets_ = gate.targets;
      for (int t : targets_) {
        if (t < 0 || t >= num_qubits_) throw std::invalid_argument("gate qubit index out of range");
      }
      local_ = principal_power(custom_matrix(gate), g);
      identity_ = g == 0.0;
      break;
  }
}

void CompiledGate::apply(std::span<const Complex> in, std::span<Complex> out, bool adjoint) const {
  std::copy(in.begin(), in.end(), out.begin());
  apply_inplace(out, adjoint);
}

void CompiledGate::apply_inplace(std::span<Complex> v, bool adjoint) const {
  if (v.size() != (std::size_t{1} << num_qubits_)) {
    throw std::invalid_argument("gate applied to a vector of the wrong length");
  }
  if (identity_) return;
  const Complex ph = adjoint ? std::conj(phase_) : phase_;
  switch (kind_) {
    case GateKind::Id:
      return;
    case GateKind::Oracle:
      if (control_) {
        v[marked_ << 1] *= ph;
        v[(marked_ << 1) | 1U] *= ph;
      } else {
        v[marked_] *= ph;
      }
      return;
    case GateKind::COracle:
      v[(marked_ << 1) | 1U] *= ph;
      return;
    case GateKind::Reflect:
    case GateKind::CReflect: {
      if (!control_) {
        serial::reflect_uniform(v, ph);
        return;
      }
      // strided reflection on each control branch
      const std::size_t half = v.size() / 2;
      for (std::size_t b = (kind_ == GateKind::CReflect ? 1 : 0); b < 2; ++b) {
        Complex total = 0.0;
        for (std::size_t s = 0; s < half; ++s) total += v[2 * s + b];
        const Complex mean = total / static_cast<double>(half);
        for (std::size_t s = 0; s < half; ++s) v[2 * s + b] += (ph - 1.0) * (v[2 * s + b] - mean);
      }
      return;
    }
    case GateKind::Custom: {
      const std::size_t k = targets_.size();
      const std::size_t d = std::size_t{1} << k;
      std::vector<std::size_t> shifts(k);
      std::size_t mask = 0;
      for (std::size_t j = 0; j < k; ++j) {
        shifts[j] = static_cast<std::size_t>(num_qubits_ - 1 - targets_[j]);
        mask |= std::size_t{1} << shifts[j];
      }
      std::vector<std::size_t> offsets(d, 0);
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t j = 0; j < k; ++j) {
          if ((a >> (k - 1 - j)) & 1U) offsets[a] |= std::size_t{1} << shifts[j];
        }
      }
      std::vector<Complex> buf(d), res(d);
      for (std::size_t base = 0; base < v.size(); ++base) {
        if (base & mask) continue;
        for (std::size_t a = 0; a < d; ++a) buf[a] = v[base | offsets[a]];
        for (std::size_t r = 0; r < d; ++r) {
          Complex s = 0.0;
          for (std::size_t col = 0; col < d; ++col) {
            const auto ri = static_cast<Eigen::Index>(r);
            const auto ci = static_cast<Eigen::Index>(col);
            s += (adjoint ? std::conj(local_(ci, ri)) : local_(ri, ci)) * buf[col];
          }
          res[r] = s;
        }
        for (std::size_t a = 0; a < d; ++a) v[base | offsets[a]] = res[a];
      }
      return;
    }
  }
}

CMatrix gate_unitary(const Gate& gate, const Circuit& c, double g) {
  const CompiledGate cg(gate, c, g);
  const auto d = static_cast<Eigen::Index>(c.system_dim());
  CMatrix u = CMatrix::Identity(d, d);
  for (Eigen::Index col = 0; col < d; ++col) {
    CVector v = u.col(col);
    cg.apply_inplace(as_span(v));
    u.col(col) = v;
  }
  return u;
}

StateVector initial_state(const Circuit& c) {
  const std::size_t ds = std::size_t{1} << c.n;
  CVector sys = CVector::Zero(static_cast<Eigen::Index>(ds));
  if (c.initial.kind == InitialState::Kind::PlusAll) {
    sys.setConstant(1.0 / std::sqrt(static_cast<double>(ds)));
  } else {
    sys[static_cast<Eigen::Index>(make_oracle(c.initial.bits).index())] = 1.0;
  }
  if (!c.has_control_ancilla) return StateVector(std::move(sys), c.register_shape());
  CVector full(static_cast<Eigen::Index>(2 * ds));
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t s = 0; s < ds; ++s) {
    full[static_cast<Eigen::Index>(2 * s)] = r * sys[static_cast<Eigen::Index>(s)];
    full[static_cast<Eigen::Index>(2 * s + 1)] = r * sys[static_cast<Eigen::Index>(s)];
  }
  return StateVector(std::move(full), c.register_shape());
}

std::vector<CVector> prefix_states(const Circuit& c, double g) {
  validate(c);
  check_dimension(c.system_dim(), "system register");
  std::vector<CVector> out;
  out.reserve(c.clock_dim());
  CVector v = initial_state(c).amplitudes();
  out.push_back(v);
  for (const Gate& gate : c.gates) {
    CompiledGate(gate, c, g).apply_inplace(as_span(v));
    out.push_back(v);
  }
  return out;
}

StateVector apply_circuit_prefix(const Circuit& c, int l, double g) {
  if (l < 0 || l > c.L()) throw std::out_of_range("prefix length out of range");
  check_g(g);
  validate(c);
  CVector v = initial_state(c).amplitudes();
  for (int i = 0; i < l; ++i) {
    CompiledGate(c.gates[static_cast<std::size_t>(i)], c, g).apply_inplace(as_span(v));
  }
  // renormalize away the roundoff of long products
  return StateVector::normalized(std::move(v), c.register_shape());
}

}  // namespace clocklab
