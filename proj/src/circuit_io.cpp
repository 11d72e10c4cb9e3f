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

// Line-oriented circuit text format:
//
//   # comment
//   qubits 2
//   control-ancilla
//   oracle 11
//   initial plus | initial basis 01
//   gates ID ORACLE REFLECT
//   gate CUSTOM [0 1] [1 0 0 0 0 1 0 0 0 0 0 1 0 0 1 0]
//
// Complex entries are written a, a+bi, a-bi or bi.

#include <algorithm>
#include <charconv>
#include <sstream>

#include "clocklab/circuit.hpp"

namespace clocklab {
namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) words.push_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_int(std::string_view s, int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return !s.empty() && ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_complex(std::string_view s, Complex& out) {
  if (s.empty()) return false;
  if (s.back() != 'i') {
    double re = 0.0;
    if (!parse_double(s, re)) return false;
    out = {re, 0.0};
    return true;
  }
  s.remove_suffix(1);
  // split at the last sign that is not the leading one or an exponent sign
  std::size_t split = std::string_view::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  double re = 0.0;
  double im = 0.0;
  std::string_view ims = split == std::string_view::npos ? s : s.substr(split);
  if (split != std::string_view::npos && !parse_double(s.substr(0, split), re)) return false;
  if (ims == "" || ims == "+") {
    im = 1.0;
  } else if (ims == "-") {
    im = -1.0;
  } else if (!parse_double(ims, im)) {
    return false;
  }
  out = {re, im};
  return true;
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string format_complex(Complex z) {
  std::string s = format_double(z.real());
  const std::string im = format_double(z.imag());
  s += (im.front() == '-' ? "" : "+") + im + "i";
  return s;
}

// Reads a bracketed list starting at words[pos]; advances pos past it.
std::vector<std::string_view> bracket_list(const std::vector<std::string_view>& words, std::size_t& pos, int line) {
  if (pos >= words.size() || words[pos].front() != '[') {
    throw ParseError(line, "syntax error: expected '['");
  }
  std::vector<std::string_view> items;
  bool closed = false;
  bool first = true;
  while (pos < words.size() && !closed) {
    std::string_view w = words[pos++];
    if (first) {
      w.remove_prefix(1);
      first = false;
    }
    if (!w.empty() && w.back() == ']') {
      w.remove_suffix(1);
      closed = true;
    }
    if (!w.empty()) items.push_back(w);
  }
  if (!closed) throw ParseError(line, "syntax error: missing ']'");
  return items;
}

bool is_bitstring(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return ch == '0' || ch == '1'; });
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
  Circuit c;
  bool have_qubits = false;
  int oracle_line = 0;
  int initial_line = 0;
  int first_oracle_gate_line = 0;
  int first_controlled_gate_line = 0;
  struct CustomSite {
    std::size_t gate;
    int line;
  };
  std::vector<CustomSite> customs;

  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto words = split_words(line);
    if (words.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::string_view key = words[0];
    if (key == "qubits") {
      if (have_qubits) throw ParseError(line_no, "syntax error: duplicate qubits directive");
      if (words.size() != 2 || !parse_int(words[1], c.n) || c.n < 1 || c.n > 30) {
        throw ParseError(line_no, "syntax error: qubits takes one integer in 1..30");
      }
      have_qubits = true;
    } else if (key == "control-ancilla") {
      if (words.size() != 1) throw ParseError(line_no, "syntax error: control-ancilla takes no arguments");
      c.has_control_ancilla = true;
    } else if (key == "oracle") {
      if (words.size() != 2 || !is_bitstring(words[1]) || words[1].size() > 30) {
        throw ParseError(line_no, "syntax error: oracle takes one bitstring");
      }
      if (c.oracle) throw ParseError(line_no, "syntax error: duplicate oracle directive");
      c.oracle = make_oracle(std::string(words[1]));
      oracle_line = line_no;
    } else if (key == "initial") {
      if (words.size() == 2 && words[1] == "plus") {
        c.initial = InitialState{};
      } else if (words.size() == 3 && words[1] == "basis" && is_bitstring(words[2])) {
        c.initial = InitialState{InitialState::Kind::Basis, std::string(words[2])};
      } else {
        throw ParseError(line_no, "syntax error: expected 'initial plus' or 'initial basis <bits>'");
      }
      initial_line = line_no;
    } else if (key == "gates" || key == "gate") {
      if (words.size() < 2) throw ParseError(line_no, "syntax error: missing gate name");
      const bool single = key == "gate";
      std::size_t pos = 1;
      while (pos < words.size()) {
        const auto kind = gate_kind_from_name(words[pos]);
        if (!kind) throw ParseError(line_no, "unknown gate name '" + std::string(words[pos]) + "'");
        ++pos;
        Gate gate{*kind, {}, {}};
        if (*kind == GateKind::Custom) {
          if (!single) throw ParseError(line_no, "syntax error: CUSTOM gates use the 'gate' directive");
          for (auto t : bracket_list(words, pos, line_no)) {
            int q = 0;
            if (!parse_int(t, q)) throw ParseError(line_no, "syntax error: bad qubit index '" + std::string(t) + "'");
            gate.targets.push_back(q);
          }
          for (auto e : bracket_list(words, pos, line_no)) {
            Complex z;
            if (!parse_complex(e, z)) throw ParseError(line_no, "syntax error: bad matrix entry '" + std::string(e) + "'");
            gate.matrix.push_back(z);
          }
          customs.push_back({c.gates.size(), line_no});
        }
        if (is_oracle_kind(*kind) && first_oracle_gate_line == 0) first_oracle_gate_line = line_no;
        if ((*kind == GateKind::COracle || *kind == GateKind::CReflect) && first_controlled_gate_line == 0) {
          first_controlled_gate_line = line_no;
        }
        c.gates.push_back(std::move(gate));
        if (single && pos < words.size()) throw ParseError(line_no, "syntax error: trailing tokens after gate");
      }
    } else {
      throw ParseError(line_no, "syntax error: unknown directive '" + std::string(key) + "'");
    }
    if (end == text.size()) break;
  }

  if (!have_qubits) throw ParseError(0, "syntax error: missing qubits directive");
  if (c.gates.empty()) throw ParseError(0, "syntax error: circuit has no gates");
  if (c.oracle && c.oracle->n != c.n) throw ParseError(oracle_line, "oracle bitstring length mismatch");
  if (first_oracle_gate_line != 0 && !c.oracle) {
    throw ParseError(first_oracle_gate_line, "oracle gate without oracle spec");
  }
  if (first_controlled_gate_line != 0 && !c.has_control_ancilla) {
    throw ParseError(first_controlled_gate_line, "controlled gate without control-ancilla");
  }
  if (c.initial.kind == InitialState::Kind::Basis && static_cast<int>(c.initial.bits.size()) != c.n) {
    throw ParseError(initial_line, "initial bitstring length mismatch");
  }
  for (const auto& site : customs) {
    const Gate& gate = c.gates[site.gate];
    const std::size_t k = gate.targets.size();
    if (k == 0) throw ParseError(site.line, "syntax error: CUSTOM gate needs targets");
    for (int t : gate.targets) {
      if (t < 0 || t >= c.num_qubits()) throw ParseError(site.line, "gate qubit index out of range");
    }
    if (k > 10 || gate.matrix.size() != (std::size_t{1} << (2 * k))) {
      throw ParseError(site.line, "CUSTOM matrix size does not match its target count");
    }
  }
  try {
    validate(c);
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    int line = 0;
    for (const auto& site : customs) {
      Circuit probe;
      probe.n = c.n;
      probe.has_control_ancilla = c.has_control_ancilla;
      probe.gates = {c.gates[site.gate]};
      try {
        validate(probe);
      } catch (const std::invalid_argument&) {
        line = site.line;
        break;
      }
    }
    throw ParseError(line, msg);
  }
  return c;
}

std::string serialize_circuit(const Circuit& c) {
  std::ostringstream out;
  out << "qubits " << c.n;
  if (c.has_control_ancilla) out << "\ncontrol-ancilla";
  if (c.oracle) out << "\noracle " << c.oracle->bits;
  if (c.initial.kind == InitialState::Kind::Basis) out << "\ninitial basis " << c.initial.bits;
  bool in_gates_line = false;
  for (const Gate& gate : c.gates) {
    if (gate.kind == GateKind::Custom) {
      out << "\ngate CUSTOM [";
      for (std::size_t i = 0; i < gate.targets.size(); ++i) out << (i ? " " : "") << gate.targets[i];
      out << "] [";
      for (std::size_t i = 0; i < gate.matrix.size(); ++i) out << (i ? " " : "") << format_complex(gate.matrix[i]);
      out << "]";
      in_gates_line = false;
      continue;
    }
    out << (in_gates_line ? " " : "\ngates ") << gate_name(gate.kind);
    in_gates_line = true;
  }
  return out.str();
}

}  // namespace clocklab
