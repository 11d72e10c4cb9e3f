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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <Eigen/QR>
#include <gtest/gtest.h>

#include "clocklab/circuit.hpp"
#include "clocklab/rng.hpp"

namespace clocklab {
namespace {

std::string expect_parse_error(const std::string& text) {
  try {
    parse_circuit(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "<no error>";
}

TEST(Parse, GroverExample) {
  const Circuit c = parse_circuit("qubits 2\noracle 11\ngates ORACLE REFLECT");
  EXPECT_EQ(c.n, 2);
  EXPECT_EQ(c.L(), 2);
  ASSERT_TRUE(c.oracle);
  EXPECT_EQ(c.oracle->bits, "11");
  EXPECT_EQ(c.oracle->index(), 3u);
}

TEST(Parse, TrivialExample) {
  const Circuit c = parse_circuit("qubits 1\ngates ID ID ID");
  EXPECT_EQ(c.L(), 3);
  EXPECT_FALSE(c.oracle);
}

TEST(Parse, Diagnostics) {
  EXPECT_EQ(expect_parse_error("qubits 2\ngates ORACLE"), "line 2: oracle gate without oracle spec");
  EXPECT_EQ(expect_parse_error("qubits 1\ngates ID NOPE"), "line 2: unknown gate name 'NOPE'");
  EXPECT_EQ(expect_parse_error("qubits 2\noracle 1\ngates ORACLE"), "line 2: oracle bitstring length mismatch");
  EXPECT_EQ(expect_parse_error("qubits 1\ngate CUSTOM [0] [2 0 0 1]"), "line 2: non-unitary CUSTOM matrix");
  EXPECT_EQ(expect_parse_error("qubits 1\n\ngate CUSTOM [0] [1 0 0 1"), "line 3: syntax error: missing ']'");
  EXPECT_EQ(expect_parse_error("gates ID"), "syntax error: missing qubits directive");
}

TEST(Parse, ComplexEntries) {
  const Circuit c = parse_circuit("qubits 1\ngate CUSTOM [0] [0 -i i 0]\ngate CUSTOM [0] [0.6+0.8i 0 0 0.6-0.8i]");
  EXPECT_EQ(c.gates[0].matrix[1], Complex(0.0, -1.0));
  EXPECT_EQ(c.gates[0].matrix[2], Complex(0.0, 1.0));
  EXPECT_EQ(c.gates[1].matrix[0], Complex(0.6, 0.8));
  EXPECT_EQ(c.gates[1].matrix[3], Complex(0.6, -0.8));
}

TEST(Serialize, Canonical) {
  Circuit c;
  c.n = 1;
  c.gates = {Gate{}};
  EXPECT_EQ(serialize_circuit(c), "qubits 1\ngates ID");
  EXPECT_EQ(serialize_circuit(build_controlled_grover(2, "01", 2, 4)),
            "qubits 2\ncontrol-ancilla\noracle 01\ngates ID ID CORACLE CREFLECT");
}

TEST(Serialize, BuildersRoundTrip) {
  const std::vector<Circuit> circuits = {build_trivial(3, 5), build_grover(3, 2, "110"),
                                         build_modified_grover(4, "1001"), build_controlled_grover(3, "011", 4, 8)};
  for (const Circuit& c : circuits) EXPECT_EQ(parse_circuit(serialize_circuit(c)), c);
}

// Random circuits with random unitary CUSTOM gates survive the text format.
TEST(Serialize, RandomRoundTripProperty) {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    Circuit c;
    c.n = 1 + static_cast<int>(rng.below(3));
    c.has_control_ancilla = rng.below(2) == 1;
    if (rng.below(2) == 1) {
      std::string bits;
      for (int i = 0; i < c.n; ++i) bits += rng.below(2) ? '1' : '0';
      c.oracle = make_oracle(bits);
    }
    if (rng.below(3) == 0) {
      c.initial.kind = InitialState::Kind::Basis;
      for (int i = 0; i < c.n; ++i) c.initial.bits += rng.below(2) ? '1' : '0';
    }
    const int L = 1 + static_cast<int>(rng.below(6));
    for (int l = 0; l < L; ++l) {
      std::vector<GateKind> kinds = {GateKind::Id, GateKind::Reflect, GateKind::Custom};
      if (c.oracle) kinds.push_back(c.has_control_ancilla ? GateKind::COracle : GateKind::Oracle);
      if (c.has_control_ancilla) kinds.push_back(GateKind::CReflect);
      Gate g{kinds[rng.below(kinds.size())], {}, {}};
      if (g.kind == GateKind::Custom) {
        const int k = 1 + static_cast<int>(rng.below(std::min<std::uint64_t>(2, static_cast<std::uint64_t>(c.num_qubits()))));
        std::vector<int> pool(static_cast<std::size_t>(c.num_qubits()));
        for (int i = 0; i < c.num_qubits(); ++i) pool[static_cast<std::size_t>(i)] = i;
        for (int i = 0; i < k; ++i) {
          const auto j = static_cast<std::size_t>(i) + rng.below(pool.size() - static_cast<std::size_t>(i));
          std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
          g.targets.push_back(pool[static_cast<std::size_t>(i)]);
        }
        const int d = 1 << k;
        CMatrix a(d, d);
        for (int i = 0; i < d; ++i) {
          for (int j = 0; j < d; ++j) a(i, j) = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
        }
        const CMatrix q = Eigen::HouseholderQR<CMatrix>(a).householderQ();
        for (int i = 0; i < d; ++i) {
          for (int j = 0; j < d; ++j) g.matrix.push_back(q(i, j));
        }
      }
      c.gates.push_back(g);
    }
    const std::string text = serialize_circuit(c);
    const Circuit back = parse_circuit(text);
    ASSERT_EQ(back, c) << text;
    ASSERT_EQ(serialize_circuit(back), text);
  }
}

// Every corpus file either round-trips or fails with the diagnostic named in
// its "# expect-error:" header.
TEST(Corpus, RoundTripAndDiagnostics) {
  namespace fs = std::filesystem;
  int files = 0;
  int errors = 0;
  for (const auto& entry : fs::directory_iterator(CLOCKLAB_CORPUS_DIR)) {
    if (entry.path().extension() != ".qc") continue;
    ++files;
    std::ifstream in(entry.path());
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    const std::string tag = "# expect-error: ";
    if (text.rfind(tag, 0) == 0) {
      ++errors;
      const std::string expected = text.substr(tag.size(), text.find('\n') - tag.size());
      EXPECT_EQ(expect_parse_error(text), expected) << entry.path();
    } else {
      const Circuit c = parse_circuit(text);
      EXPECT_EQ(parse_circuit(serialize_circuit(c)), c) << entry.path();
    }
  }
  EXPECT_GE(files, 20);
  EXPECT_GE(errors, 8);
}

}  // namespace
}  // namespace clocklab
