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

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "clocklab/lab.hpp"

namespace clocklab::lab {
namespace {

TEST(Ranges, IntegerForms) {
  EXPECT_EQ(parse_int_range("4:64:x2"), (std::vector<int>{4, 8, 16, 32, 64}));
  EXPECT_EQ(parse_int_range("1:7:3"), (std::vector<int>{1, 4, 7}));
  EXPECT_EQ(parse_int_range(" 2, 5 ,9"), (std::vector<int>{2, 5, 9}));
  EXPECT_EQ(parse_int_range("12"), (std::vector<int>{12}));
  EXPECT_THROW(parse_int_range(""), std::invalid_argument);
  EXPECT_THROW(parse_int_range("5:1:1"), std::invalid_argument);
  EXPECT_THROW(parse_int_range("1:8:x1"), std::invalid_argument);
  EXPECT_THROW(parse_int_range("1:8"), std::invalid_argument);
  EXPECT_THROW(parse_int_range("3a"), std::invalid_argument);
}

TEST(Ranges, RealForms) {
  const auto g = parse_real_range("0:1:0.1");
  ASSERT_EQ(g.size(), 11u);
  EXPECT_NEAR(g.back(), 1.0, 1e-12);
  EXPECT_EQ(parse_real_range("0.5,1e-2"), (std::vector<double>{0.5, 0.01}));
  EXPECT_THROW(parse_real_range("0:1:0"), std::invalid_argument);
}

TEST(Records, HashIgnoresTimestamp) {
  json a = finalize_record("spectrum", {{"gap", 0.25}});
  json b = a;
  b["generated_at"] = "1970-01-01T00:00:00Z";
  EXPECT_EQ(content_hash(a), content_hash(b));
  EXPECT_EQ(a["content_hash"], content_hash(a));
  EXPECT_EQ(a["schema_version"], kSchemaVersion);
  EXPECT_EQ(a["command"], "spectrum");
  b["gap"] = 0.5;
  EXPECT_NE(content_hash(a), content_hash(b));
  EXPECT_EQ(content_hash(a).size(), 16u);
}

TEST(Families, Builders) {
  EXPECT_EQ(make_family_circuit("grover", 2, 4, "").L(), 4);
  EXPECT_EQ(make_family_circuit("grover", 2, 4, "").oracle->bits, "11");
  EXPECT_EQ(make_family_circuit("modified_grover", 2, 8, "01").L(), 8);
  EXPECT_TRUE(make_family_circuit("controlled_grover", 2, 8, "01").has_control_ancilla);
  EXPECT_THROW(make_family_circuit("grover", 2, 3, ""), std::invalid_argument);
  EXPECT_THROW(make_family_circuit("modified_grover", 2, 6, ""), std::invalid_argument);
  EXPECT_THROW(make_family_circuit("shor", 2, 4, ""), std::invalid_argument);
  EXPECT_THROW(read_text_file("/nonexistent/circuit.qc"), ParseError);
}

TEST(Csv, GapScanRoundTrip) {
  const std::vector<GapScanRow> rows = {{"trivial", 1, 4, 0.1234567890123, std::nullopt, std::nullopt},
                                        {"modified_grover", 2, 8, 1e-5, 0.0031622776601683794, 1.0000000000001}};
  std::stringstream ss;
  write_gap_scan_csv(ss, rows);
  const auto back = read_gap_scan_csv(ss);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].delta, rows[0].delta);
  EXPECT_FALSE(back[0].delta_tilde);
  EXPECT_EQ(*back[1].delta_tilde, *rows[1].delta_tilde);
  EXPECT_EQ(*back[1].ratio, *rows[1].ratio);
}

TEST(Csv, LedgerRoundTrip) {
  QueryLedger l;
  l.entries = {{1.0, 5, 4, 7.5e-4}, {2.0, 13, 10, 9.9e-4}};
  std::stringstream ss;
  write_ledger_csv(ss, l);
  const QueryLedger back = read_ledger_csv(ss);
  ASSERT_EQ(back.entries.size(), 2u);
  EXPECT_EQ(back.entries[1].oracle_count, 13);
  EXPECT_EQ(back.entries[1].error, 9.9e-4);
}

TEST(Csv, Diagnostics) {
  std::istringstream bad_header("L,delta\n4,0.1\n");
  EXPECT_THROW(read_gap_scan_csv(bad_header), ParseError);
  std::istringstream short_row(std::string(kLedgerHeader) + "\n1,2,3,4\n1,2\n");
  try {
    read_ledger_csv(short_row);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

std::vector<GapScanRow> power_scan(double exponent) {
  std::vector<GapScanRow> rows;
  for (const int L : {4, 8, 16, 32, 64}) rows.push_back({"synthetic", 1, L, std::pow(L, -exponent), {}, {}});
  return rows;
}

TEST(Theorem, SlowDecayViolatesLinearBound) {
  const TheoremReport r = theorem_report(power_scan(0.5), 1.0);
  EXPECT_FALSE(r.consistent_inv_gamma);
  EXPECT_FALSE(r.consistent_linear);
  EXPECT_FALSE(r.amplified_verified);
  EXPECT_TRUE(r.rows.front().ok_linear);  // anchor row sits on its bound
}

TEST(Theorem, FastDecayIsConsistent) {
  const TheoremReport r = theorem_report(power_scan(2.0), 1.0);
  EXPECT_TRUE(r.consistent_inv_gamma);
  EXPECT_TRUE(r.consistent_two_over_gamma);
  EXPECT_TRUE(r.consistent_linear);
  const json j = to_json(r);
  EXPECT_EQ(j["rows"].size(), 5u);
  EXPECT_DOUBLE_EQ(j["exponents"]["two_over_gamma"].get<double>(), 2.0);
}

TEST(Theorem, Rejections) {
  EXPECT_THROW(theorem_report({}, 1.0), std::invalid_argument);
  EXPECT_THROW(theorem_report(power_scan(1.0), 0.0), std::invalid_argument);
}

TEST(Commands, ParseIsStable) {
  const ParseResult r = cmd_parse("# comment\nqubits 2\n\noracle 01\ngates ORACLE   REFLECT\n");
  EXPECT_TRUE(r.stable);
  EXPECT_EQ(r.canonical, "qubits 2\noracle 01\ngates ORACLE REFLECT");
}

TEST(Commands, FitFromCsvAndRecords) {
  std::ostringstream os;
  write_gap_scan_csv(os, power_scan(1.5));
  EXPECT_NEAR(cmd_fit(os.str())["fits"][0]["slope"].get<double>(), -1.5, 1e-12);
  json recs = json::array();
  for (const int L : {2, 4, 8}) recs.push_back({{"L", L}, {"gap", 2.0 / L}});
  EXPECT_NEAR(cmd_fit(recs.dump())["fits"][0]["slope"].get<double>(), -1.0, 1e-12);
}

TEST(Commands, GapScanTrivial) {
  GapScanOptions opt;
  opt.L_values = {4, 8, 16};
  const GapScanResult r = cmd_gap_scan(opt);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_EQ(r.record["command"], "gap-scan");
  opt.L_values = {4, 8};
  EXPECT_THROW(cmd_gap_scan(opt), std::invalid_argument);
}

TEST(Commands, SpectrumRecord) {
  SpectrumOptions opt;
  opt.source.L = 2;
  const json j = cmd_spectrum(opt);
  EXPECT_NEAR(j["gap"].get<double>(), 0.13397459621556146, 1e-12);
  opt.construction = "feynman";
  opt.topology = "periodic";
  EXPECT_NO_THROW(cmd_spectrum(opt));
  opt.topology = "torus";
  EXPECT_THROW(cmd_spectrum(opt), std::invalid_argument);
}

}  // namespace
}  // namespace clocklab::lab
