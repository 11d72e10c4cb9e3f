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

// Experiment plumbing for the clocklab binary: ranges, versioned JSON records,
// fixed-header CSV tables, the bound-consistency report and one function per
// subcommand. Commands return records; callers own all file output.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "clocklab/oracle_gadget.hpp"
#include "clocklab/search.hpp"
#include "clocklab/spectral.hpp"

namespace clocklab::lab {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kGapScanHeader = "family,n,L,delta,delta_tilde,ratio";
inline constexpr std::string_view kLedgerHeader = "t,oracle_count,steps,error";

/// "a:b:xk" (geometric), "a:b:s" (arithmetic), "a,b,c" or a single value.
std::vector<int> parse_int_range(std::string_view text);
std::vector<double> parse_real_range(std::string_view text);

/// FNV-1a 64 over the compact dump of `record` minus the timestamp and hash.
std::string content_hash(const json& record);
/// Adds schema_version, command, generated_at and content_hash.
json finalize_record(std::string_view command, json payload);

std::string read_text_file(const std::string& path);

// Circuit from a file, or from a named family.
struct CircuitSource {
  std::optional<std::string> path;
  std::string family = "trivial";
  int n = 1;
  int L = 4;
  std::string X;  // empty: all ones
};

/// Families: trivial, grover, modified_grover, controlled_grover.
Circuit make_family_circuit(const std::string& family, int n, int L, const std::string& X);
Circuit load_circuit(const CircuitSource& src);

struct GapScanRow {
  std::string family;
  int n = 0;
  int L = 0;
  double delta = 0.0;
  std::optional<double> delta_tilde;
  std::optional<double> ratio;
};

void write_gap_scan_csv(std::ostream& out, const std::vector<GapScanRow>& rows);
std::vector<GapScanRow> read_gap_scan_csv(std::istream& in);
void write_ledger_csv(std::ostream& out, const QueryLedger& ledger);
QueryLedger read_ledger_csv(std::istream& in);

struct TheoremReport {
  struct Row {
    std::string family;
    int n = 0;
    int L = 0;
    double delta = 0.0;
    double bound_inv_gamma = 0.0;
    double bound_two_over_gamma = 0.0;
    double bound_linear = 0.0;
    bool ok_inv_gamma = false;
    bool ok_two_over_gamma = false;
    bool ok_linear = false;
  };
  double gamma = 0.0;
  /// Every scan row carries an amplification ratio >= 1 - 1e-6.
  bool amplified_verified = false;
  std::vector<Row> rows;
  bool consistent_inv_gamma = false;
  bool consistent_two_over_gamma = false;
  bool consistent_linear = false;
};

/// Bound B(L) = c'' (1 + ln L) / L^p per (family, n) group with c'' fixed so
/// that B equals the gap at the group's smallest L. Exponents p = 1/gamma,
/// 2/gamma (the frustration-free bound) and 1.
TheoremReport theorem_report(const std::vector<GapScanRow>& scan, double gamma);
json to_json(const TheoremReport& r);

struct SpectrumOptions {
  CircuitSource source;
  std::string construction = "standard";  // standard | feynman | modified
  std::string topology = "open";
  double g = 1.0;
  int count = 16;
  Solver solver = Solver::Auto;
};
json cmd_spectrum(const SpectrumOptions& opt);

struct GapScanOptions {
  std::string family = "trivial";
  std::vector<int> n_values{1};
  std::vector<int> L_values;
  std::string X;
  bool amplify = false;
  Solver solver = Solver::Auto;
};
struct GapScanResult {
  std::vector<GapScanRow> rows;
  json record;
};
GapScanResult cmd_gap_scan(const GapScanOptions& opt);

json cmd_amplify(const CircuitSource& src, const EigenOptions& eig = {});

json cmd_search(const SearchConfig& cfg);

struct GadgetCheckOptions {
  CircuitSource source;
  std::vector<double> s_values{0.01, 0.05, 0.1, 0.5};
  double t = 2.0;
  std::vector<int> steps{8, 16, 32, 64};
  std::vector<double> ledger_times{1, 2, 4, 8};
  double epsilon = 1e-3;
  int order = 2;
  bool amplified = false;
  std::uint64_t seed = 1;
};
struct GadgetCheckResult {
  QueryLedger ledger;
  json record;
};
GadgetCheckResult cmd_gadget_check(const GadgetCheckOptions& opt);

json cmd_theorem_report(const std::vector<GapScanRow>& scan, const QueryLedger& ledger);

struct ParseResult {
  std::string canonical;
  bool stable = false;  // parse(serialize(parse(text))) == parse(text)
};
ParseResult cmd_parse(const std::string& text);

/// Log-log fit of (L, delta) pairs read from a gap-scan CSV or a record with
/// a "rows" array.
json cmd_fit(const std::string& text);

}  // namespace clocklab::lab
