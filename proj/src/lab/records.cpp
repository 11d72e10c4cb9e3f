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

#include <charconv>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "clocklab/lab.hpp"

namespace clocklab::lab {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

template <typename T>
T parse_number(const std::string& s, std::string_view what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("invalid " + std::string(what) + " '" + s + "'");
  }
  return v;
}

std::string fmt(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::vector<std::string>> read_csv(std::istream& in, std::string_view header) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != header) {
    throw ParseError(1, "expected CSV header '" + std::string(header) + "'");
  }
  std::vector<std::vector<std::string>> rows;
  const std::size_t cols = split(header, ',').size();
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto cells = split(line, ',');
    if (cells.size() != cols) throw ParseError(lineno, "expected " + std::to_string(cols) + " CSV fields");
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

std::vector<int> parse_int_range(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) throw std::invalid_argument("empty range");
  std::vector<int> out;
  if (t.find(':') != std::string::npos) {
    const auto parts = split(t, ':');
    if (parts.size() != 3) throw std::invalid_argument("range must be start:stop:step or start:stop:xfactor");
    const int a = parse_number<int>(parts[0], "range start");
    const int b = parse_number<int>(parts[1], "range stop");
    if (!parts[2].empty() && parts[2][0] == 'x') {
      const int k = parse_number<int>(parts[2].substr(1), "range factor");
      if (k < 2 || a < 1) throw std::invalid_argument("geometric range needs start >= 1 and factor >= 2");
      for (long v = a; v <= b; v *= k) out.push_back(static_cast<int>(v));
    } else {
      const int s = parse_number<int>(parts[2], "range step");
      if (s < 1) throw std::invalid_argument("range step must be positive");
      for (int v = a; v <= b; v += s) out.push_back(v);
    }
  } else {
    for (const auto& p : split(t, ',')) out.push_back(parse_number<int>(p, "integer"));
  }
  if (out.empty()) throw std::invalid_argument("empty range '" + t + "'");
  return out;
}

std::vector<double> parse_real_range(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) throw std::invalid_argument("empty range");
  std::vector<double> out;
  if (t.find(':') != std::string::npos) {
    const auto parts = split(t, ':');
    if (parts.size() != 3) throw std::invalid_argument("range must be start:stop:step");
    const double a = parse_number<double>(parts[0], "range start");
    const double b = parse_number<double>(parts[1], "range stop");
    const double s = parse_number<double>(parts[2], "range step");
    if (!(s > 0.0)) throw std::invalid_argument("range step must be positive");
    const auto count = static_cast<long>(std::floor((b - a) / s + 1e-9));
    for (long i = 0; i <= count; ++i) out.push_back(a + static_cast<double>(i) * s);
  } else {
    for (const auto& p : split(t, ',')) out.push_back(parse_number<double>(p, "number"));
  }
  if (out.empty()) throw std::invalid_argument("empty range '" + t + "'");
  return out;
}

std::string content_hash(const json& record) {
  json copy = record;
  if (copy.is_object()) {
    copy.erase("generated_at");
    copy.erase("content_hash");
  }
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : copy.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

json finalize_record(std::string_view command, json payload) {
  payload["schema_version"] = kSchemaVersion;
  payload["command"] = command;
  payload["generated_at"] = utc_now();
  payload["content_hash"] = content_hash(payload);
  return payload;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Circuit make_family_circuit(const std::string& family, int n, int L, const std::string& X_in) {
  const std::string X = X_in.empty() ? std::string(static_cast<std::size_t>(std::max(n, 0)), '1') : X_in;
  if (family == "trivial") return build_trivial(n, L);
  if (family == "grover") {
    if (L < 2 || L % 2 != 0) throw std::invalid_argument("grover family needs even L >= 2");
    return build_grover(n, L / 2, X);
  }
  if (family == "modified_grover") {
    if (L < 4 || L % 4 != 0) throw std::invalid_argument("modified_grover family needs L divisible by 4");
    return build_modified_grover(n, X, L / 4);
  }
  if (family == "controlled_grover") {
    if (L < 4 || L % 4 != 0) throw std::invalid_argument("controlled_grover family needs L divisible by 4");
    return build_controlled_grover(n, X, L / 2, L);
  }
  throw std::invalid_argument("unknown family '" + family + "'");
}

Circuit load_circuit(const CircuitSource& src) {
  if (src.path) return parse_circuit(read_text_file(*src.path));
  return make_family_circuit(src.family, src.n, src.L, src.X);
}

void write_gap_scan_csv(std::ostream& out, const std::vector<GapScanRow>& rows) {
  out << kGapScanHeader << '\n';
  for (const auto& r : rows) {
    out << r.family << ',' << r.n << ',' << r.L << ',' << fmt(r.delta) << ','
        << (r.delta_tilde ? fmt(*r.delta_tilde) : "") << ',' << (r.ratio ? fmt(*r.ratio) : "") << '\n';
  }
}

std::vector<GapScanRow> read_gap_scan_csv(std::istream& in) {
  std::vector<GapScanRow> rows;
  for (const auto& c : read_csv(in, kGapScanHeader)) {
    GapScanRow r;
    r.family = c[0];
    r.n = parse_number<int>(c[1], "n");
    r.L = parse_number<int>(c[2], "L");
    r.delta = parse_number<double>(c[3], "delta");
    if (!c[4].empty()) r.delta_tilde = parse_number<double>(c[4], "delta_tilde");
    if (!c[5].empty()) r.ratio = parse_number<double>(c[5], "ratio");
    rows.push_back(r);
  }
  return rows;
}

void write_ledger_csv(std::ostream& out, const QueryLedger& ledger) {
  out << kLedgerHeader << '\n';
  for (const auto& e : ledger.entries) {
    out << fmt(e.t) << ',' << e.oracle_count << ',' << e.steps << ',' << fmt(e.error) << '\n';
  }
}

QueryLedger read_ledger_csv(std::istream& in) {
  QueryLedger ledger;
  for (const auto& c : read_csv(in, kLedgerHeader)) {
    ledger.entries.push_back({parse_number<double>(c[0], "t"), parse_number<long>(c[1], "oracle_count"),
                              parse_number<int>(c[2], "steps"), parse_number<double>(c[3], "error")});
  }
  return ledger;
}

}  // namespace clocklab::lab
