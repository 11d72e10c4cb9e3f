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

#include "clocklab/lab.hpp"

namespace clocklab::lab {
namespace {

constexpr double kSlack = 1e-9;

double shape(int L, double p) {
  const double l = static_cast<double>(L);
  return (1.0 + std::log(l)) / std::pow(l, p);
}

}  // namespace

TheoremReport theorem_report(const std::vector<GapScanRow>& scan, double gamma) {
  if (scan.empty()) throw std::invalid_argument("theorem report needs gap-scan rows");
  if (!(gamma > 0.0)) throw std::invalid_argument("theorem report needs gamma > 0");
  TheoremReport rep;
  rep.gamma = gamma;
  rep.amplified_verified = std::all_of(scan.begin(), scan.end(), [](const GapScanRow& r) {
    return r.ratio && *r.ratio >= 1.0 - 1e-6;
  });
  const double p1 = 1.0 / gamma;
  const double p2 = 2.0 / gamma;

  std::map<std::pair<std::string, int>, std::vector<GapScanRow>> groups;
  for (const auto& r : scan) {
    if (r.L < 1 || !(r.delta > 0.0)) throw std::invalid_argument("gap-scan rows need L >= 1 and delta > 0");
    groups[{r.family, r.n}].push_back(r);
  }
  rep.consistent_inv_gamma = rep.consistent_linear = rep.consistent_two_over_gamma = true;
  for (auto& [key, rows] : groups) {
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.L < b.L; });
    const GapScanRow& anchor = rows.front();
    const double c1 = anchor.delta / shape(anchor.L, p1);
    const double c2 = anchor.delta / shape(anchor.L, p2);
    const double c3 = anchor.delta / shape(anchor.L, 1.0);
    for (const auto& r : rows) {
      TheoremReport::Row row;
      row.family = r.family;
      row.n = r.n;
      row.L = r.L;
      row.delta = r.delta;
      row.bound_inv_gamma = c1 * shape(r.L, p1);
      row.bound_two_over_gamma = c2 * shape(r.L, p2);
      row.bound_linear = c3 * shape(r.L, 1.0);
      row.ok_inv_gamma = r.delta <= row.bound_inv_gamma * (1.0 + kSlack);
      row.ok_two_over_gamma = r.delta <= row.bound_two_over_gamma * (1.0 + kSlack);
      row.ok_linear = r.delta <= row.bound_linear * (1.0 + kSlack);
      rep.consistent_inv_gamma = rep.consistent_inv_gamma && row.ok_inv_gamma;
      rep.consistent_linear = rep.consistent_linear && row.ok_linear;
      rep.consistent_two_over_gamma = rep.consistent_two_over_gamma && row.ok_two_over_gamma;
      rep.rows.push_back(row);
    }
  }
  return rep;
}

json to_json(const TheoremReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"family", row.family},
                    {"n", row.n},
                    {"L", row.L},
                    {"delta", row.delta},
                    {"bound_inv_gamma", row.bound_inv_gamma},
                    {"bound_two_over_gamma", row.bound_two_over_gamma},
                    {"bound_linear", row.bound_linear},
                    {"ok_inv_gamma", row.ok_inv_gamma},
                    {"ok_two_over_gamma", row.ok_two_over_gamma},
                    {"ok_linear", row.ok_linear}});
  }
  json j{{"gamma", r.gamma},
         {"exponents", {{"inv_gamma", 1.0 / r.gamma}, {"two_over_gamma", 2.0 / r.gamma}, {"linear", 1.0}}},
         {"amplified_verified", r.amplified_verified},
         {"consistent_inv_gamma", r.consistent_inv_gamma},
         {"consistent_two_over_gamma", r.consistent_two_over_gamma},
         {"consistent_linear", r.consistent_linear},
         {"rows", rows}};
  return j;
}

}  // namespace clocklab::lab
