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

#include "clocklab/common.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace clocklab {

ParseError::ParseError(int line, const std::string& message)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

std::size_t max_dimension() {
  constexpr std::size_t kDefault = std::size_t{1} << 22;
  const char* env = std::getenv("CLOCKLAB_MAX_DIM");
  if (env == nullptr || *env == '\0') {
    return kDefault;
  }
  std::size_t value = 0;
  const char* end = env + std::strlen(env);
  auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc() || ptr != end || value == 0) {
    throw std::invalid_argument("CLOCKLAB_MAX_DIM must be a positive integer, got '" +
                                std::string(env) + "'");
  }
  return value;
}

void check_dimension(std::size_t dim, const std::string& what) {
  const std::size_t cap = max_dimension();
  if (dim > cap) {
    throw CapacityError(what + " has dimension " + std::to_string(dim) +
                        ", above the cap of " + std::to_string(cap) +
                        " (set CLOCKLAB_MAX_DIM to raise it)");
  }
}

}  // namespace clocklab
