// Copyright 2026 The hlsdift Authors
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

#ifndef HLSDIFT_SRC_JSON_UTIL_HPP
#define HLSDIFT_SRC_JSON_UTIL_HPP

#include <cstdint>
#include <optional>

#include "hlsdift/bitvalue.hpp"
#include "json.hpp"

namespace hlsdift {

// JSON integers span [-2^63, 2^64); that is also the range of to_int.
template <typename Json>
std::optional<Int> json_to_int(const Json& v) {
  if (v.is_number_unsigned()) return static_cast<Int>(v.template get<std::uint64_t>());
  if (v.is_number_integer()) return static_cast<Int>(v.template get<std::int64_t>());
  return std::nullopt;
}

inline nlohmann::ordered_json int_to_json(Int v) {
  if (v < 0) return static_cast<std::int64_t>(v);
  return static_cast<std::uint64_t>(v);
}

}  // namespace hlsdift

#endif  // HLSDIFT_SRC_JSON_UTIL_HPP
