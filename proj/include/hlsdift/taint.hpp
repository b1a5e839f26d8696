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

#ifndef HLSDIFT_TAINT_HPP
#define HLSDIFT_TAINT_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "hlsdift/bitvalue.hpp"

namespace hlsdift {

constexpr unsigned kMaxTagWidth = 32;

/// A set of independent taint labels, one per bit. Zero means untainted.
class Tag {
 public:
  Tag() = default;
  /// Throws InvalidType for a width outside [1, 32] or bits that overflow it.
  Tag(unsigned width, std::uint32_t bits);

  static Tag untainted(unsigned width) { return Tag(width, 0); }

  unsigned width() const { return width_; }
  std::uint32_t bits() const { return bits_; }
  bool tainted() const { return bits_ != 0; }
  bool subset_of(const Tag& other) const {
    return (bits_ & ~other.bits_) == 0;
  }

  friend bool operator==(const Tag&, const Tag&) = default;

 private:
  unsigned width_ = 1;
  std::uint32_t bits_ = 0;
};

constexpr std::uint32_t tag_mask(unsigned width) {
  return static_cast<std::uint32_t>(low_mask(width));
}

/// Value/tag pair; the operand and result type of every tracked operator.
struct DiftValue {
  BitValue value;
  Tag tag;

  friend bool operator==(const DiftValue&, const DiftValue&) = default;
};

enum class PropagationRule { FineUnion, FinePrecise };

std::string_view rule_name(PropagationRule rule);  // "union" / "precise"
std::optional<PropagationRule> parse_rule(std::string_view name);

/// Granularity of tracking: per-operator with a rule, or a single tag at the
/// component boundary.
class DiftMode {
 public:
  static DiftMode fine(PropagationRule rule) { return DiftMode(false, rule); }
  static DiftMode coarse() {
    return DiftMode(true, PropagationRule::FineUnion);
  }

  bool is_coarse() const { return coarse_; }
  /// Only meaningful for fine mode.
  PropagationRule rule() const { return rule_; }

  std::string_view mode_name() const { return coarse_ ? "coarse" : "fine"; }
  /// "union", "precise", or "none" for coarse mode.
  std::string_view rule_label() const;

  friend bool operator==(const DiftMode&, const DiftMode&) = default;

 private:
  DiftMode(bool coarse, PropagationRule rule) : coarse_(coarse), rule_(rule) {}

  bool coarse_ = false;
  PropagationRule rule_ = PropagationRule::FineUnion;
};

/// Bitwise OR of the label sets. Throws WidthMismatch.
Tag join(const Tag& a, const Tag& b);

/// Result tag of a value op or mux. FineUnion joins every operand tag.
/// FinePrecise drops the taint when the result provably cannot depend on the
/// tainted operands:
///   - mul / and with an untainted zero operand;
///   - or with an untainted all-ones operand that covers every tainted operand
///     (signed -1, or unsigned all-ones at least as wide as each tainted
///     operand, which must be unsigned);
///   - mux keeps only the selector and the selected branch.
/// Throws WidthMismatch, ArityMismatch, or TypeMismatch for memory ops.
Tag propagate(PropagationRule rule, OpKind kind,
              std::span<const DiftValue> operands);

/// Join of every input and initial memory tag.
Tag boundary_tag(unsigned tag_width, std::span<const Tag> input_tags,
                 std::span<const Tag> initial_memory_tags);

}  // namespace hlsdift

#endif  // HLSDIFT_TAINT_HPP
