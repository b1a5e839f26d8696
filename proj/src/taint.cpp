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

#include "hlsdift/taint.hpp"

#include <algorithm>

#include "hlsdift/error.hpp"

namespace hlsdift {

namespace {

void require_same_width(unsigned expected, const Tag& t) {
  if (t.width() != expected) {
    throw Error(ErrorKind::WidthMismatch,
                "tag width " + std::to_string(t.width()) + " != " +
                    std::to_string(expected));
  }
}

Tag union_of(std::span<const DiftValue> operands) {
  Tag acc = Tag::untainted(operands.front().tag.width());
  for (const auto& op : operands) acc = join(acc, op.tag);
  return acc;
}

bool untainted_zero(const DiftValue& v) {
  return !v.tag.tainted() && v.value.bits() == 0;
}

// An untainted OR operand whose ones cover every bit any tainted operand can
// contribute, so the exact OR is the same integer for all tainted values.
bool covers_tainted(const DiftValue& ones,
                    std::span<const DiftValue> operands) {
  if (ones.tag.tainted()) return false;
  if (to_int(ones.value) == -1) return true;
  const BitType ty = ones.value.type();
  if (ty.is_signed || ones.value.bits() != low_mask(ty.width)) return false;
  return std::all_of(operands.begin(), operands.end(), [&](const DiftValue& v) {
    if (!v.tag.tainted()) return true;
    const BitType other = v.value.type();
    return !other.is_signed && other.width <= ty.width;
  });
}

}  // namespace

Tag::Tag(unsigned width, std::uint32_t bits) : width_(width), bits_(bits) {
  if (width < 1 || width > kMaxTagWidth) {
    throw Error(ErrorKind::InvalidType,
                "tag width " + std::to_string(width) + " outside [1, 32]");
  }
  if ((bits & ~tag_mask(width)) != 0) {
    throw Error(ErrorKind::InvalidType,
                "tag bits " + std::to_string(bits) + " exceed width " +
                    std::to_string(width));
  }
}

std::string_view rule_name(PropagationRule rule) {
  return rule == PropagationRule::FineUnion ? "union" : "precise";
}

std::optional<PropagationRule> parse_rule(std::string_view name) {
  if (name == "union") return PropagationRule::FineUnion;
  if (name == "precise") return PropagationRule::FinePrecise;
  return std::nullopt;
}

std::string_view DiftMode::rule_label() const {
  return coarse_ ? std::string_view("none") : rule_name(rule_);
}

Tag join(const Tag& a, const Tag& b) {
  require_same_width(a.width(), b);
  return Tag(a.width(), a.bits() | b.bits());
}

Tag propagate(PropagationRule rule, OpKind kind,
              std::span<const DiftValue> operands) {
  if (is_memory_op(kind)) {
    throw Error(ErrorKind::TypeMismatch,
                "memory ops are propagated by the simulator");
  }
  if (operands.size() != op_arity(kind)) {
    throw Error(ErrorKind::ArityMismatch,
                std::string(op_name(kind)) + " expects " +
                    std::to_string(op_arity(kind)) + " operands, got " +
                    std::to_string(operands.size()));
  }
  for (const auto& op : operands) {
    require_same_width(operands.front().tag.width(), op.tag);
  }

  const unsigned width = operands.front().tag.width();
  if (rule == PropagationRule::FineUnion) return union_of(operands);

  switch (kind) {
    case OpKind::mul:
    case OpKind::bit_and:
      if (std::any_of(operands.begin(), operands.end(), untainted_zero)) {
        return Tag::untainted(width);
      }
      break;
    case OpKind::bit_or:
      for (const auto& op : operands) {
        if (covers_tainted(op, operands)) return Tag::untainted(width);
      }
      break;
    case OpKind::mux: {
      const DiftValue& chosen =
          operands[0].value.bits() != 0 ? operands[1] : operands[2];
      return join(operands[0].tag, chosen.tag);
    }
    default:
      break;
  }
  return union_of(operands);
}

Tag boundary_tag(unsigned tag_width, std::span<const Tag> input_tags,
                 std::span<const Tag> initial_memory_tags) {
  Tag acc = Tag::untainted(tag_width);
  for (const auto& t : input_tags) acc = join(acc, t);
  for (const auto& t : initial_memory_tags) acc = join(acc, t);
  return acc;
}

}  // namespace hlsdift
