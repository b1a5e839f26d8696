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

#ifndef HLSDIFT_TAINTED_HPP
#define HLSDIFT_TAINTED_HPP

#include <optional>
#include <string_view>

#include "hlsdift/bitvalue.hpp"
#include "hlsdift/taint.hpp"

namespace hlsdift {

enum class OnException { record, halt };

std::string_view on_exception_name(OnException policy);
std::optional<OnException> parse_on_exception(std::string_view name);

struct DiftConfig {
  unsigned tag_width = 1;
  DiftMode mode = DiftMode::fine(PropagationRule::FineUnion);
  OnException on_exception = OnException::record;
};

/// Pairs a value with its default taint.
DiftValue lift(const BitValue& v, const Tag& t);

// Value halves below are computed by eval_binop / eval_unop on the stripped
// values, so a tagged computation never diverges from the untagged one.

DiftValue apply_binop(OpKind kind, const DiftValue& a, const DiftValue& b,
                      BitType result_ty, PropagationRule rule);

/// Unary operators pass the operand tag through unchanged.
DiftValue apply_unop(OpKind kind, const DiftValue& a, BitType result_ty,
                     PropagationRule rule);

DiftValue apply_mux(const DiftValue& sel, const DiftValue& t_branch,
                    const DiftValue& f_branch, BitType result_ty,
                    PropagationRule rule);

/// Value of a mux without tags: the chosen branch re-wrapped into result_ty.
BitValue select_value(const BitValue& sel, const BitValue& t_branch,
                      const BitValue& f_branch, BitType result_ty);

}  // namespace hlsdift

#endif  // HLSDIFT_TAINTED_HPP
