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

#include "hlsdift/tainted.hpp"

#include <array>

#include "hlsdift/error.hpp"

namespace hlsdift {

std::string_view on_exception_name(OnException policy) {
  return policy == OnException::record ? "record" : "halt";
}

std::optional<OnException> parse_on_exception(std::string_view name) {
  if (name == "record") return OnException::record;
  if (name == "halt") return OnException::halt;
  return std::nullopt;
}

DiftValue lift(const BitValue& v, const Tag& t) {
  return DiftValue{v, t};
}

DiftValue apply_binop(OpKind kind, const DiftValue& a, const DiftValue& b,
                      BitType result_ty, PropagationRule rule) {
  const std::array<DiftValue, 2> operands{a, b};
  Tag tag = propagate(rule, kind, operands);
  return DiftValue{eval_binop(kind, a.value, b.value, result_ty), tag};
}

DiftValue apply_unop(OpKind kind, const DiftValue& a, BitType result_ty,
                     PropagationRule rule) {
  const std::array<DiftValue, 1> operands{a};
  Tag tag = propagate(rule, kind, operands);
  return DiftValue{eval_unop(kind, a.value, result_ty), tag};
}

BitValue select_value(const BitValue& sel, const BitValue& t_branch,
                      const BitValue& f_branch, BitType result_ty) {
  const BitValue& chosen = sel.bits() != 0 ? t_branch : f_branch;
  return make_bitvalue(result_ty, to_int(chosen));
}

DiftValue apply_mux(const DiftValue& sel, const DiftValue& t_branch,
                    const DiftValue& f_branch, BitType result_ty,
                    PropagationRule rule) {
  const std::array<DiftValue, 3> operands{sel, t_branch, f_branch};
  Tag tag = propagate(rule, OpKind::mux, operands);
  return DiftValue{
      select_value(sel.value, t_branch.value, f_branch.value, result_ty), tag};
}

}  // namespace hlsdift
