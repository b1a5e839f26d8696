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

#ifndef HLSDIFT_BITVALUE_HPP
#define HLSDIFT_BITVALUE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace hlsdift {

/// Exact integer used for intermediate results. Every operand of a bit value
/// lies in [-2^63, 2^64), so 128 bits hold any sum, difference, quotient or
/// remainder exactly; products and left shifts are only needed modulo 2^64.
using Int = __int128;

constexpr unsigned kMaxValueWidth = 64;

/// Mask with the low `width` bits set (width in [0, 64]).
constexpr std::uint64_t low_mask(unsigned width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

/// Declared precision of a wire: bit count plus signedness.
struct BitType {
  unsigned width = 1;
  bool is_signed = false;

  friend bool operator==(const BitType&, const BitType&) = default;
};

/// Throws InvalidType unless 1 <= width <= 64.
BitType make_type(unsigned width, bool is_signed);
bool is_valid(BitType ty);

/// "u8", "s16", ...
std::string to_string(BitType ty);

/// A canonical bit pattern of a declared type. Signed values are stored as
/// two's complement patterns, so bits() < 2^width always holds.
class BitValue {
 public:
  BitValue() = default;

  /// Adopts an already-canonical pattern; throws InvalidType otherwise.
  static BitValue from_bits(BitType ty, std::uint64_t bits);

  BitType type() const { return ty_; }
  std::uint64_t bits() const { return bits_; }

  friend bool operator==(const BitValue&, const BitValue&) = default;

 private:
  BitValue(BitType ty, std::uint64_t bits) : ty_(ty), bits_(bits) {}

  friend BitValue make_bitvalue(BitType ty, Int raw);

  BitType ty_{};
  std::uint64_t bits_ = 0;
};

/// Wraps an arbitrary integer into `ty`: bits = raw mod 2^width.
BitValue make_bitvalue(BitType ty, Int raw);

/// Integer denoted by the pattern: two's complement when signed.
Int to_int(const BitValue& v);

enum class OpKind {
  add, sub, mul, div, mod,
  bit_and, bit_or, bit_xor,
  shl, shr,
  eq, ne, lt, le, gt, ge,
  bit_not, neg,
  mux, load, store,
};

std::string_view op_name(OpKind kind);
std::optional<OpKind> parse_op(std::string_view name);

bool is_binary_value_op(OpKind kind);
bool is_comparison(OpKind kind);
bool is_unary_op(OpKind kind);
bool is_memory_op(OpKind kind);
/// Number of arguments the op takes in the kernel IR.
std::size_t op_arity(OpKind kind);

/// The 1-bit unsigned type every comparison produces.
constexpr BitType kBoolType{1, false};

/// Exact result of `kind` on to_int(a), to_int(b), wrapped into result_ty.
/// Division truncates toward zero and the remainder takes the dividend's sign.
/// Shift amounts are b.bits() mod result_ty.width; shr is arithmetic when `a`
/// is signed. Throws DivisionByZero, or TypeMismatch for a comparison whose
/// result type is not u1 or for a non-binary kind.
BitValue eval_binop(OpKind kind, const BitValue& a, const BitValue& b,
                    BitType result_ty);

/// bit_not complements a's pattern within a's own width, then reinterprets it
/// in a's type and wraps into result_ty; neg wraps -to_int(a).
BitValue eval_unop(OpKind kind, const BitValue& a, BitType result_ty);

std::string int_to_string(Int v);

}  // namespace hlsdift

#endif  // HLSDIFT_BITVALUE_HPP
