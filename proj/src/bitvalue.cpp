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

#include "hlsdift/bitvalue.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "hlsdift/error.hpp"

namespace hlsdift {

namespace {

using UInt = unsigned __int128;

constexpr std::array<std::pair<OpKind, std::string_view>, 21> kOpNames{{
    {OpKind::add, "add"},     {OpKind::sub, "sub"},
    {OpKind::mul, "mul"},     {OpKind::div, "div"},
    {OpKind::mod, "mod"},     {OpKind::bit_and, "and"},
    {OpKind::bit_or, "or"},   {OpKind::bit_xor, "xor"},
    {OpKind::shl, "shl"},     {OpKind::shr, "shr"},
    {OpKind::eq, "eq"},       {OpKind::ne, "ne"},
    {OpKind::lt, "lt"},       {OpKind::le, "le"},
    {OpKind::gt, "gt"},       {OpKind::ge, "ge"},
    {OpKind::bit_not, "not"}, {OpKind::neg, "neg"},
    {OpKind::mux, "mux"},     {OpKind::load, "load"},
    {OpKind::store, "store"},
}};

}  // namespace

bool is_valid(BitType ty) {
  return ty.width >= 1 && ty.width <= kMaxValueWidth;
}

BitType make_type(unsigned width, bool is_signed) {
  BitType ty{width, is_signed};
  if (!is_valid(ty)) {
    throw Error(ErrorKind::InvalidType,
                "bit width " + std::to_string(width) + " outside [1, 64]");
  }
  return ty;
}

std::string to_string(BitType ty) {
  return (ty.is_signed ? "s" : "u") + std::to_string(ty.width);
}

BitValue BitValue::from_bits(BitType ty, std::uint64_t bits) {
  make_type(ty.width, ty.is_signed);
  if ((bits & ~low_mask(ty.width)) != 0) {
    throw Error(ErrorKind::InvalidType,
                "pattern " + std::to_string(bits) + " does not fit " +
                    to_string(ty));
  }
  return BitValue(ty, bits);
}

BitValue make_bitvalue(BitType ty, Int raw) {
  make_type(ty.width, ty.is_signed);
  // Truncating a two's complement 128-bit value is the mathematical modulus.
  auto bits = static_cast<std::uint64_t>(static_cast<UInt>(raw));
  return BitValue(ty, bits & low_mask(ty.width));
}

Int to_int(const BitValue& v) {
  const BitType ty = v.type();
  const Int bits = static_cast<Int>(v.bits());
  if (ty.is_signed && ((v.bits() >> (ty.width - 1)) & 1U) != 0) {
    return bits - (static_cast<Int>(1) << ty.width);
  }
  return bits;
}

std::string_view op_name(OpKind kind) {
  for (const auto& [k, name] : kOpNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<OpKind> parse_op(std::string_view name) {
  for (const auto& [k, n] : kOpNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

bool is_comparison(OpKind kind) {
  switch (kind) {
    case OpKind::eq: case OpKind::ne: case OpKind::lt:
    case OpKind::le: case OpKind::gt: case OpKind::ge:
      return true;
    default:
      return false;
  }
}

bool is_binary_value_op(OpKind kind) {
  switch (kind) {
    case OpKind::add: case OpKind::sub: case OpKind::mul:
    case OpKind::div: case OpKind::mod: case OpKind::bit_and:
    case OpKind::bit_or: case OpKind::bit_xor: case OpKind::shl:
    case OpKind::shr:
      return true;
    default:
      return is_comparison(kind);
  }
}

bool is_unary_op(OpKind kind) {
  return kind == OpKind::bit_not || kind == OpKind::neg;
}

bool is_memory_op(OpKind kind) {
  return kind == OpKind::load || kind == OpKind::store;
}

std::size_t op_arity(OpKind kind) {
  if (is_unary_op(kind)) return 1;
  if (is_binary_value_op(kind) || kind == OpKind::load) return 2;
  return 3;  // mux, store
}

BitValue eval_binop(OpKind kind, const BitValue& a, const BitValue& b,
                    BitType result_ty) {
  make_type(result_ty.width, result_ty.is_signed);
  if (!is_binary_value_op(kind)) {
    throw Error(ErrorKind::TypeMismatch,
                std::string(op_name(kind)) + " is not a binary value op");
  }
  if (is_comparison(kind) && result_ty != kBoolType) {
    throw Error(ErrorKind::TypeMismatch,
                std::string(op_name(kind)) + " must produce u1, not " +
                    to_string(result_ty));
  }

  const Int x = to_int(a);
  const Int y = to_int(b);
  const unsigned shift = static_cast<unsigned>(b.bits() % result_ty.width);

  auto wrap_unsigned = [&](UInt r) {
    return make_bitvalue(result_ty, static_cast<Int>(r));
  };

  switch (kind) {
    case OpKind::add:
      return wrap_unsigned(static_cast<UInt>(x) + static_cast<UInt>(y));
    case OpKind::sub:
      return wrap_unsigned(static_cast<UInt>(x) - static_cast<UInt>(y));
    case OpKind::mul:
      return wrap_unsigned(static_cast<UInt>(x) * static_cast<UInt>(y));
    case OpKind::div:
    case OpKind::mod:
      if (y == 0) {
        throw Error(ErrorKind::DivisionByZero,
                    std::string(op_name(kind)) + " by zero");
      }
      return make_bitvalue(result_ty, kind == OpKind::div ? x / y : x % y);
    case OpKind::bit_and:
      return make_bitvalue(result_ty, x & y);
    case OpKind::bit_or:
      return make_bitvalue(result_ty, x | y);
    case OpKind::bit_xor:
      return make_bitvalue(result_ty, x ^ y);
    case OpKind::shl:
      return wrap_unsigned(static_cast<UInt>(x) << shift);
    case OpKind::shr:
      if (a.type().is_signed) return make_bitvalue(result_ty, x >> shift);
      return make_bitvalue(result_ty, static_cast<Int>(a.bits() >> shift));
    case OpKind::eq: return make_bitvalue(result_ty, x == y);
    case OpKind::ne: return make_bitvalue(result_ty, x != y);
    case OpKind::lt: return make_bitvalue(result_ty, x < y);
    case OpKind::le: return make_bitvalue(result_ty, x <= y);
    case OpKind::gt: return make_bitvalue(result_ty, x > y);
    case OpKind::ge: return make_bitvalue(result_ty, x >= y);
    default:
      break;
  }
  throw Error(ErrorKind::TypeMismatch, "unhandled op");
}

BitValue eval_unop(OpKind kind, const BitValue& a, BitType result_ty) {
  make_type(result_ty.width, result_ty.is_signed);
  switch (kind) {
    case OpKind::bit_not: {
      const BitValue flipped =
          BitValue::from_bits(a.type(), ~a.bits() & low_mask(a.type().width));
      return make_bitvalue(result_ty, to_int(flipped));
    }
    case OpKind::neg:
      return make_bitvalue(result_ty, -to_int(a));
    default:
      throw Error(ErrorKind::TypeMismatch,
                  std::string(op_name(kind)) + " is not a unary op");
  }
}

std::string int_to_string(Int v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  UInt mag = negative ? static_cast<UInt>(0) - static_cast<UInt>(v)
                      : static_cast<UInt>(v);
  std::string out;
  while (mag != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace hlsdift
