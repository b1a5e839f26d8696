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

#include <gtest/gtest.h>

#include <array>
#include <random>

#include "hlsdift/error.hpp"

namespace hlsdift {
namespace {

constexpr BitType u4{4, false};

DiftValue dv(BitType ty, Int value, unsigned tag_width, std::uint32_t tag) {
  return {make_bitvalue(ty, value), Tag(tag_width, tag)};
}

TEST(TagTest, JoinIsBitwiseOr) {
  EXPECT_EQ(join(Tag(4, 0b0101), Tag(4, 0b0011)).bits(), 0b0111U);
  const Tag t(4, 0b1001);
  EXPECT_EQ(join(Tag::untainted(4), t), t);
  EXPECT_EQ(join(t, t), t);
}

TEST(TagTest, JoinRejectsMixedWidths) {
  try {
    join(Tag(2, 1), Tag(3, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WidthMismatch);
  }
}

TEST(TagTest, ConstructorValidates) {
  EXPECT_THROW(Tag(0, 0), Error);
  EXPECT_THROW(Tag(33, 0), Error);
  EXPECT_THROW(Tag(2, 4), Error);
  EXPECT_NO_THROW(Tag(32, 0xffffffffU));
}

TEST(TagTest, JoinFormsASemilattice) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 5000; ++i) {
    const unsigned w = static_cast<unsigned>(rng() % 32 + 1);
    const Tag a(w, static_cast<std::uint32_t>(rng()) & tag_mask(w));
    const Tag b(w, static_cast<std::uint32_t>(rng()) & tag_mask(w));
    const Tag c(w, static_cast<std::uint32_t>(rng()) & tag_mask(w));
    EXPECT_EQ(join(a, b), join(b, a));
    EXPECT_EQ(join(join(a, b), c), join(a, join(b, c)));
    EXPECT_EQ(join(a, a), a);
    EXPECT_EQ(join(a, Tag::untainted(w)), a);
    EXPECT_TRUE(a.subset_of(join(a, b)));
  }
}

TEST(PropagateTest, UnionJoinsEveryOperand) {
  const std::array ops{dv(u4, 3, 2, 0b01), dv(u4, 5, 2, 0b10)};
  EXPECT_EQ(propagate(PropagationRule::FineUnion, OpKind::mul, ops).bits(), 0b11U);
  const std::array mux{dv(u4, 1, 2, 0b01), dv(u4, 7, 2, 0), dv(u4, 2, 2, 0b10)};
  EXPECT_EQ(propagate(PropagationRule::FineUnion, OpKind::mux, mux).bits(), 0b11U);
}

TEST(PropagateTest, PreciseKillsAndWithUntaintedZero) {
  const std::array ops{dv(u4, 0, 1, 0), dv(u4, 7, 1, 1)};
  EXPECT_EQ(propagate(PropagationRule::FinePrecise, OpKind::bit_and, ops).bits(), 0U);
  // Brute force: the result is 0 whatever the tainted operand holds.
  for (Int x = 0; x < 16; ++x) {
    const std::array probe{dv(u4, 0, 1, 0), dv(u4, x, 1, 1)};
    EXPECT_EQ(propagate(PropagationRule::FinePrecise, OpKind::bit_and, probe).bits(), 0U);
    EXPECT_EQ(eval_binop(OpKind::bit_and, probe[0].value, probe[1].value, u4).bits(), 0U);
  }
}

TEST(PropagateTest, PreciseKillsMulWithUntaintedZeroInEitherPosition) {
  const std::array ops{dv(u4, 9, 1, 1), dv(u4, 0, 1, 0)};
  EXPECT_EQ(propagate(PropagationRule::FinePrecise, OpKind::mul, ops).bits(), 0U);
  // A tainted zero does not kill.
  const std::array tainted_zero{dv(u4, 9, 1, 1), dv(u4, 0, 1, 1)};
  EXPECT_EQ(propagate(PropagationRule::FinePrecise, OpKind::mul, tainted_zero).bits(), 1U);
  // Nor does add.
  EXPECT_EQ(propagate(PropagationRule::FinePrecise, OpKind::add, ops).bits(), 1U);
}

TEST(PropagateTest, PreciseOrKillNeedsCoveringOnes) {
  const std::array same_width{dv(u4, 15, 1, 0), dv(u4, 6, 1, 1)};
  EXPECT_EQ(propagate(PropagationRule::FinePrecise, OpKind::bit_or, same_width).bits(), 0U);
  // u4 all-ones cannot mask a tainted u8 operand's upper bits.
  const std::array wider{dv(u4, 15, 1, 0), dv(BitType{8, false}, 6, 1, 1)};
  EXPECT_EQ(propagate(PropagationRule::FinePrecise, OpKind::bit_or, wider).bits(), 1U);
  // Nor a signed one, whose sign extends past bit 3.
  const std::array signed_taint{dv(u4, 15, 1, 0), dv(BitType{4, true}, 6, 1, 1)};
  EXPECT_EQ(propagate(PropagationRule::FinePrecise, OpKind::bit_or, signed_taint).bits(), 1U);
  // Signed -1 covers everything.
  const std::array minus_one{dv(BitType{2, true}, -1, 1, 0), dv(BitType{8, true}, 6, 1, 1)};
  EXPECT_EQ(propagate(PropagationRule::FinePrecise, OpKind::bit_or, minus_one).bits(), 0U);
}

TEST(PropagateTest, PreciseMuxKeepsSelectorAndChosenBranch) {
  const std::array mux{dv(u4, 1, 2, 0b01), dv(u4, 7, 2, 0), dv(u4, 2, 2, 0b10)};
  EXPECT_EQ(propagate(PropagationRule::FinePrecise, OpKind::mux, mux).bits(), 0b01U);
  const std::array other{dv(u4, 0, 2, 0), dv(u4, 7, 2, 0b01), dv(u4, 2, 2, 0b10)};
  EXPECT_EQ(propagate(PropagationRule::FinePrecise, OpKind::mux, other).bits(), 0b10U);
}

TEST(PropagateTest, UnaryOpsPassTagThrough) {
  const std::array one{dv(u4, 3, 2, 0b10)};
  for (auto rule : {PropagationRule::FineUnion, PropagationRule::FinePrecise}) {
    EXPECT_EQ(propagate(rule, OpKind::neg, one).bits(), 0b10U);
    EXPECT_EQ(propagate(rule, OpKind::bit_not, one).bits(), 0b10U);
  }
}

TEST(PropagateTest, Errors) {
  const std::array mixed{dv(u4, 1, 1, 0), dv(u4, 1, 2, 0)};
  try {
    propagate(PropagationRule::FineUnion, OpKind::add, mixed);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WidthMismatch);
  }
  const std::array one{dv(u4, 1, 1, 0)};
  try {
    propagate(PropagationRule::FineUnion, OpKind::add, one);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ArityMismatch);
  }
  const std::array two{dv(u4, 1, 1, 0), dv(u4, 1, 1, 0)};
  EXPECT_THROW(propagate(PropagationRule::FineUnion, OpKind::load, two), Error);
}

TEST(PropagateTest, PreciseIsWithinUnionOnRandomOperands) {
  std::mt19937_64 rng(5);
  const OpKind ops[] = {OpKind::add, OpKind::mul, OpKind::bit_and,
                        OpKind::bit_or, OpKind::bit_xor, OpKind::shl,
                        OpKind::lt, OpKind::mux, OpKind::neg};
  for (int i = 0; i < 5000; ++i) {
    const OpKind op = ops[rng() % std::size(ops)];
    std::vector<DiftValue> operands;
    for (std::size_t j = 0; j < op_arity(op); ++j) {
      const BitType ty{static_cast<unsigned>(rng() % 6 + 1), (rng() & 1) != 0};
      // Bias toward zero and all-ones values so the kill cases fire.
      Int raw = static_cast<Int>(rng() % 3 == 0 ? 0 : (rng() % 3 == 0 ? -1 : rng()));
      operands.push_back({make_bitvalue(ty, raw),
                          Tag(3, (rng() & 1) ? static_cast<std::uint32_t>(rng() & 7) : 0)});
    }
    const Tag u = propagate(PropagationRule::FineUnion, op, operands);
    const Tag p = propagate(PropagationRule::FinePrecise, op, operands);
    EXPECT_TRUE(p.subset_of(u));
  }
}

TEST(BoundaryTagTest, JoinsAllInputsAndMemory) {
  const std::array zeros{Tag(2, 0), Tag(2, 0)};
  EXPECT_EQ(boundary_tag(2, zeros, {}).bits(), 0U);
  const std::array ins{Tag(2, 0b01), Tag(2, 0b10)};
  const std::array mem{Tag(2, 0)};
  EXPECT_EQ(boundary_tag(2, ins, mem).bits(), 0b11U);
  const std::array single{Tag(2, 0b10)};
  EXPECT_EQ(boundary_tag(2, single, {}).bits(), 0b10U);
  const std::array wrong{Tag(3, 1)};
  EXPECT_THROW(boundary_tag(2, wrong, {}), Error);
}

TEST(DiftModeTest, Names) {
  EXPECT_EQ(DiftMode::coarse().mode_name(), "coarse");
  EXPECT_EQ(DiftMode::coarse().rule_label(), "none");
  EXPECT_EQ(DiftMode::fine(PropagationRule::FinePrecise).rule_label(), "precise");
  EXPECT_EQ(parse_rule("union"), PropagationRule::FineUnion);
  EXPECT_FALSE(parse_rule("exact").has_value());
}

}  // namespace
}  // namespace hlsdift
