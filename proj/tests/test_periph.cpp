#include <gtest/gtest.h>

#include <random>

#include "sramntt/periph.hpp"

using namespace sramntt;

namespace {

struct Expected {
  bool sum, carry, borrow;
};

// Signed reference: v = a + b - sub + carry - borrow = sum + 2*next.
Expected signed_oracle(bool carry, bool borrow, bool a, bool b, bool sub) {
  const int v = int(a) + int(b) - int(sub) + int(carry) - int(borrow);
  const int sum = v & 1;
  const int next = (v - sum) / 2;
  return {sum != 0, next == 1, next == -1};
}

bool fold_compare(unsigned value, unsigned ref, unsigned bits, bool init) {
  bool cmp = init;
  for (unsigned j = 0; j < bits; ++j) cmp = comparator_step(cmp, (value >> j) & 1, (ref >> j) & 1);
  return cmp;
}

}  // namespace

TEST(Periph, AdderTruthTable) {
  for (unsigned m = 0; m < 32; ++m) {
    const bool c = m & 1, br = m & 2, a = m & 4, b = m & 8, sub = m & 16;
    ColumnPeripheralState st;
    st.carry = c;
    st.borrow = br;
    const auto out = adder_step(st, a, b, sub);
    const auto want = signed_oracle(c, br, a, b, sub);
    EXPECT_EQ(out.sum, want.sum) << m;
    EXPECT_EQ(out.state.carry, want.carry) << m;
    EXPECT_EQ(out.state.borrow, want.borrow) << m;
  }
  const auto o = adder_step({}, true, true, false);
  EXPECT_FALSE(o.sum);
  EXPECT_TRUE(o.state.carry);
  const auto u = adder_step({}, false, false, true);
  EXPECT_TRUE(u.sum);
  EXPECT_TRUE(u.state.borrow);
}

TEST(Periph, ComparatorFold) {
  EXPECT_TRUE(fold_compare(5, 3, 3, false));
  EXPECT_FALSE(fold_compare(2, 7, 3, true));
  for (unsigned v = 0; v < 256; ++v) {
    for (unsigned r = 0; r < 256; ++r) {
      ASSERT_EQ(fold_compare(v, r, 8, true), v >= r);
      ASSERT_EQ(fold_compare(v, r, 8, false), v > r);
    }
  }
}

TEST(Periph, ReductionSelect) {
  ColumnPeripheralState s;
  EXPECT_EQ(reduction_select(s), Reduction::None);
  s.overflow_2q = true;
  EXPECT_EQ(reduction_select(s), Reduction::SubtractQShift1);
  s.overflow_4q = true;
  EXPECT_EQ(reduction_select(s), Reduction::SubtractQShift2);
  s.overflow_2q = false;
  EXPECT_EQ(reduction_select(s), Reduction::SubtractQShift2);
}

TEST(Periph, BitSlicedMatchesScalar) {
  std::mt19937_64 rng(9);
  constexpr std::size_t cols = 200;
  PeripheralArray arr(cols);
  for (int round = 0; round < 50; ++round) {
    BitRow a(cols), b(cols), sub(cols);
    for (std::size_t c = 0; c < cols; ++c) {
      a.set(c, rng() & 1);
      b.set(c, rng() & 1);
      sub.set(c, rng() & 1);
      arr.carry.set(c, rng() & 1);
      arr.borrow.set(c, rng() & 1);
    }
    std::vector<ColumnPeripheralState> before;
    for (std::size_t c = 0; c < cols; ++c) before.push_back(arr.state(c));
    const bool dual = round % 2 == 0;
    const BitRow sum = dual ? arr.accumulate(RowReadout{a & b, ~(a | b)}, sub)
                            : arr.accumulate(a, sub);
    for (std::size_t c = 0; c < cols; ++c) {
      const auto want = adder_step(before[c], a.get(c), dual && b.get(c), sub.get(c));
      ASSERT_EQ(sum.get(c), want.sum) << c;
      ASSERT_EQ(arr.carry.get(c), want.state.carry) << c;
      ASSERT_EQ(arr.borrow.get(c), want.state.borrow) << c;
    }
  }
}

TEST(Periph, BitSlicedCompare) {
  for (bool ref : {false, true}) {
    BitRow cmp(4);
    BitRow val(4);
    // (cmp, val) = (0,0) (1,0) (0,1) (1,1)
    cmp.set(1, true);
    cmp.set(3, true);
    val.set(2, true);
    val.set(3, true);
    BitRow out = cmp;
    PeripheralArray::compare(out, val, ref);
    for (std::size_t c = 0; c < 4; ++c) {
      EXPECT_EQ(out.get(c), comparator_step(cmp.get(c), val.get(c), ref));
    }
  }
}

TEST(Periph, Reset) {
  PeripheralArray arr(10);
  arr.carry.set(1, true);
  arr.overflow.set(2, true);
  arr.reset();
  EXPECT_EQ(arr.state(1), ColumnPeripheralState{});
  EXPECT_EQ(arr.state(2), ColumnPeripheralState{});
}
