#include "sramntt/periph.hpp"

namespace sramntt {

AdderOutput adder_step(ColumnPeripheralState state, bool a, bool b, bool subtract) noexcept {
  const int value = int{a} + int{b} - int{subtract} + int{state.carry} - int{state.borrow};
  AdderOutput out;
  out.sum = (value & 1) != 0;
  state.carry = value > 1;
  state.borrow = value < 0;
  out.state = state;
  return out;
}

Reduction reduction_select(const ColumnPeripheralState& state) noexcept {
  if (state.overflow_4q) return Reduction::SubtractQShift2;
  if (state.overflow_2q) return Reduction::SubtractQShift1;
  return Reduction::None;
}

PeripheralArray::PeripheralArray(std::size_t cols)
    : carry(cols),
      borrow(cols),
      tag(cols),
      cmp_2q(cols),
      cmp_4q(cols),
      overflow_2q(cols),
      overflow_4q(cols),
      overflow(cols) {}

void PeripheralArray::reset() {
  for (BitRow* r : {&carry, &borrow, &tag, &cmp_2q, &cmp_4q, &overflow_2q, &overflow_4q, &overflow}) {
    r->fill(false);
  }
}

void PeripheralArray::clear_carry() noexcept {
  carry.fill(false);
  borrow.fill(false);
}

BitRow PeripheralArray::add_counts(const BitRow& two, const BitRow& one, const BitRow& subtract) {
  // Positive part P = 2*two + one + carry (two and one are exclusive), P <= 3.
  // Negative part M = subtract + borrow, M <= 2. Result value = P - M.
  const std::size_t words = carry.words().size();
  BitRow sum(cols());
  auto& s = sum.words();
  auto& c = carry.words();
  auto& br = borrow.words();
  const auto& t = two.words();
  const auto& o = one.words();
  const auto& sb = subtract.words();
  for (std::size_t i = 0; i < words; ++i) {
    const std::uint64_t p0 = o[i] ^ c[i];
    const std::uint64_t p1 = t[i] | (o[i] & c[i]);
    const std::uint64_t m0 = sb[i] ^ br[i];
    const std::uint64_t m1 = sb[i] & br[i];
    s[i] = p0 ^ m0;
    // P - M >= 2
    const std::uint64_t ge2 = p1 & ~m1 & (p0 | ~m0);
    // P < M
    const std::uint64_t lt0 = (~p1 & m1) | (~(p1 ^ m1) & ~p0 & m0);
    c[i] = ge2;
    br[i] = lt0;
  }
  return sum;
}

BitRow PeripheralArray::accumulate(const RowReadout& in, const BitRow& subtract) {
  const BitRow one = ~(in.and_bits | in.nor_bits);
  return add_counts(in.and_bits, one, subtract);
}

BitRow PeripheralArray::accumulate(const BitRow& operand, const BitRow& subtract) {
  const BitRow zero(cols());
  return add_counts(zero, operand, subtract);
}

void PeripheralArray::compare(BitRow& cmp, const BitRow& value, bool ref) noexcept {
  // ref 0: a differing value bit is 1, so cmp' = cmp | v.
  // ref 1: a differing value bit is 0, so cmp' = cmp & v.
  if (ref) {
    cmp &= value;
  } else {
    cmp |= value;
  }
}

ColumnPeripheralState PeripheralArray::state(std::size_t col) const {
  ColumnPeripheralState s;
  s.carry = carry.get(col);
  s.borrow = borrow.get(col);
  s.tag = tag.get(col);
  s.cmp_2q = cmp_2q.get(col);
  s.cmp_4q = cmp_4q.get(col);
  s.overflow_2q = overflow_2q.get(col);
  s.overflow_4q = overflow_4q.get(col);
  s.overflow = overflow.get(col);
  return s;
}

}  // namespace sramntt
