#pragma once

#include <cstddef>

#include "sramntt/bitrow.hpp"
#include "sramntt/sram.hpp"

namespace sramntt {

// Latches of one column's near-memory peripheral.
struct ColumnPeripheralState {
  bool carry = false;
  bool borrow = false;
  bool tag = false;
  bool cmp_2q = false;
  bool cmp_4q = false;
  bool overflow_2q = false;
  bool overflow_4q = false;
  bool overflow = false;  // add/sub trial-phase flag

  bool operator==(const ColumnPeripheralState&) const = default;
};

struct AdderOutput {
  bool sum = false;
  ColumnPeripheralState state;
};

// a + b - subtract + carry - borrow; emits the LSB and re-derives the latches.
AdderOutput adder_step(ColumnPeripheralState state, bool a, bool b, bool subtract) noexcept;

// Keeps cmp_prev while value == ref, otherwise takes the value bit. Folded
// LSB to MSB from init 1 this yields value >= ref, from init 0 value > ref.
constexpr bool comparator_step(bool cmp_prev, bool value, bool ref) noexcept {
  return value == ref ? cmp_prev : value;
}

enum class Reduction { None, SubtractQShift1, SubtractQShift2 };

// overflow_4q wins over overflow_2q.
Reduction reduction_select(const ColumnPeripheralState& state) noexcept;

/// The peripherals of every column, bit-sliced: each latch is a BitRow with
/// one bit per column, so one call advances all columns by one cycle.
class PeripheralArray {
 public:
  explicit PeripheralArray(std::size_t cols);

  std::size_t cols() const noexcept { return carry.size(); }

  void reset();
  void clear_carry() noexcept;

  // One adder cycle per column. The operand pair arrives as a dual readout
  // (a+b is 2 where AND, 0 where NOR, else 1); `subtract` is the per-column
  // reduction bit.
  BitRow accumulate(const RowReadout& in, const BitRow& subtract);
  // Single operand (the other input reads as zero).
  BitRow accumulate(const BitRow& operand, const BitRow& subtract);

  // Comparator fold with a column-uniform reference bit.
  static void compare(BitRow& cmp, const BitRow& value, bool ref) noexcept;

  ColumnPeripheralState state(std::size_t col) const;

  BitRow carry;
  BitRow borrow;
  BitRow tag;
  BitRow cmp_2q;
  BitRow cmp_4q;
  BitRow overflow_2q;
  BitRow overflow_4q;
  BitRow overflow;

 private:
  BitRow add_counts(const BitRow& two, const BitRow& one, const BitRow& subtract);
};

}  // namespace sramntt
