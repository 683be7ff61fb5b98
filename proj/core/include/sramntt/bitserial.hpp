#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "sramntt/periph.hpp"
#include "sramntt/sram.hpp"

namespace sramntt {

// A little-endian word stored down a column: bit i sits in row base_row + i.
struct WordSlot {
  std::size_t base_row = 0;
  unsigned width = 0;

  std::size_t end_row() const noexcept { return base_row + width; }
  std::size_t row(unsigned bit) const noexcept { return base_row + bit; }
  bool overlaps(const WordSlot& o) const noexcept {
    return base_row < o.end_row() && o.base_row < end_row();
  }
  bool operator==(const WordSlot&) const = default;
};

/// Row assignment for operand width N:
///
///   rows [0, N)        A   butterfly upper input
///   rows [N, 2N)       B   butterfly lower input
///   rows [2N, 3N)      W   twiddle / per-column multiplier
///   rows [3N, 4N)      S0  scratch: product, then A+W*B
///   rows [4N, 5N)      S1  scratch: mul ping-pong buffer, then A-W*B
///   rows [5N, 5N+2)    guard rows (reserved)
struct BankLayout {
  unsigned width = 0;

  static BankLayout for_width(unsigned width) noexcept { return BankLayout{width}; }

  WordSlot a() const noexcept { return {0, width}; }
  WordSlot b() const noexcept { return {std::size_t{1} * width, width}; }
  WordSlot w() const noexcept { return {std::size_t{2} * width, width}; }
  WordSlot s0() const noexcept { return {std::size_t{3} * width, width}; }
  WordSlot s1() const noexcept { return {std::size_t{4} * width, width}; }
  std::size_t guard_row() const noexcept { return std::size_t{5} * width; }
  std::size_t scratch_base() const noexcept { return std::size_t{3} * width; }
  std::size_t rows() const noexcept { return rows_for_width(width); }
};

struct OpResult {
  std::uint64_t cycles = 0;
  EventCounters events;

  OpResult& operator+=(const OpResult& o) noexcept {
    cycles += o.cycles;
    events += o.events;
    return *this;
  }
  bool operator==(const OpResult&) const = default;
};

// Called after each multiplication round with the buffer just written.
// round is 1..N for the shift-and-add rounds and N+1 for the final reduction.
using MulRoundObserver =
    std::function<void(const SramBank&, const PeripheralArray&, WordSlot psum, unsigned round)>;

struct ExecOptions {
  // Fault injection: start the overflow comparator at 0 (strict >) instead of 1.
  bool fault_comparator_init = false;
  MulRoundObserver on_mul_round;
};

// Modular add: trial add + compare against q, then add with conditional -q.
// 2(N+1) cycles.
OpResult pim_mod_add(SramBank& bank, WordSlot x, WordSlot y, WordSlot z, std::uint64_t q,
                     const ExecOptions& opts = {});

// Modular subtract: y is complemented into `temp` first, then trial add with
// underflow capture and a second pass that adds q back where needed.
// 3(N+1) cycles. `temp` may not overlap the other slots.
OpResult pim_mod_sub(SramBank& bank, WordSlot x, WordSlot y, WordSlot z, WordSlot temp,
                     std::uint64_t q, const ExecOptions& opts = {});

// Modular multiply by MSB-first shift-and-add over y's bits with on-the-fly
// reduction. z and temp are the partial-sum ping-pong buffers; the result
// ends in z. (N+1)^2 cycles.
OpResult pim_mod_mul(SramBank& bank, WordSlot x, WordSlot y, WordSlot z, WordSlot temp,
                     std::uint64_t q, const ExecOptions& opts = {});

// Bitwise copy, one read cycle and one write cycle per bit: 2N cycles.
OpResult pim_copy(SramBank& bank, WordSlot src, WordSlot dst);

// dst = (2^width - src) mod 2^width via inverted readout and initial carry 1.
// width + 1 cycles.
OpResult pim_twos_complement(SramBank& bank, WordSlot src, WordSlot dst);

// Host-side helpers: transpose one value per column into/out of a slot via
// ordinary row writes/reads (counted like any other access, one cycle each).
OpResult write_words(SramBank& bank, WordSlot slot, std::span<const std::uint64_t> values,
                     std::string_view phase = "host.load");
std::vector<std::uint64_t> read_words(SramBank& bank, WordSlot slot, OpResult* result = nullptr,
                                      std::string_view phase = "host.store");

// Uncounted inspection for tests.
std::vector<std::uint64_t> peek_words(const SramBank& bank, WordSlot slot);

}  // namespace sramntt
