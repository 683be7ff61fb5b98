#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "sramntt/bitrow.hpp"

namespace sramntt {

enum class MicroOp { Read, DualRead, Write, Latch };

std::string_view to_string(MicroOp op) noexcept;

struct TraceEvent {
  std::uint64_t cycle = 0;
  MicroOp op = MicroOp::Read;
  int row_a = -1;  // -1 when unused
  int row_b = -1;
  std::string_view phase;
};

using TraceHook = std::function<void(const TraceEvent&)>;

struct EventCounters {
  std::uint64_t single_activations = 0;
  std::uint64_t dual_activations = 0;
  std::uint64_t writes = 0;
  std::uint64_t senses = 0;   // column sense events
  std::uint64_t latches = 0;  // peripheral-only cycles

  EventCounters& operator+=(const EventCounters& o) noexcept;
  friend EventCounters operator-(EventCounters a, const EventCounters& b) noexcept {
    a.single_activations -= b.single_activations;
    a.dual_activations -= b.dual_activations;
    a.writes -= b.writes;
    a.senses -= b.senses;
    a.latches -= b.latches;
    return a;
  }
  bool operator==(const EventCounters&) const = default;
};

// Bit-line readout of a dual word-line activation: BL carries AND, BLB NOR.
struct RowReadout {
  BitRow and_bits;
  BitRow nor_bits;
};

// Rows of operand storage for operand width N: A, B, W words then 2N+2
// scratchpad rows.
constexpr std::size_t rows_for_width(unsigned width) noexcept { return 5U * width + 2U; }
constexpr std::size_t scratchpad_rows(unsigned width) noexcept { return 2U * width + 2U; }

/// Digital model of a 6T SRAM bank used as a bit-serial compute fabric.
///
/// Only columns [0, active_columns()) are powered; reads of gated columns
/// return zero, writes never reach them and they are not counted as sense
/// events. The bank also owns the cycle counter: bit-serial operations call
/// end_cycle() once per word-line step, and every micro-op is stamped with
/// the current cycle for the trace hook.
class SramBank {
 public:
  SramBank(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t active_columns() const noexcept { return active_; }
  void set_active_columns(std::size_t count);

  BitRow read_row(std::size_t row);
  // Single activation through the Tag switch: columns with gate=0 read zero.
  BitRow read_row(std::size_t row, const BitRow& gate);

  RowReadout read_two_rows(std::size_t row_a, std::size_t row_b);
  // Row A is disconnected from the bit lines in columns where gate_a is 0.
  RowReadout read_two_rows(std::size_t row_a, std::size_t row_b, const BitRow& gate_a);

  void write_row(std::size_t row, const BitRow& values, const BitRow& column_mask);
  void write_row(std::size_t row, const BitRow& values);

  // A cycle in which only the column peripherals act.
  void latch();

  void end_cycle(std::uint64_t count = 1) noexcept { cycle_ += count; }
  std::uint64_t cycle() const noexcept { return cycle_; }

  const EventCounters& counters() const noexcept { return counters_; }

  void set_trace_hook(TraceHook hook) { trace_ = std::move(hook); }
  // Label attached to subsequent trace events.
  void set_phase(std::string_view phase) noexcept { phase_ = phase; }
  std::string_view phase() const noexcept { return phase_; }

  // Direct cell access for test setup and inspection; not counted.
  bool cell(std::size_t row, std::size_t col) const;
  const BitRow& peek_row(std::size_t row) const;

  BitRow active_mask() const;

 private:
  void check_row(std::size_t row) const;
  void emit(MicroOp op, int row_a, int row_b);

  std::size_t rows_;
  std::size_t cols_;
  std::size_t active_;
  std::vector<BitRow> bits_;
  BitRow active_mask_;
  EventCounters counters_;
  std::uint64_t cycle_ = 0;
  TraceHook trace_;
  std::string_view phase_;
};

// RAII phase label.
class PhaseScope {
 public:
  PhaseScope(SramBank& bank, std::string_view phase) : bank_(bank), prev_(bank.phase()) {
    bank_.set_phase(phase);
  }
  ~PhaseScope() { bank_.set_phase(prev_); }
  PhaseScope(const PhaseScope&) = delete;
  PhaseScope& operator=(const PhaseScope&) = delete;

 private:
  SramBank& bank_;
  std::string_view prev_;
};

}  // namespace sramntt
