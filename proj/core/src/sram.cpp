#include "sramntt/sram.hpp"

#include <string>

#include "sramntt/error.hpp"

namespace sramntt {

std::string_view to_string(MicroOp op) noexcept {
  switch (op) {
    case MicroOp::Read: return "read";
    case MicroOp::DualRead: return "dual_read";
    case MicroOp::Write: return "write";
    case MicroOp::Latch: return "latch";
  }
  return "?";
}

EventCounters& EventCounters::operator+=(const EventCounters& o) noexcept {
  single_activations += o.single_activations;
  dual_activations += o.dual_activations;
  writes += o.writes;
  senses += o.senses;
  latches += o.latches;
  return *this;
}

SramBank::SramBank(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), active_(cols), bits_(rows, BitRow(cols)), active_mask_(cols, true) {
  if (rows == 0 || cols < 2 || (cols & (cols - 1)) != 0) {
    throw Error(Errc::InvalidArgument, "bank needs rows > 0 and a power-of-two column count >= 2");
  }
}

void SramBank::set_active_columns(std::size_t count) {
  if (count == 0 || count > cols_) {
    throw Error(Errc::InvalidArgument, "active column count " + std::to_string(count) +
                                           " not in [1, " + std::to_string(cols_) + "]");
  }
  active_ = count;
  active_mask_.fill(false);
  for (std::size_t c = 0; c < count; ++c) active_mask_.set(c, true);
}

BitRow SramBank::active_mask() const { return active_mask_; }

void SramBank::check_row(std::size_t row) const {
  if (row >= rows_) {
    throw Error(Errc::RowOutOfRange,
                "row " + std::to_string(row) + " >= " + std::to_string(rows_));
  }
}

void SramBank::emit(MicroOp op, int row_a, int row_b) {
  if (trace_) trace_(TraceEvent{cycle_, op, row_a, row_b, phase_});
}

BitRow SramBank::read_row(std::size_t row) {
  check_row(row);
  ++counters_.single_activations;
  counters_.senses += active_;
  emit(MicroOp::Read, static_cast<int>(row), -1);
  return bits_[row] & active_mask_;
}

BitRow SramBank::read_row(std::size_t row, const BitRow& gate) {
  BitRow v = read_row(row);
  v &= gate;
  return v;
}

RowReadout SramBank::read_two_rows(std::size_t row_a, std::size_t row_b) {
  return read_two_rows(row_a, row_b, active_mask_);
}

RowReadout SramBank::read_two_rows(std::size_t row_a, std::size_t row_b, const BitRow& gate_a) {
  check_row(row_a);
  check_row(row_b);
  if (row_a == row_b) {
    throw Error(Errc::SameRow, "dual activation of row " + std::to_string(row_a));
  }
  ++counters_.dual_activations;
  counters_.senses += active_;
  emit(MicroOp::DualRead, static_cast<int>(row_a), static_cast<int>(row_b));
  const BitRow a = bits_[row_a] & gate_a;
  const BitRow& b = bits_[row_b];
  RowReadout out{a & b, ~(a | b)};
  out.and_bits &= active_mask_;
  out.nor_bits &= active_mask_;
  return out;
}

void SramBank::write_row(std::size_t row, const BitRow& values, const BitRow& column_mask) {
  check_row(row);
  ++counters_.writes;
  emit(MicroOp::Write, static_cast<int>(row), -1);
  const BitRow mask = column_mask & active_mask_;
  BitRow& cur = bits_[row];
  cur = (cur & ~mask) | (values & mask);
}

void SramBank::write_row(std::size_t row, const BitRow& values) {
  write_row(row, values, active_mask_);
}

void SramBank::latch() {
  ++counters_.latches;
  emit(MicroOp::Latch, -1, -1);
}

bool SramBank::cell(std::size_t row, std::size_t col) const {
  check_row(row);
  if (col >= cols_) {
    throw Error(Errc::IndexOutOfRange, "column " + std::to_string(col));
  }
  return bits_[row].get(col);
}

const BitRow& SramBank::peek_row(std::size_t row) const {
  check_row(row);
  return bits_[row];
}

}  // namespace sramntt
