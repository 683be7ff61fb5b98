#include "sramntt/bitserial.hpp"

#include <initializer_list>
#include <string>

#include "sramntt/bits.hpp"
#include "sramntt/error.hpp"

namespace sramntt {

namespace {

struct Snapshot {
  EventCounters events;
  std::uint64_t cycle;
};

Snapshot snapshot(const SramBank& bank) { return {bank.counters(), bank.cycle()}; }

OpResult since(const SramBank& bank, const Snapshot& s) {
  return {bank.cycle() - s.cycle, bank.counters() - s.events};
}

void check_slot(const SramBank& bank, const WordSlot& s) {
  if (s.width == 0 || s.width > 64) {
    throw Error(Errc::WidthMismatch, "slot width " + std::to_string(s.width));
  }
  if (s.end_row() > bank.rows()) {
    throw Error(Errc::RowOutOfRange, "slot rows [" + std::to_string(s.base_row) + ", " +
                                         std::to_string(s.end_row()) + ") exceed bank");
  }
}

void check_slots(const SramBank& bank, std::initializer_list<WordSlot> slots) {
  const unsigned width = slots.begin()->width;
  for (const auto& s : slots) {
    check_slot(bank, s);
    if (s.width != width) {
      throw Error(Errc::WidthMismatch, "operand widths differ");
    }
  }
  for (auto i = slots.begin(); i != slots.end(); ++i) {
    for (auto j = std::next(i); j != slots.end(); ++j) {
      if (i->overlaps(*j)) {
        throw Error(Errc::SlotOverlapInvalid,
                    "rows " + std::to_string(i->base_row) + " and " + std::to_string(j->base_row));
      }
    }
  }
}

void check_headroom(std::uint64_t q, unsigned width) {
  if (q < 2 || bit_length(q) + 2 > width) {
    throw Error(Errc::HeadroomViolated, "q=" + std::to_string(q) + " needs N >= bitlength(q)+2, N=" +
                                            std::to_string(width));
  }
}

// Per-column reduction bit: `flags` where the reference bit is set.
BitRow gated(const BitRow& flags, bool ref_bit, const BitRow& zero) {
  return ref_bit ? flags : zero;
}

}  // namespace

OpResult pim_mod_add(SramBank& bank, WordSlot x, WordSlot y, WordSlot z, std::uint64_t q,
                     const ExecOptions& opts) {
  check_slots(bank, {x, y, z});
  check_headroom(q, x.width);
  const Snapshot start = snapshot(bank);
  const unsigned n_bits = x.width;
  const BitRow zero(bank.cols());
  PeripheralArray pe(bank.cols());

  {
    PhaseScope phase(bank, "mod_add.trial");
    // >= comparison so that x + y == q reduces to zero.
    pe.overflow.fill(!opts.fault_comparator_init);
    for (unsigned j = 0; j < n_bits; ++j) {
      const BitRow s = pe.accumulate(bank.read_two_rows(x.row(j), y.row(j)), zero);
      bank.write_row(z.row(j), s);
      PeripheralArray::compare(pe.overflow, s, bit_at(q, static_cast<int>(j)));
      bank.end_cycle();
    }
    // The carry out is sum bit N.
    bank.latch();
    PeripheralArray::compare(pe.overflow, pe.carry, bit_at(q, static_cast<int>(n_bits)));
    pe.clear_carry();
    bank.end_cycle();
  }
  {
    PhaseScope phase(bank, "mod_add.reduce");
    for (unsigned j = 0; j < n_bits; ++j) {
      const BitRow sub = gated(pe.overflow, bit_at(q, static_cast<int>(j)), zero);
      const BitRow s = pe.accumulate(bank.read_two_rows(x.row(j), y.row(j)), sub);
      bank.write_row(z.row(j), s);
      bank.end_cycle();
    }
    bank.latch();
    pe.clear_carry();
    bank.end_cycle();
  }
  return since(bank, start);
}

OpResult pim_mod_sub(SramBank& bank, WordSlot x, WordSlot y, WordSlot z, WordSlot temp,
                     std::uint64_t q, const ExecOptions& /*opts*/) {
  check_slots(bank, {x, y, z, temp});
  check_headroom(q, x.width);
  const Snapshot start = snapshot(bank);
  const unsigned n_bits = x.width;
  const BitRow zero(bank.cols());
  PeripheralArray pe(bank.cols());

  {
    PhaseScope phase(bank, "mod_sub.complement");
    pe.carry.fill(true);
    for (unsigned j = 0; j < n_bits; ++j) {
      // BLB of a single activation carries the inverted cell value.
      const BitRow inverted = ~bank.read_row(y.row(j));
      bank.write_row(temp.row(j), pe.accumulate(inverted, zero));
      bank.end_cycle();
    }
    bank.latch();
    pe.clear_carry();
    bank.end_cycle();
  }
  {
    PhaseScope phase(bank, "mod_sub.trial");
    BitRow sign = zero;
    for (unsigned j = 0; j < n_bits; ++j) {
      const BitRow s = pe.accumulate(bank.read_two_rows(x.row(j), temp.row(j)), zero);
      bank.write_row(z.row(j), s);
      if (j + 1 == n_bits) sign = s;
      bank.end_cycle();
    }
    // Underflow is the sign of the N-bit two's complement difference.
    bank.latch();
    pe.overflow = sign;
    pe.clear_carry();
    bank.end_cycle();
  }
  {
    PhaseScope phase(bank, "mod_sub.reduce");
    // Adding q mod 2^N is subtracting 2^N - q.
    const std::uint64_t neg_q = (low_mask(n_bits) - q + 1) & low_mask(n_bits);
    for (unsigned j = 0; j < n_bits; ++j) {
      const BitRow sub = gated(pe.overflow, bit_at(neg_q, static_cast<int>(j)), zero);
      const BitRow s = pe.accumulate(bank.read_two_rows(x.row(j), temp.row(j)), sub);
      bank.write_row(z.row(j), s);
      bank.end_cycle();
    }
    bank.latch();
    pe.clear_carry();
    bank.end_cycle();
  }
  return since(bank, start);
}

OpResult pim_mod_mul(SramBank& bank, WordSlot x, WordSlot y, WordSlot z, WordSlot temp,
                     std::uint64_t q, const ExecOptions& opts) {
  check_slots(bank, {x, y, z, temp});
  check_headroom(q, x.width);
  const Snapshot start = snapshot(bank);
  const unsigned n_bits = x.width;
  const BitRow zero(bank.cols());
  PeripheralArray pe(bank.cols());
  pe.reset();

  // Partial sums alternate between z and temp so the last shift-and-add
  // round writes temp and the final reduction writes z.
  WordSlot prev{};
  bool have_prev = false;
  for (unsigned round = 1; round <= n_bits; ++round) {
    const unsigned k = n_bits - round;
    const WordSlot out = (n_bits - round) % 2 == 0 ? temp : z;
    PhaseScope phase(bank, "mod_mul.round");

    // Tag load; the previous round's comparisons become this round's
    // reduction flags.
    pe.tag = bank.read_row(y.row(k));
    pe.overflow_2q = pe.cmp_2q;
    pe.overflow_4q = pe.cmp_4q;
    bank.end_cycle();

    // Flags were measured on the unshifted sum (>= q, >= 2q); after the
    // shift they call for subtracting 2q or 4q.
    const BitRow sel4 = pe.overflow_4q;
    const BitRow sel2 = pe.overflow_2q & ~pe.overflow_4q;
    pe.clear_carry();
    pe.cmp_2q.fill(true);
    pe.cmp_4q.fill(true);
    for (unsigned j = 0; j < n_bits; ++j) {
      const int jj = static_cast<int>(j);
      BitRow sub = gated(sel4, bit_at(q, jj - 2), zero);
      sub |= gated(sel2, bit_at(q, jj - 1), zero);
      const BitRow s = (!have_prev || j == 0)
                           ? pe.accumulate(bank.read_row(x.row(j), pe.tag), sub)
                           : pe.accumulate(bank.read_two_rows(x.row(j), prev.row(j - 1), pe.tag), sub);
      bank.write_row(out.row(j), s);
      PeripheralArray::compare(pe.cmp_2q, s, bit_at(q, jj));
      PeripheralArray::compare(pe.cmp_4q, s, bit_at(q, jj - 1));
      bank.end_cycle();
    }
    if (opts.on_mul_round) opts.on_mul_round(bank, pe, out, round);
    prev = out;
    have_prev = true;
  }

  {
    PhaseScope phase(bank, "mod_mul.final");
    bank.latch();
    pe.overflow_2q = pe.cmp_2q;
    pe.overflow_4q = pe.cmp_4q;
    bank.end_cycle();
    // The sum is below 3q here: subtract 2q or q, unshifted.
    const BitRow sel4 = pe.overflow_4q;
    const BitRow sel2 = pe.overflow_2q & ~pe.overflow_4q;
    pe.clear_carry();
    for (unsigned j = 0; j < n_bits; ++j) {
      const int jj = static_cast<int>(j);
      BitRow sub = gated(sel4, bit_at(q, jj - 1), zero);
      sub |= gated(sel2, bit_at(q, jj), zero);
      bank.write_row(z.row(j), pe.accumulate(bank.read_row(prev.row(j)), sub));
      bank.end_cycle();
    }
    if (opts.on_mul_round) opts.on_mul_round(bank, pe, z, n_bits + 1);
  }
  return since(bank, start);
}

OpResult pim_copy(SramBank& bank, WordSlot src, WordSlot dst) {
  check_slots(bank, {src, dst});
  const Snapshot start = snapshot(bank);
  PhaseScope phase(bank, "copy");
  for (unsigned j = 0; j < src.width; ++j) {
    const BitRow v = bank.read_row(src.row(j));
    bank.end_cycle();
    bank.write_row(dst.row(j), v);
    bank.end_cycle();
  }
  return since(bank, start);
}

OpResult pim_twos_complement(SramBank& bank, WordSlot src, WordSlot dst) {
  check_slots(bank, {src, dst});
  const Snapshot start = snapshot(bank);
  PhaseScope phase(bank, "twos_complement");
  const BitRow zero(bank.cols());
  PeripheralArray pe(bank.cols());
  pe.carry.fill(true);
  for (unsigned j = 0; j < src.width; ++j) {
    const BitRow inverted = ~bank.read_row(src.row(j));
    bank.write_row(dst.row(j), pe.accumulate(inverted, zero));
    bank.end_cycle();
  }
  bank.latch();
  bank.end_cycle();
  return since(bank, start);
}

OpResult write_words(SramBank& bank, WordSlot slot, std::span<const std::uint64_t> values,
                     std::string_view phase_label) {
  check_slot(bank, slot);
  if (values.size() > bank.cols()) {
    throw Error(Errc::LengthMismatch, std::to_string(values.size()) + " words for " +
                                          std::to_string(bank.cols()) + " columns");
  }
  for (auto v : values) {
    if ((v & ~low_mask(slot.width)) != 0) {
      throw Error(Errc::InvalidArgument,
                  std::to_string(v) + " does not fit " + std::to_string(slot.width) + " bits");
    }
  }
  const Snapshot start = snapshot(bank);
  PhaseScope phase(bank, phase_label);
  BitRow row(bank.cols());
  for (unsigned j = 0; j < slot.width; ++j) {
    row.fill(false);
    for (std::size_t c = 0; c < values.size(); ++c) {
      if ((values[c] >> j) & 1U) row.set(c, true);
    }
    bank.write_row(slot.row(j), row);
    bank.end_cycle();
  }
  return since(bank, start);
}

std::vector<std::uint64_t> read_words(SramBank& bank, WordSlot slot, OpResult* result,
                                      std::string_view phase_label) {
  check_slot(bank, slot);
  const Snapshot start = snapshot(bank);
  PhaseScope phase(bank, phase_label);
  std::vector<std::uint64_t> out(bank.active_columns(), 0);
  for (unsigned j = 0; j < slot.width; ++j) {
    const BitRow row = bank.read_row(slot.row(j));
    for (std::size_t c = 0; c < out.size(); ++c) {
      if (row.get(c)) out[c] |= std::uint64_t{1} << j;
    }
    bank.end_cycle();
  }
  if (result != nullptr) *result = since(bank, start);
  return out;
}

std::vector<std::uint64_t> peek_words(const SramBank& bank, WordSlot slot) {
  check_slot(bank, slot);
  std::vector<std::uint64_t> out(bank.cols(), 0);
  for (unsigned j = 0; j < slot.width; ++j) {
    const BitRow& row = bank.peek_row(slot.row(j));
    for (std::size_t c = 0; c < out.size(); ++c) {
      if (row.get(c)) out[c] |= std::uint64_t{1} << j;
    }
  }
  return out;
}

}  // namespace sramntt
