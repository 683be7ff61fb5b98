#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sramntt/bitserial.hpp"
#include "sramntt/params.hpp"
#include "sramntt/sram.hpp"

namespace sramntt {

enum class Slot { A, B };

// Physical address of a word: LSB picks the slot, the rest the column.
struct PhysicalAddress {
  std::uint64_t value = 0;

  std::uint64_t column() const noexcept { return value >> 1; }
  Slot slot() const noexcept { return (value & 1U) != 0 ? Slot::B : Slot::A; }
  bool operator==(const PhysicalAddress&) const = default;
};

// Index-to-address mapping of one butterfly stage. The index is the natural
// coefficient index; the address is the index rotated left by `stage` bits,
// which lands both members of every stage-s butterfly in one column.
struct AddressMap {
  std::uint32_t n = 0;
  unsigned log_n = 0;
  unsigned stage = 0;

  // Throws NotPowerOfTwo or StageOutOfRange.
  static AddressMap make(std::uint32_t n, unsigned stage);
};

PhysicalAddress addr_map(const AddressMap& map, std::uint64_t index);
std::uint64_t addr_unmap(const AddressMap& map, PhysicalAddress addr);

// Where each physical address goes between consecutive stages. The same
// permutation serves every stage: a one-bit left rotation of the address.
std::vector<std::uint32_t> interstage_permutation(std::uint32_t n);

std::uint64_t bit_reverse(std::uint64_t index, unsigned bits);

// Moves the stage outputs (S0 = A-slot results, S1 = B-slot results) into the
// A/B operand rows of the next stage. Per bit row: read both output rows,
// write both operand rows. 4N cycles.
OpResult route_stage(SramBank& bank, const BankLayout& layout, std::uint32_t n);

// Writes `values[label]` to the word at the stage-1 address of `label`.
OpResult load_by_label(SramBank& bank, const BankLayout& layout, std::uint32_t n,
                       std::span<const std::uint64_t> values);
std::vector<std::uint64_t> store_by_label(SramBank& bank, const BankLayout& layout,
                                          std::uint32_t n, OpResult* result = nullptr);

// Coefficient i goes to addr_map(stage 1, i); 2N cycles (A rows then B rows).
OpResult load_polynomial(SramBank& bank, const NttParams& params,
                         std::span<const std::uint64_t> a);
std::vector<std::uint64_t> store_polynomial(SramBank& bank, const NttParams& params,
                                            OpResult* result = nullptr);

// Writes stage_twiddles(params, stage, dir) into the W rows; N cycles.
OpResult load_twiddles(SramBank& bank, const NttParams& params, unsigned stage,
                       Direction dir = Direction::Forward);

// Plain-text tables for the trace command.
std::string placement_table(std::uint32_t n);
std::string permutation_table(std::uint32_t n);

}  // namespace sramntt
