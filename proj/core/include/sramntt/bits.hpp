#pragma once

#include <bit>
#include <cstdint>

namespace sramntt {

constexpr bool is_power_of_two(std::uint64_t v) noexcept { return std::has_single_bit(v); }

// floor(log2(v)); v must be non-zero.
constexpr unsigned log2_floor(std::uint64_t v) noexcept {
  return static_cast<unsigned>(std::bit_width(v)) - 1U;
}

constexpr unsigned bit_length(std::uint64_t v) noexcept {
  return static_cast<unsigned>(std::bit_width(v));
}

constexpr std::uint64_t low_mask(unsigned bits) noexcept {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

// Rotate the low `bits` bits of v left by `by` positions.
constexpr std::uint64_t rotl_bits(std::uint64_t v, unsigned by, unsigned bits) noexcept {
  if (bits == 0) return 0;
  by %= bits;
  if (by == 0) return v & low_mask(bits);
  return ((v << by) | (v >> (bits - by))) & low_mask(bits);
}

constexpr std::uint64_t rotr_bits(std::uint64_t v, unsigned by, unsigned bits) noexcept {
  if (bits == 0) return 0;
  return rotl_bits(v, bits - (by % bits), bits);
}

constexpr std::uint64_t reverse_bits(std::uint64_t v, unsigned bits) noexcept {
  std::uint64_t r = 0;
  for (unsigned i = 0; i < bits; ++i) {
    r = (r << 1) | ((v >> i) & 1U);
  }
  return r;
}

// Bit `j` of `v`, with negative or out-of-range positions reading as zero.
constexpr bool bit_at(std::uint64_t v, int j) noexcept {
  return j >= 0 && j < 64 && ((v >> j) & 1U) != 0;
}

}  // namespace sramntt
