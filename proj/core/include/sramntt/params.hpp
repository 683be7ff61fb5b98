#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace sramntt {

enum class Mode { Cyclic, Negacyclic };

enum class Direction { Forward, Inverse };

std::string_view to_string(Mode mode) noexcept;
std::optional<Mode> parse_mode(std::string_view text) noexcept;

// Largest supported operand width; words are read back into 64-bit integers.
inline constexpr unsigned kMaxWidth = 64;

struct NttParams {
  std::uint64_t q = 0;
  std::uint32_t n = 0;
  unsigned width = 0;  // operand bit width N
  std::uint64_t w = 0;
  std::uint64_t w_inv = 0;
  std::uint64_t n_inv = 0;
  std::optional<std::uint64_t> psi;  // negacyclic only
  std::optional<std::uint64_t> psi_inv;
  Mode mode = Mode::Cyclic;

  unsigned log_n() const noexcept;

  bool operator==(const NttParams&) const = default;
};

/// Checks the modulus, transform size and operand width, then derives all
/// roots and inverses. Errors, in check order: NotPrime, NotPowerOfTwo,
/// NoRootExists, InsufficientBitWidth (N < bitlength(q) + 2).
NttParams validate_params(std::uint64_t q, std::uint32_t n, unsigned width, Mode mode);

/// Smallest g in Z_q with g^order = 1 and g^(order/2) = q-1. `order` must be
/// a power of two dividing q-1, otherwise NoRootExists.
std::uint64_t find_primitive_root(std::uint64_t q, std::uint64_t order);

/// Twiddle factor per physical column for one butterfly stage (1-based).
/// Column c multiplies its B-slot word by entry c.
std::vector<std::uint64_t> stage_twiddles(const NttParams& params, unsigned stage,
                                          Direction dir = Direction::Forward);

}  // namespace sramntt
