#pragma once

#include <cstdint>

// Scalar modular helpers shared by parameter generation and the oracles.
namespace sramntt::modmath {

__extension__ using u128 = unsigned __int128;

constexpr std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) noexcept {
  return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % q);
}

constexpr std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t q) noexcept {
  std::uint64_t result = 1 % q;
  base %= q;
  while (exp != 0) {
    if (exp & 1U) result = mul_mod(result, base, q);
    base = mul_mod(base, base, q);
    exp >>= 1;
  }
  return result;
}

// Inverse of a modulo prime q (Fermat).
constexpr std::uint64_t inv_mod(std::uint64_t a, std::uint64_t q) noexcept {
  return pow_mod(a, q - 2, q);
}

// Deterministic Miller-Rabin; the base set is exact for all 64-bit inputs.
bool is_prime(std::uint64_t v) noexcept;

}  // namespace sramntt::modmath
