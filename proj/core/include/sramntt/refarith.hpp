#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sramntt/modmath.hpp"
#include "sramntt/params.hpp"

// Reference arithmetic. Nothing in here touches the simulated fabric; these
// are the oracles every in-memory result is checked against.
namespace sramntt::ref {

using Polynomial = std::vector<std::uint64_t>;

struct ResidueElement {
  std::uint64_t value = 0;
  std::uint64_t q = 0;

  bool operator==(const ResidueElement&) const = default;
};

ResidueElement ref_mod_add(ResidueElement x, ResidueElement y);
ResidueElement ref_mod_sub(ResidueElement x, ResidueElement y);
ResidueElement ref_mod_mul(ResidueElement x, ResidueElement y);

struct BarrettContext {
  std::uint64_t q = 0;
  unsigned k = 0;     // shift amount, 2 * bitlength(q)
  std::uint64_t m = 0;  // floor(2^k / q)
};

// q must be in [2, 2^32).
BarrettContext make_barrett(std::uint64_t q);

struct BarrettSteps {
  std::uint64_t t = 0;               // (z * m) >> k
  std::uint64_t before_correction = 0;  // z - t*q
  std::uint64_t result = 0;
};

std::uint64_t barrett_mul(const BarrettContext& ctx, std::uint64_t x, std::uint64_t y);
BarrettSteps barrett_mul_steps(const BarrettContext& ctx, std::uint64_t x, std::uint64_t y);

struct MontgomeryContext {
  std::uint64_t q = 0;
  std::uint64_t r = 0;      // smallest power of two > q
  unsigned r_bits = 0;
  std::uint64_t k = 0;      // (r * r_inv - 1) / q
  std::uint64_t r_inv = 0;  // r^-1 mod q
};

// q must be odd and in [3, 2^32).
MontgomeryContext make_montgomery(std::uint64_t q);

std::uint64_t montgomery_mul(const MontgomeryContext& ctx, std::uint64_t x, std::uint64_t y);

// Montgomery reduction of t < q*r: returns t * r^-1 mod q.
std::uint64_t montgomery_reduce(const MontgomeryContext& ctx, modmath::u128 t);

// O(n^2) transforms. In negacyclic mode the forward transform folds psi^i
// into coefficient i, so pointwise products correspond to x^n + 1 convolution.
Polynomial direct_ntt(const NttParams& params, std::span<const std::uint64_t> a);
Polynomial direct_intt(const NttParams& params, std::span<const std::uint64_t> a_hat);

Polynomial schoolbook_polymul(const NttParams& params, std::span<const std::uint64_t> a,
                              std::span<const std::uint64_t> s);

Polynomial pointwise(const NttParams& params, std::span<const std::uint64_t> a,
                     std::span<const std::uint64_t> s);

}  // namespace sramntt::ref
