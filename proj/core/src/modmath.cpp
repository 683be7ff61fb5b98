#include "sramntt/modmath.hpp"

#include <array>

namespace sramntt::modmath {

bool is_prime(std::uint64_t v) noexcept {
  if (v < 2) return false;
  constexpr std::array<std::uint64_t, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto p : kBases) {
    if (v % p == 0) return v == p;
  }
  std::uint64_t d = v - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto a : kBases) {
    std::uint64_t x = pow_mod(a, d, v);
    if (x == 1 || x == v - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, v);
      if (x == v - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace sramntt::modmath
