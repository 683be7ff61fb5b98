#include "sramntt/params.hpp"

#include <string>

#include "sramntt/bits.hpp"
#include "sramntt/error.hpp"
#include "sramntt/modmath.hpp"

namespace sramntt {

using modmath::inv_mod;
using modmath::pow_mod;

std::string_view to_string(Mode mode) noexcept {
  return mode == Mode::Cyclic ? "cyclic" : "negacyclic";
}

std::optional<Mode> parse_mode(std::string_view text) noexcept {
  if (text == "cyclic") return Mode::Cyclic;
  if (text == "negacyclic") return Mode::Negacyclic;
  return std::nullopt;
}

unsigned NttParams::log_n() const noexcept { return log2_floor(n); }

std::uint64_t find_primitive_root(std::uint64_t q, std::uint64_t order) {
  if (q < 2 || !modmath::is_prime(q)) {
    throw Error(Errc::NotPrime, std::to_string(q));
  }
  if (order == 0 || !is_power_of_two(order) || (q - 1) % order != 0) {
    throw Error(Errc::NoRootExists,
                "no element of order " + std::to_string(order) + " mod " + std::to_string(q));
  }
  if (order == 1) return 1;

  // Any h = g^((q-1)/order) with h^(order/2) = -1 has exact order `order`.
  const std::uint64_t cofactor = (q - 1) / order;
  std::uint64_t h = 0;
  for (std::uint64_t g = 2; g < q; ++g) {
    const std::uint64_t cand = pow_mod(g, cofactor, q);
    if (pow_mod(cand, order / 2, q) == q - 1) {
      h = cand;
      break;
    }
  }
  if (h == 0) {
    throw Error(Errc::NoRootExists, "search exhausted");
  }

  // The elements of exact order are h^k for odd k; take the smallest.
  const std::uint64_t h2 = modmath::mul_mod(h, h, q);
  std::uint64_t best = h;
  std::uint64_t cur = h;
  for (std::uint64_t k = 3; k < order; k += 2) {
    cur = modmath::mul_mod(cur, h2, q);
    if (cur < best) best = cur;
  }
  return best;
}

NttParams validate_params(std::uint64_t q, std::uint32_t n, unsigned width, Mode mode) {
  if (q < 2 || q >= (std::uint64_t{1} << 63) || !modmath::is_prime(q)) {
    throw Error(Errc::NotPrime, "q=" + std::to_string(q) + " is not a supported prime");
  }
  if (n < 2 || !is_power_of_two(n)) {
    throw Error(Errc::NotPowerOfTwo, "n=" + std::to_string(n) + " must be a power of two >= 2");
  }
  const std::uint64_t order = mode == Mode::Cyclic ? std::uint64_t{n} : 2 * std::uint64_t{n};
  if ((q - 1) % order != 0) {
    throw Error(Errc::NoRootExists, "q=" + std::to_string(q) + " is not 1 mod " +
                                        std::to_string(order));
  }
  const unsigned needed = bit_length(q) + 2;
  if (width < needed || width > kMaxWidth) {
    throw Error(Errc::InsufficientBitWidth,
                "N=" + std::to_string(width) + " but q needs N >= " + std::to_string(needed) +
                    (width > kMaxWidth ? " and N <= 64" : ""));
  }

  NttParams p;
  p.q = q;
  p.n = n;
  p.width = width;
  p.mode = mode;
  if (mode == Mode::Cyclic) {
    p.w = find_primitive_root(q, n);
  } else {
    const std::uint64_t psi = find_primitive_root(q, 2 * std::uint64_t{n});
    p.psi = psi;
    p.psi_inv = inv_mod(psi, q);
    p.w = modmath::mul_mod(psi, psi, q);
  }
  p.w_inv = inv_mod(p.w, q);
  p.n_inv = inv_mod(n % q, q);
  return p;
}

std::vector<std::uint64_t> stage_twiddles(const NttParams& params, unsigned stage, Direction dir) {
  const unsigned log_n = params.log_n();
  if (stage < 1 || stage > log_n) {
    throw Error(Errc::StageOutOfRange,
                "stage " + std::to_string(stage) + " not in [1, " + std::to_string(log_n) + "]");
  }
  const std::uint64_t root = dir == Direction::Forward ? params.w : params.w_inv;
  // Root of unity of order 2^stage, as the butterfly group size m = 2^stage.
  const std::uint64_t w_m = pow_mod(root, params.n >> stage, params.q);
  const std::uint64_t half_mask = (std::uint64_t{1} << (stage - 1)) - 1;

  std::vector<std::uint64_t> out(params.n / 2);
  for (std::uint64_t col = 0; col < out.size(); ++col) {
    // The B-slot word of this column: its coefficient index, then its
    // position in the bit-reversed butterfly network.
    const std::uint64_t index = rotr_bits(2 * col + 1, stage, log_n);
    const std::uint64_t position = reverse_bits(index, log_n);
    out[col] = pow_mod(w_m, position & half_mask, params.q);
  }
  return out;
}

}  // namespace sramntt
