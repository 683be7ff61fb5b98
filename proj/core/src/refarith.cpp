#include "sramntt/refarith.hpp"

#include <string>

#include "sramntt/bits.hpp"
#include "sramntt/error.hpp"
#include "sramntt/modmath.hpp"

namespace sramntt::ref {

using modmath::u128;

namespace {

void require_same(const ResidueElement& x, const ResidueElement& y) {
  if (x.q != y.q) {
    throw Error(Errc::ModulusMismatch,
                "q=" + std::to_string(x.q) + " vs q=" + std::to_string(y.q));
  }
}

void require_length(const NttParams& params, std::span<const std::uint64_t> v) {
  if (v.size() != params.n) {
    throw Error(Errc::LengthMismatch,
                "expected " + std::to_string(params.n) + " coefficients, got " +
                    std::to_string(v.size()));
  }
}

}  // namespace

ResidueElement ref_mod_add(ResidueElement x, ResidueElement y) {
  require_same(x, y);
  std::uint64_t s = x.value + y.value;
  if (s >= x.q) s -= x.q;
  return {s, x.q};
}

ResidueElement ref_mod_sub(ResidueElement x, ResidueElement y) {
  require_same(x, y);
  return {x.value >= y.value ? x.value - y.value : x.value + x.q - y.value, x.q};
}

ResidueElement ref_mod_mul(ResidueElement x, ResidueElement y) {
  require_same(x, y);
  return {static_cast<std::uint64_t>((static_cast<u128>(x.value) * y.value) % x.q), x.q};
}

BarrettContext make_barrett(std::uint64_t q) {
  if (q < 2 || q >= (std::uint64_t{1} << 32)) {
    throw Error(Errc::InvalidArgument, "Barrett oracle supports 2 <= q < 2^32");
  }
  BarrettContext ctx;
  ctx.q = q;
  ctx.k = 2 * bit_length(q);
  ctx.m = static_cast<std::uint64_t>((u128{1} << ctx.k) / q);
  return ctx;
}

BarrettSteps barrett_mul_steps(const BarrettContext& ctx, std::uint64_t x, std::uint64_t y) {
  BarrettSteps st;
  const u128 z = static_cast<u128>(x) * y;
  st.t = static_cast<std::uint64_t>((z * ctx.m) >> ctx.k);
  const u128 r = z - static_cast<u128>(st.t) * ctx.q;
  st.before_correction = static_cast<std::uint64_t>(r);
  st.result = st.before_correction >= ctx.q ? st.before_correction - ctx.q : st.before_correction;
  return st;
}

std::uint64_t barrett_mul(const BarrettContext& ctx, std::uint64_t x, std::uint64_t y) {
  return barrett_mul_steps(ctx, x, y).result;
}

MontgomeryContext make_montgomery(std::uint64_t q) {
  if (q < 3 || q % 2 == 0 || q >= (std::uint64_t{1} << 32)) {
    throw Error(Errc::InvalidArgument, "Montgomery oracle supports odd 3 <= q < 2^32");
  }
  MontgomeryContext ctx;
  ctx.q = q;
  ctx.r_bits = bit_length(q);
  ctx.r = std::uint64_t{1} << ctx.r_bits;
  // r^-1 mod q via the extended Euclid identity r*r_inv - q*k = 1.
  std::int64_t old_r = static_cast<std::int64_t>(ctx.r % q), r = static_cast<std::int64_t>(q);
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t quot = old_r / r;
    std::int64_t tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  const std::int64_t sq = static_cast<std::int64_t>(q);
  ctx.r_inv = static_cast<std::uint64_t>(((old_s % sq) + sq) % sq);
  ctx.k = static_cast<std::uint64_t>((static_cast<u128>(ctx.r) * ctx.r_inv - 1) / q);
  return ctx;
}

std::uint64_t montgomery_reduce(const MontgomeryContext& ctx, u128 t) {
  const std::uint64_t mask = ctx.r - 1;
  const std::uint64_t s = static_cast<std::uint64_t>((static_cast<std::uint64_t>(t) & mask) *
                                                     static_cast<u128>(ctx.k)) &
                          mask;
  const u128 sum = t + static_cast<u128>(s) * ctx.q;
  const std::uint64_t u = static_cast<std::uint64_t>(sum >> ctx.r_bits);
  return u >= ctx.q ? u - ctx.q : u;
}

std::uint64_t montgomery_mul(const MontgomeryContext& ctx, std::uint64_t x, std::uint64_t y) {
  const std::uint64_t a_bar = static_cast<std::uint64_t>((static_cast<u128>(x) * ctx.r) % ctx.q);
  const std::uint64_t b_bar = static_cast<std::uint64_t>((static_cast<u128>(y) * ctx.r) % ctx.q);
  const std::uint64_t c_bar = montgomery_reduce(ctx, static_cast<u128>(a_bar) * b_bar);
  return static_cast<std::uint64_t>((static_cast<u128>(c_bar) * ctx.r_inv) % ctx.q);
}

Polynomial direct_ntt(const NttParams& params, std::span<const std::uint64_t> a) {
  require_length(params, a);
  const std::uint64_t q = params.q;
  Polynomial weighted(a.begin(), a.end());
  if (params.mode == Mode::Negacyclic) {
    std::uint64_t pw = 1;
    for (auto& c : weighted) {
      c = modmath::mul_mod(c, pw, q);
      pw = modmath::mul_mod(pw, *params.psi, q);
    }
  }
  Polynomial out(params.n, 0);
  for (std::uint32_t j = 0; j < params.n; ++j) {
    const std::uint64_t step = modmath::pow_mod(params.w, j, q);
    std::uint64_t pw = 1;
    u128 acc = 0;
    for (std::uint32_t i = 0; i < params.n; ++i) {
      acc = (acc + static_cast<u128>(weighted[i]) * pw) % q;
      pw = modmath::mul_mod(pw, step, q);
    }
    out[j] = static_cast<std::uint64_t>(acc);
  }
  return out;
}

Polynomial direct_intt(const NttParams& params, std::span<const std::uint64_t> a_hat) {
  require_length(params, a_hat);
  const std::uint64_t q = params.q;
  Polynomial out(params.n, 0);
  std::uint64_t post = params.n_inv;
  for (std::uint32_t i = 0; i < params.n; ++i) {
    const std::uint64_t step = modmath::pow_mod(params.w_inv, i, q);
    std::uint64_t pw = 1;
    u128 acc = 0;
    for (std::uint32_t j = 0; j < params.n; ++j) {
      acc = (acc + static_cast<u128>(a_hat[j]) * pw) % q;
      pw = modmath::mul_mod(pw, step, q);
    }
    out[i] = modmath::mul_mod(static_cast<std::uint64_t>(acc), post, q);
    if (params.mode == Mode::Negacyclic) post = modmath::mul_mod(post, *params.psi_inv, q);
  }
  return out;
}

Polynomial schoolbook_polymul(const NttParams& params, std::span<const std::uint64_t> a,
                              std::span<const std::uint64_t> s) {
  require_length(params, a);
  require_length(params, s);
  const std::uint64_t q = params.q;
  const std::uint32_t n = params.n;
  Polynomial out(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      const std::uint64_t prod = modmath::mul_mod(a[i], s[j], q);
      const std::uint32_t k = (i + j) % n;
      const bool negate = params.mode == Mode::Negacyclic && i + j >= n;
      out[k] = negate ? (out[k] + q - prod) % q : (out[k] + prod) % q;
    }
  }
  return out;
}

Polynomial pointwise(const NttParams& params, std::span<const std::uint64_t> a,
                     std::span<const std::uint64_t> s) {
  require_length(params, a);
  require_length(params, s);
  Polynomial out(params.n);
  for (std::uint32_t i = 0; i < params.n; ++i) out[i] = modmath::mul_mod(a[i], s[i], params.q);
  return out;
}

}  // namespace sramntt::ref
