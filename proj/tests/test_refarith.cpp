#include <gtest/gtest.h>

#include <random>

#include "sramntt/error.hpp"
#include "sramntt/params.hpp"
#include "sramntt/refarith.hpp"

using namespace sramntt;
using namespace sramntt::ref;

namespace {

ResidueElement r17(std::uint64_t v) { return {v, 17}; }

bool is_prime_slow(std::uint64_t q) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> random_poly(std::mt19937_64& rng, std::uint32_t n, std::uint64_t q) {
  std::vector<std::uint64_t> v(n);
  for (auto& c : v) c = rng() % q;
  return v;
}

}  // namespace

TEST(RefArith, Examples) {
  EXPECT_EQ(ref_mod_add(r17(0), r17(0)).value, 0u);
  EXPECT_EQ(ref_mod_add(r17(9), r17(15)).value, 7u);
  EXPECT_EQ(ref_mod_add(r17(16), r17(1)).value, 0u);
  EXPECT_EQ(ref_mod_sub(r17(5), r17(5)).value, 0u);
  EXPECT_EQ(ref_mod_sub(r17(3), r17(9)).value, 11u);
  EXPECT_EQ(ref_mod_sub(r17(9), r17(3)).value, 6u);
  EXPECT_EQ(ref_mod_mul(r17(0), r17(13)).value, 0u);
  EXPECT_EQ(ref_mod_mul(r17(1), r17(13)).value, 13u);
  EXPECT_EQ(ref_mod_mul(r17(5), r17(13)).value, 14u);
  EXPECT_THROW(ref_mod_add(r17(1), {1, 13}), Error);
}

TEST(RefArith, BarrettExamples) {
  const auto c13 = make_barrett(13);
  EXPECT_EQ(c13.k, 8u);
  EXPECT_EQ(c13.m, 19u);
  EXPECT_EQ(barrett_mul(c13, 5, 7), 9u);
  const auto c17 = make_barrett(17);
  EXPECT_EQ(c17.k, 10u);
  EXPECT_EQ(c17.m, 60u);
  EXPECT_EQ(barrett_mul(c17, 16, 16), 1u);
  EXPECT_EQ(barrett_mul(c17, 0, 9), 0u);
}

TEST(RefArith, MontgomeryExamples) {
  const auto c17 = make_montgomery(17);
  EXPECT_EQ(c17.r, 32u);
  EXPECT_EQ(montgomery_mul(c17, 1, 1), 1u);
  EXPECT_EQ(montgomery_mul(c17, 5, 13), 14u);
  const auto c13 = make_montgomery(13);
  EXPECT_EQ(c13.r, 16u);
  EXPECT_EQ(montgomery_mul(c13, 12, 12), 1u);
}

TEST(RefArith, ReductionsExhaustiveSmallPrimes) {
  for (std::uint64_t q = 3; q < 1u << 12; q += 2) {
    if (!is_prime_slow(q)) continue;
    const auto b = make_barrett(q);
    const auto m = make_montgomery(q);
    const std::uint64_t step = q < 256 ? 1 : q / 61;
    for (std::uint64_t x = 0; x < q; x += step) {
      for (std::uint64_t y = 0; y < q; ++y) {
        const auto steps = barrett_mul_steps(b, x, y);
        ASSERT_LT(steps.before_correction, 2 * q);
        ASSERT_EQ(steps.result, x * y % q) << q << ' ' << x << ' ' << y;
        ASSERT_EQ(montgomery_mul(m, x, y), x * y % q) << q << ' ' << x << ' ' << y;
      }
    }
  }
}

TEST(RefArith, ReductionsRandomLarge) {
  std::mt19937_64 rng(3);
  for (std::uint64_t q : {7681ull, 12289ull, 2013265921ull, 4294967291ull}) {
    const auto b = make_barrett(q);
    const auto m = make_montgomery(q);
    for (int i = 0; i < 20000; ++i) {
      const std::uint64_t x = rng() % q;
      const std::uint64_t y = rng() % q;
      const auto want = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % q);
      ASSERT_EQ(barrett_mul(b, x, y), want);
      ASSERT_EQ(montgomery_mul(m, x, y), want);
    }
  }
  EXPECT_THROW(make_barrett(std::uint64_t{1} << 33), Error);
  EXPECT_THROW(make_montgomery(16), Error);
}

TEST(RefArith, DirectTransformExamples) {
  const auto p = validate_params(17, 8, 7, Mode::Cyclic);
  const Polynomial a{1, 1, 0, 0, 0, 0, 0, 0};
  const Polynomial a_hat{2, 3, 5, 9, 0, 16, 14, 10};
  EXPECT_EQ(direct_ntt(p, a), a_hat);
  EXPECT_EQ(direct_intt(p, a_hat), a);
  EXPECT_EQ(direct_ntt(p, Polynomial(8, 0)), Polynomial(8, 0));
  Polynomial delta(8, 0);
  delta[0] = 1;
  EXPECT_EQ(direct_ntt(p, delta), Polynomial(8, 1));
  EXPECT_THROW(direct_ntt(p, Polynomial(4, 0)), Error);
}

TEST(RefArith, PolymulExamples) {
  const Polynomial x{0, 1};
  EXPECT_EQ(schoolbook_polymul(validate_params(17, 2, 7, Mode::Negacyclic), x, x),
            (Polynomial{16, 0}));
  EXPECT_EQ(schoolbook_polymul(validate_params(17, 2, 7, Mode::Cyclic), x, x), (Polynomial{1, 0}));
  const auto p = validate_params(7681, 16, 15, Mode::Negacyclic);
  std::mt19937_64 rng(5);
  const auto s = random_poly(rng, 16, p.q);
  Polynomial delta(16, 0);
  delta[0] = 1;
  EXPECT_EQ(schoolbook_polymul(p, delta, s), s);
}

TEST(RefArith, TransformProperties) {
  std::mt19937_64 rng(11);
  for (const Mode mode : {Mode::Cyclic, Mode::Negacyclic}) {
    for (std::uint32_t n : {2u, 4u, 32u, 128u}) {
      const auto p = validate_params(7681, n, 15, mode);
      const auto a = random_poly(rng, n, p.q);
      const auto b = random_poly(rng, n, p.q);
      EXPECT_EQ(direct_intt(p, direct_ntt(p, a)), a);
      // linearity
      Polynomial sum(n);
      for (std::uint32_t i = 0; i < n; ++i) sum[i] = (a[i] + b[i]) % p.q;
      const auto fa = direct_ntt(p, a);
      const auto fb = direct_ntt(p, b);
      const auto fs = direct_ntt(p, sum);
      for (std::uint32_t i = 0; i < n; ++i) ASSERT_EQ(fs[i], (fa[i] + fb[i]) % p.q);
      // convolution theorem
      EXPECT_EQ(direct_intt(p, pointwise(p, fa, fb)), schoolbook_polymul(p, a, b));
    }
  }
}
