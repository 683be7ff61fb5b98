#include <gtest/gtest.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "sramntt/error.hpp"
#include "sramntt/params.hpp"

using namespace sramntt;

namespace {

std::uint64_t slow_pow(std::uint64_t b, std::uint64_t e, std::uint64_t q) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r = r * b % q;
  return r;
}

// Brute force: smallest g whose multiplicative order is exactly `order`.
std::uint64_t brute_root(std::uint64_t q, std::uint64_t order) {
  for (std::uint64_t g = 2; g < q; ++g) {
    std::uint64_t x = g;
    std::uint64_t k = 1;
    while (x != 1) {
      x = x * g % q;
      ++k;
    }
    if (k == order) return g;
  }
  return 0;
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::InvalidArgument;
}

}  // namespace

TEST(Params, SmallCyclic) {
  const auto p = validate_params(17, 8, 7, Mode::Cyclic);
  EXPECT_EQ(p.w, 2u);
  EXPECT_EQ(slow_pow(2, 8, 17), 1u);
  EXPECT_EQ(slow_pow(2, 4, 17), 16u);
  EXPECT_EQ(p.w * p.w_inv % 17, 1u);
  EXPECT_EQ(8 * p.n_inv % 17, 1u);
  EXPECT_FALSE(p.psi.has_value());
  EXPECT_EQ(p.log_n(), 3u);
}

TEST(Params, Negacyclic) {
  const auto p = validate_params(17, 8, 7, Mode::Negacyclic);
  ASSERT_TRUE(p.psi.has_value());
  EXPECT_EQ(slow_pow(*p.psi, 8, 17), 16u);
  EXPECT_EQ(p.w, *p.psi * *p.psi % 17);
  EXPECT_EQ(*p.psi * *p.psi_inv % 17, 1u);
}

TEST(Params, Errors) {
  EXPECT_EQ(code_of([] { validate_params(17, 8, 5, Mode::Cyclic); }), Errc::InsufficientBitWidth);
  EXPECT_EQ(code_of([] { validate_params(15, 8, 7, Mode::Cyclic); }), Errc::NotPrime);
  EXPECT_EQ(code_of([] { validate_params(17, 6, 7, Mode::Cyclic); }), Errc::NotPowerOfTwo);
  EXPECT_EQ(code_of([] { validate_params(17, 32, 7, Mode::Cyclic); }), Errc::NoRootExists);
  EXPECT_EQ(code_of([] { validate_params(17, 16, 7, Mode::Negacyclic); }), Errc::NoRootExists);
  EXPECT_EQ(code_of([] { validate_params(17, 8, 65, Mode::Cyclic); }), Errc::InsufficientBitWidth);
  EXPECT_EQ(code_of([] { find_primitive_root(17, 3); }), Errc::NoRootExists);
}

TEST(Params, Deterministic) {
  EXPECT_EQ(validate_params(7681, 256, 15, Mode::Negacyclic),
            validate_params(7681, 256, 15, Mode::Negacyclic));
}

TEST(Params, PrimitiveRootsMatchBruteForce) {
  EXPECT_EQ(find_primitive_root(17, 8), 2u);
  EXPECT_EQ(find_primitive_root(17, 2), 16u);
  for (std::uint64_t order : {2u, 4u, 16u, 256u, 512u}) {
    EXPECT_EQ(find_primitive_root(7681, order), brute_root(7681, order)) << order;
  }
  for (std::uint64_t order : {2u, 1024u, 2048u}) {
    EXPECT_EQ(find_primitive_root(12289, order), brute_root(12289, order)) << order;
  }
}

TEST(Params, LargePrime) {
  const auto p = validate_params(2013265921, 1024, 33, Mode::Negacyclic);
  EXPECT_EQ(p.width, 33u);
}

// Independent model of the iterative butterfly loop: for every stage list
// which butterflies run and with which power of w, then place them by column.
std::vector<std::uint64_t> alg_twiddles(std::uint64_t q, std::uint64_t w, std::uint32_t n,
                                        unsigned stage) {
  unsigned log_n = 0;
  while ((1u << log_n) < n) ++log_n;
  const std::uint32_t half = n >> stage;  // partner distance
  const std::uint32_t groups = 1u << (stage - 1);
  std::vector<std::uint64_t> out(n / 2);
  for (std::uint32_t g = 0; g < groups; ++g) {
    // twiddle exponent of group g: bitrev(g) over (stage-1) bits scaled to the n-th root
    std::uint32_t rev = 0;
    for (unsigned b = 0; b + 1 < stage; ++b) rev |= ((g >> b) & 1u) << (stage - 2 - b);
    const std::uint64_t tw = slow_pow(w, std::uint64_t{rev} * (n >> stage), q);
    for (std::uint32_t j = 0; j < half; ++j) {
      const std::uint32_t top = g * 2 * half + j;
      // column = address of `top` under rotl(stage) >> 1
      const std::uint32_t addr = ((top << stage) | (top >> (log_n - stage))) & (n - 1);
      out[addr >> 1] = tw;
    }
  }
  return out;
}

TEST(Params, StageTwiddles) {
  const auto p = validate_params(17, 8, 7, Mode::Cyclic);
  EXPECT_EQ(stage_twiddles(p, 1), (std::vector<std::uint64_t>{1, 1, 1, 1}));
  auto s3 = stage_twiddles(p, 3);
  EXPECT_EQ(s3, (std::vector<std::uint64_t>{1, 4, 2, 8}));
  std::sort(s3.begin(), s3.end());
  EXPECT_EQ(s3, (std::vector<std::uint64_t>{1, 2, 4, 8}));
  EXPECT_EQ(stage_twiddles(validate_params(17, 2, 7, Mode::Cyclic), 1),
            std::vector<std::uint64_t>{1});
  EXPECT_THROW(stage_twiddles(p, 0), Error);
  EXPECT_THROW(stage_twiddles(p, 4), Error);
}

TEST(Params, StageTwiddlesMatchButterflyModel) {
  for (std::uint32_t n : {2u, 4u, 8u, 16u, 64u, 256u}) {
    const auto p = validate_params(7681, n, 15, Mode::Cyclic);
    for (unsigned s = 1; s <= p.log_n(); ++s) {
      EXPECT_EQ(stage_twiddles(p, s), alg_twiddles(p.q, p.w, n, s)) << n << " stage " << s;
      EXPECT_EQ(stage_twiddles(p, s, Direction::Inverse), alg_twiddles(p.q, p.w_inv, n, s));
    }
  }
}

TEST(Params, ModeNames) {
  EXPECT_EQ(parse_mode("cyclic"), Mode::Cyclic);
  EXPECT_EQ(parse_mode("negacyclic"), Mode::Negacyclic);
  EXPECT_FALSE(parse_mode("other").has_value());
  EXPECT_EQ(to_string(Mode::Negacyclic), "negacyclic");
}
