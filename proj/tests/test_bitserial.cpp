#include <gtest/gtest.h>

#include <random>
#include <tuple>

#include "sramntt/bitserial.hpp"
#include "sramntt/error.hpp"

using namespace sramntt;

namespace {

using Words = std::vector<std::uint64_t>;

std::uint64_t largest_prime_below(std::uint64_t limit) {
  for (std::uint64_t q = limit - 1;; --q) {
    bool prime = q > 1;
    for (std::uint64_t d = 2; d * d <= q && prime; ++d) prime = q % d != 0;
    if (prime) return q;
  }
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}

struct Rig {
  SramBank bank;
  BankLayout l;
  Rig(unsigned width, std::size_t cols) : bank(rows_for_width(width), cols), l{width} {}
};

enum class Op { Add, Sub, Mul };

OpResult run(Rig& r, Op op, std::uint64_t q, const ExecOptions& opts = {}) {
  switch (op) {
    case Op::Add: return pim_mod_add(r.bank, r.l.a(), r.l.b(), r.l.s0(), q, opts);
    case Op::Sub: return pim_mod_sub(r.bank, r.l.a(), r.l.b(), r.l.s0(), r.l.s1(), q, opts);
    case Op::Mul: return pim_mod_mul(r.bank, r.l.a(), r.l.b(), r.l.s0(), r.l.s1(), q, opts);
  }
  return {};
}

std::uint64_t oracle(Op op, std::uint64_t x, std::uint64_t y, std::uint64_t q) {
  switch (op) {
    case Op::Add: return (x + y) % q;
    case Op::Sub: return (x + q - y) % q;
    case Op::Mul: return mulmod(x, y, q);
  }
  return 0;
}

Words compute(Op op, unsigned width, std::uint64_t q, const Words& x, const Words& y) {
  std::size_t cols = 2;
  while (cols < x.size()) cols <<= 1;
  Rig r(width, cols);
  r.bank.set_active_columns(x.size());
  write_words(r.bank, r.l.a(), x);
  write_words(r.bank, r.l.b(), y);
  run(r, op, q);
  auto z = peek_words(r.bank, r.l.s0());
  z.resize(x.size());
  return z;
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return Errc::InvalidArgument;
}

}  // namespace

class Exhaustive : public ::testing::TestWithParam<std::tuple<Op, std::uint64_t, unsigned>> {};

TEST_P(Exhaustive, AllPairs) {
  const auto [op, q, width] = GetParam();
  Words x;
  Words y;
  for (std::uint64_t a = 0; a < q; ++a) {
    for (std::uint64_t b = 0; b < q; ++b) {
      x.push_back(a);
      y.push_back(b);
    }
  }
  const auto z = compute(op, width, q, x, y);
  for (std::size_t i = 0; i < x.size(); ++i) {
    ASSERT_EQ(z[i], oracle(op, x[i], y[i], q)) << x[i] << ", " << y[i];
  }
}

INSTANTIATE_TEST_SUITE_P(SmallFields, Exhaustive,
                         ::testing::Combine(::testing::Values(Op::Add, Op::Sub, Op::Mul),
                                            ::testing::Values(13, 17, 31),
                                            ::testing::Values(7, 8)));

TEST(BitSerial, Examples) {
  EXPECT_EQ(compute(Op::Add, 7, 17, {9, 9, 0}, {15, 8, 0}), (Words{7, 0, 0}));
  EXPECT_EQ(compute(Op::Sub, 7, 17, {3, 16, 5}, {9, 1, 5}), (Words{11, 15, 0}));
  EXPECT_EQ(compute(Op::Mul, 7, 17, {5, 7, 16}, {13, 0, 16}), (Words{14, 0, 1}));
}

TEST(BitSerial, RandomWidePrimes) {
  std::mt19937_64 rng(21);
  for (const auto& [q, width] :
       {std::pair<std::uint64_t, unsigned>{7681, 15}, {12289, 16}, {2013265921, 33},
        {(std::uint64_t{1} << 61) - 1, 64}}) {
    Words x(1024);
    Words y(1024);
    for (auto& v : x) v = rng() % q;
    for (auto& v : y) v = rng() % q;
    x[0] = y[0] = q - 1;
    for (Op op : {Op::Add, Op::Sub, Op::Mul}) {
      const auto z = compute(op, width, q, x, y);
      for (std::size_t i = 0; i < x.size(); ++i) {
        ASSERT_EQ(z[i], oracle(op, x[i], y[i], q)) << "q=" << q << " i=" << i;
      }
    }
  }
}

TEST(BitSerial, CycleFormulas) {
  for (unsigned n : {8u, 14u, 16u, 24u, 32u}) {
    const std::uint64_t q = largest_prime_below(std::uint64_t{1} << (n - 2));
    Rig r(n, 16);
    const std::uint64_t N = n;
    EXPECT_EQ(run(r, Op::Add, q).cycles, 2 * (N + 1));
    EXPECT_EQ(run(r, Op::Sub, q).cycles, 3 * (N + 1));
    EXPECT_EQ(run(r, Op::Mul, q).cycles, (N + 1) * (N + 1));
    EXPECT_EQ(pim_copy(r.bank, r.l.a(), r.l.w()).cycles, 2 * N);
    EXPECT_EQ(pim_twos_complement(r.bank, r.l.a(), r.l.w()).cycles, N + 1);
  }
}

TEST(BitSerial, EventProfiles) {
  const unsigned n = 14;
  const std::uint64_t N = n;
  Rig r(n, 8);
  r.bank.set_active_columns(4);
  auto events = [&](auto&& fn) {
    const auto before = r.bank.counters();
    fn();
    return r.bank.counters() - before;
  };
  const auto mul = events([&] { run(r, Op::Mul, 4093); });
  EXPECT_EQ(mul.single_activations, 4 * N - 1);
  EXPECT_EQ(mul.dual_activations, (N - 1) * (N - 1));
  EXPECT_EQ(mul.writes, N * (N + 1));
  EXPECT_EQ(mul.latches, 1u);
  EXPECT_EQ(mul.senses, 4 * (mul.single_activations + mul.dual_activations));
  const auto add = events([&] { run(r, Op::Add, 4093); });
  EXPECT_EQ(add, (EventCounters{0, 2 * N, 2 * N, 4 * 2 * N, 2}));
  const auto sub = events([&] { run(r, Op::Sub, 4093); });
  EXPECT_EQ(sub, (EventCounters{N, 2 * N, 3 * N, 4 * 3 * N, 3}));
  const auto copy = events([&] { pim_copy(r.bank, r.l.a(), r.l.w()); });
  EXPECT_EQ(copy, (EventCounters{N, 0, N, 4 * N, 0}));
}

TEST(BitSerial, ZeroOperands) {
  const Words zeros(8, 0);
  for (Op op : {Op::Add, Op::Sub, Op::Mul}) EXPECT_EQ(compute(op, 7, 17, zeros, zeros), zeros);
}

TEST(BitSerial, TraceIsDataIndependent) {
  std::mt19937_64 rng(4);
  const std::uint64_t q = 7681;
  for (Op op : {Op::Add, Op::Sub, Op::Mul}) {
    std::vector<std::tuple<std::uint64_t, MicroOp, int, int>> first;
    for (int trial = 0; trial < 20; ++trial) {
      Rig r(15, 32);
      Words x(32);
      Words y(32);
      for (auto& v : x) v = rng() % q;
      for (auto& v : y) v = trial == 0 ? 0 : rng() % q;
      write_words(r.bank, r.l.a(), x);
      write_words(r.bank, r.l.b(), y);
      std::vector<std::tuple<std::uint64_t, MicroOp, int, int>> trace;
      r.bank.set_trace_hook([&](const TraceEvent& e) {
        trace.emplace_back(e.cycle, e.op, e.row_a, e.row_b);
      });
      run(r, op, q);
      if (trial == 0) {
        first = trace;
      } else {
        ASSERT_EQ(trace, first);
      }
    }
  }
}

TEST(BitSerial, ColumnsAreIndependent) {
  std::mt19937_64 rng(8);
  const std::uint64_t q = 7681;
  Words x(64);
  Words y(64);
  for (auto& v : x) v = rng() % q;
  for (auto& v : y) v = rng() % q;
  for (Op op : {Op::Add, Op::Sub, Op::Mul}) {
    const auto all = compute(op, 15, q, x, y);
    for (std::size_t c = 0; c < 64; c += 7) {
      EXPECT_EQ(compute(op, 15, q, {x[c], 0}, {y[c], q - 1})[0], all[c]);
    }
  }
}

TEST(BitSerial, MultiplierPartialSumsStayBounded) {
  std::mt19937_64 rng(12);
  for (const auto& [q, width] :
       {std::pair<std::uint64_t, unsigned>{13, 6}, {17, 7}, {7681, 15}, {12289, 16}}) {
    Rig r(width, 256);
    Words x(256);
    Words y(256);
    for (auto& v : x) v = rng() % q;
    for (auto& v : y) v = rng() % q;
    x[0] = y[0] = q - 1;
    write_words(r.bank, r.l.a(), x);
    write_words(r.bank, r.l.b(), y);
    unsigned rounds = 0;
    Words prev(256, 0);
    ExecOptions opts;
    opts.on_mul_round = [&](const SramBank& bank, const PeripheralArray& pe, WordSlot psum,
                            unsigned round) {
      ++rounds;
      const auto p = peek_words(bank, psum);
      EXPECT_TRUE(pe.carry.none());
      for (std::size_t c = 0; c < 256; ++c) {
        // The shift drops bit N-1 of the previous sum; the borrow latch
        // balances it, so the stored word is exact.
        const bool dropped = round <= width && ((prev[c] >> (width - 1)) & 1) != 0;
        ASSERT_EQ(pe.borrow.get(c), dropped) << "round " << round;
        if (round <= width) {
          const std::uint64_t prefix = y[c] >> (width - round);
          ASSERT_LT(p[c], 3 * q);
          ASSERT_EQ(p[c] % q, mulmod(x[c], prefix, q)) << "round " << round;
        } else {
          ASSERT_EQ(p[c], mulmod(x[c], y[c], q));
        }
      }
      prev = p;
    };
    run(r, Op::Mul, q, opts);
    EXPECT_EQ(rounds, width + 1);
  }
}

TEST(BitSerial, FaultInjectionBreaksAdd) {
  Rig r(7, 4);
  write_words(r.bank, r.l.a(), Words{9, 1, 2, 3});
  write_words(r.bank, r.l.b(), Words{8, 1, 2, 3});
  ExecOptions opts;
  opts.fault_comparator_init = true;
  run(r, Op::Add, 17, opts);
  EXPECT_NE(peek_words(r.bank, r.l.s0())[0], 0u);  // 9+8 == q needs the >= comparator
}

TEST(BitSerial, CopyAndTwosComplement) {
  Rig r(4, 4);
  write_words(r.bank, r.l.a(), Words{0, 1, 6, 15});
  pim_copy(r.bank, r.l.a(), r.l.w());
  EXPECT_EQ(peek_words(r.bank, r.l.w()), (Words{0, 1, 6, 15}));
  pim_twos_complement(r.bank, r.l.a(), r.l.s0());
  EXPECT_EQ(peek_words(r.bank, r.l.s0()), (Words{0, 15, 10, 1}));
  Rig z(14, 4);
  EXPECT_EQ(pim_copy(z.bank, z.l.a(), z.l.b()).cycles, 28u);
  EXPECT_EQ(peek_words(z.bank, z.l.b()), (Words{0, 0, 0, 0}));
}

TEST(BitSerial, HostIo) {
  Rig r(8, 8);
  r.bank.set_active_columns(3);
  const auto w = write_words(r.bank, r.l.a(), Words{1, 2, 255});
  EXPECT_EQ(w.cycles, 8u);
  OpResult io;
  EXPECT_EQ(read_words(r.bank, r.l.a(), &io), (Words{1, 2, 255}));
  EXPECT_EQ(io.cycles, 8u);
  EXPECT_EQ(code_of([&] { write_words(r.bank, r.l.a(), Words{256}); }), Errc::InvalidArgument);
}

TEST(BitSerial, Errors) {
  Rig r(7, 4);
  const auto& l = r.l;
  EXPECT_EQ(code_of([&] { pim_mod_add(r.bank, l.a(), l.a(), l.s0(), 17); }),
            Errc::SlotOverlapInvalid);
  EXPECT_EQ(code_of([&] { pim_mod_add(r.bank, l.a(), l.b(), WordSlot{3, 7}, 17); }),
            Errc::SlotOverlapInvalid);
  EXPECT_EQ(code_of([&] { pim_mod_add(r.bank, l.a(), l.b(), WordSlot{40, 7}, 17); }),
            Errc::RowOutOfRange);
  EXPECT_EQ(code_of([&] { pim_mod_add(r.bank, l.a(), l.b(), WordSlot{21, 6}, 17); }),
            Errc::WidthMismatch);
  EXPECT_EQ(code_of([&] { pim_mod_mul(r.bank, l.a(), l.b(), l.s0(), l.s1(), 61); }),
            Errc::HeadroomViolated);
  EXPECT_EQ(code_of([&] { pim_mod_sub(r.bank, l.a(), l.b(), l.s0(), l.s0(), 17); }),
            Errc::SlotOverlapInvalid);
}
