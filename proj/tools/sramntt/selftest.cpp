#include <functional>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "sramntt/bits.hpp"
#include "sramntt/dataflow.hpp"
#include "sramntt/refarith.hpp"

namespace sramntt::cli {

namespace {

using Op = std::function<OpResult(SramBank&, const BankLayout&, std::uint64_t q, const ExecOptions&)>;
using Ref = std::function<std::uint64_t(std::uint64_t, std::uint64_t, std::uint64_t)>;

// Every operand pair, one pair per column.
std::uint64_t exhaustive_mismatches(std::uint64_t q, unsigned width, const Op& op, const Ref& ref,
                                    const ExecOptions& exec) {
  std::uint64_t cols = 2;
  while (cols < q * q) cols <<= 1;
  SramBank bank(rows_for_width(width), cols);
  bank.set_active_columns(q * q);
  const BankLayout l = BankLayout::for_width(width);
  std::vector<std::uint64_t> x(q * q);
  std::vector<std::uint64_t> y(q * q);
  for (std::uint64_t i = 0; i < q * q; ++i) {
    x[i] = i / q;
    y[i] = i % q;
  }
  write_words(bank, l.a(), x);
  write_words(bank, l.b(), y);
  op(bank, l, q, exec);
  const auto z = peek_words(bank, l.s0());
  std::uint64_t bad = 0;
  for (std::uint64_t i = 0; i < q * q; ++i) bad += z[i] != ref(x[i], y[i], q) ? 1 : 0;
  return bad;
}

SuiteResult arithmetic_suite(const std::string& name, const Op& op, const Ref& ref,
                             const ExecOptions& exec) {
  std::ostringstream detail;
  bool pass = true;
  for (const auto& [q, w] : {std::pair<std::uint64_t, unsigned>{13, 6}, {17, 7}}) {
    const auto bad = exhaustive_mismatches(q, w, op, ref, exec);
    detail << "q=" << q << ":" << bad << "/" << q * q << " mismatches ";
    pass = pass && bad == 0;
  }
  return {name, pass, detail.str()};
}

SuiteResult mapping_suite(unsigned max_log) {
  std::uint64_t checked = 0;
  for (unsigned log_n = 1; log_n <= max_log; ++log_n) {
    const std::uint32_t n = 1U << log_n;
    const auto perm = interstage_permutation(n);
    for (unsigned s = 1; s <= log_n; ++s) {
      const auto m = AddressMap::make(n, s);
      std::vector<bool> seen(n, false);
      for (std::uint64_t i = 0; i < n; ++i) {
        const auto a = addr_map(m, i);
        if (a.value >= n || seen[a.value] || addr_unmap(m, a) != i) {
          return {"mapping", false, "stage map not bijective at n=" + std::to_string(n)};
        }
        seen[a.value] = true;
        const auto partner = addr_map(m, i ^ (n >> s));
        if (partner.column() != a.column() || partner.slot() == a.slot()) {
          return {"mapping", false, "partners split at n=" + std::to_string(n)};
        }
        if (s < log_n && perm[a.value] != addr_map(AddressMap::make(n, s + 1), i).value) {
          return {"mapping", false, "stage permutation differs at n=" + std::to_string(n)};
        }
        ++checked;
      }
    }
  }
  return {"mapping", true, std::to_string(checked) + " placements, n<=2^" + std::to_string(max_log)};
}

SuiteResult roundtrip_suite(std::uint32_t max_n, const ExecOptions& exec) {
  std::mt19937_64 rng(7);
  std::uint64_t runs = 0;
  for (const Mode mode : {Mode::Cyclic, Mode::Negacyclic}) {
    for (std::uint32_t n = 2; n <= max_n; n <<= 1) {
      const NttParams p = validate_params(12289, n, 16, mode);
      std::vector<std::uint64_t> a(n);
      for (auto& c : a) c = rng() % p.q;
      EngineOptions opts;
      opts.exec = exec;
      SramBank bank = make_bank(p);
      const auto fwd = ntt(bank, p, a, opts);
      const auto back = intt(bank, p, fwd.values, opts);
      if (fwd.values != ref::direct_ntt(p, a) || back.values != a) {
        return {"ntt-intt", false,
                std::string(to_string(mode)) + " n=" + std::to_string(n) + " mismatch"};
      }
      ++runs;
    }
  }
  return {"ntt-intt", true, std::to_string(runs) + " runs, n<=" + std::to_string(max_n)};
}

}  // namespace

std::vector<SuiteResult> run_selftest(const SelftestOptions& opts) {
  ExecOptions exec;
  exec.fault_comparator_init = opts.fault_comparator_init;
  std::vector<SuiteResult> out;
  out.push_back(arithmetic_suite(
      "mod_add",
      [](SramBank& b, const BankLayout& l, std::uint64_t q, const ExecOptions& e) {
        return pim_mod_add(b, l.a(), l.b(), l.s0(), q, e);
      },
      [](auto x, auto y, auto q) { return (x + y) % q; }, exec));
  out.push_back(arithmetic_suite(
      "mod_sub",
      [](SramBank& b, const BankLayout& l, std::uint64_t q, const ExecOptions& e) {
        return pim_mod_sub(b, l.a(), l.b(), l.s0(), l.s1(), q, e);
      },
      [](auto x, auto y, auto q) { return (x + q - y) % q; }, exec));
  out.push_back(arithmetic_suite(
      "mod_mul",
      [](SramBank& b, const BankLayout& l, std::uint64_t q, const ExecOptions& e) {
        return pim_mod_mul(b, l.a(), l.b(), l.s0(), l.s1(), q, e);
      },
      [](auto x, auto y, auto q) { return x * y % q; }, exec));
  out.push_back(mapping_suite(opts.quick ? 8 : 12));
  out.push_back(roundtrip_suite(opts.quick ? 64 : 1024, exec));
  return out;
}

}  // namespace sramntt::cli
