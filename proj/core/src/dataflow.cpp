#include "sramntt/dataflow.hpp"

#include <sstream>
#include <string>

#include "sramntt/bits.hpp"
#include "sramntt/error.hpp"

namespace sramntt {

namespace {

void check_n(std::uint32_t n) {
  if (n < 2 || !is_power_of_two(n)) {
    throw Error(Errc::NotPowerOfTwo, "n=" + std::to_string(n));
  }
}

void check_fits(const SramBank& bank, std::uint32_t n) {
  if (n / 2 > bank.active_columns()) {
    throw Error(Errc::LengthMismatch, std::to_string(n) + " points need " + std::to_string(n / 2) +
                                          " active columns, bank has " +
                                          std::to_string(bank.active_columns()));
  }
}

}  // namespace

AddressMap AddressMap::make(std::uint32_t n, unsigned stage) {
  check_n(n);
  const unsigned log_n = log2_floor(n);
  if (stage < 1 || stage > log_n) {
    throw Error(Errc::StageOutOfRange,
                "stage " + std::to_string(stage) + " not in [1, " + std::to_string(log_n) + "]");
  }
  return AddressMap{n, log_n, stage};
}

PhysicalAddress addr_map(const AddressMap& map, std::uint64_t index) {
  if (index >= map.n) {
    throw Error(Errc::IndexOutOfRange, "index " + std::to_string(index));
  }
  // {index[log_n-s-1:0], index[msb:log_n-s]}
  return PhysicalAddress{rotl_bits(index, map.stage, map.log_n)};
}

std::uint64_t addr_unmap(const AddressMap& map, PhysicalAddress addr) {
  if (addr.value >= map.n) {
    throw Error(Errc::IndexOutOfRange, "address " + std::to_string(addr.value));
  }
  return rotr_bits(addr.value, map.stage, map.log_n);
}

std::vector<std::uint32_t> interstage_permutation(std::uint32_t n) {
  check_n(n);
  const unsigned log_n = log2_floor(n);
  std::vector<std::uint32_t> perm(n);
  for (std::uint32_t a = 0; a < n; ++a) perm[a] = static_cast<std::uint32_t>(rotl_bits(a, 1, log_n));
  return perm;
}

std::uint64_t bit_reverse(std::uint64_t index, unsigned bits) {
  if (bits < 64 && index >= (std::uint64_t{1} << bits)) {
    throw Error(Errc::IndexOutOfRange,
                std::to_string(index) + " does not fit " + std::to_string(bits) + " bits");
  }
  return reverse_bits(index, bits);
}

OpResult route_stage(SramBank& bank, const BankLayout& layout, std::uint32_t n) {
  check_n(n);
  check_fits(bank, n);
  const auto perm = interstage_permutation(n);
  const EventCounters before = bank.counters();
  const std::uint64_t start = bank.cycle();
  PhaseScope phase(bank, "route");

  const WordSlot a = layout.a();
  const WordSlot b = layout.b();
  const WordSlot s0 = layout.s0();
  const WordSlot s1 = layout.s1();
  BitRow to_a(bank.cols());
  BitRow to_b(bank.cols());
  for (unsigned bit = 0; bit < layout.width; ++bit) {
    const BitRow upper = bank.read_row(s0.row(bit));
    bank.end_cycle();
    const BitRow lower = bank.read_row(s1.row(bit));
    bank.end_cycle();
    to_a.fill(false);
    to_b.fill(false);
    for (std::uint32_t src = 0; src < n; ++src) {
      const bool v = (src & 1U) != 0 ? lower.get(src >> 1) : upper.get(src >> 1);
      if (!v) continue;
      const std::uint32_t dst = perm[src];
      ((dst & 1U) != 0 ? to_b : to_a).set(dst >> 1, true);
    }
    bank.write_row(a.row(bit), to_a);
    bank.end_cycle();
    bank.write_row(b.row(bit), to_b);
    bank.end_cycle();
  }
  return {bank.cycle() - start, bank.counters() - before};
}

OpResult load_by_label(SramBank& bank, const BankLayout& layout, std::uint32_t n,
                       std::span<const std::uint64_t> values) {
  check_n(n);
  check_fits(bank, n);
  if (values.size() != n) {
    throw Error(Errc::LengthMismatch,
                "expected " + std::to_string(n) + " values, got " + std::to_string(values.size()));
  }
  const unsigned log_n = log2_floor(n);
  std::vector<std::uint64_t> upper(n / 2);
  std::vector<std::uint64_t> lower(n / 2);
  for (std::uint32_t col = 0; col < n / 2; ++col) {
    upper[col] = values[rotr_bits(2 * col, 1, log_n)];
    lower[col] = values[rotr_bits(2 * col + 1, 1, log_n)];
  }
  OpResult r = write_words(bank, layout.a(), upper);
  r += write_words(bank, layout.b(), lower);
  return r;
}

std::vector<std::uint64_t> store_by_label(SramBank& bank, const BankLayout& layout,
                                          std::uint32_t n, OpResult* result) {
  check_n(n);
  check_fits(bank, n);
  const unsigned log_n = log2_floor(n);
  OpResult ra;
  OpResult rb;
  const auto upper = read_words(bank, layout.a(), &ra);
  const auto lower = read_words(bank, layout.b(), &rb);
  std::vector<std::uint64_t> values(n);
  for (std::uint32_t col = 0; col < n / 2; ++col) {
    values[rotr_bits(2 * col, 1, log_n)] = upper[col];
    values[rotr_bits(2 * col + 1, 1, log_n)] = lower[col];
  }
  if (result != nullptr) {
    *result = ra;
    *result += rb;
  }
  return values;
}

OpResult load_polynomial(SramBank& bank, const NttParams& params,
                         std::span<const std::uint64_t> a) {
  if (a.size() != params.n) {
    throw Error(Errc::LengthMismatch, "expected " + std::to_string(params.n) +
                                          " coefficients, got " + std::to_string(a.size()));
  }
  for (auto c : a) {
    if (c >= params.q) {
      throw Error(Errc::InvalidArgument,
                  "coefficient " + std::to_string(c) + " not below q=" + std::to_string(params.q));
    }
  }
  return load_by_label(bank, BankLayout::for_width(params.width), params.n, a);
}

std::vector<std::uint64_t> store_polynomial(SramBank& bank, const NttParams& params,
                                            OpResult* result) {
  return store_by_label(bank, BankLayout::for_width(params.width), params.n, result);
}

OpResult load_twiddles(SramBank& bank, const NttParams& params, unsigned stage, Direction dir) {
  const auto twiddles = stage_twiddles(params, stage, dir);
  check_fits(bank, params.n);
  return write_words(bank, BankLayout::for_width(params.width).w(), twiddles, "twiddle.load");
}

std::string placement_table(std::uint32_t n) {
  check_n(n);
  const AddressMap map = AddressMap::make(n, 1);
  std::ostringstream os;
  os << "index\taddress\tcolumn\tslot\n";
  for (std::uint32_t i = 0; i < n; ++i) {
    const PhysicalAddress p = addr_map(map, i);
    os << i << '\t' << p.value << '\t' << p.column() << '\t' << (p.slot() == Slot::A ? 'A' : 'B')
       << '\n';
  }
  return os.str();
}

std::string permutation_table(std::uint32_t n) {
  const auto perm = interstage_permutation(n);
  std::ostringstream os;
  os << "address\tnext_address\n";
  for (std::uint32_t a = 0; a < n; ++a) os << a << '\t' << perm[a] << '\n';
  return os.str();
}

}  // namespace sramntt
