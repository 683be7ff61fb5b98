#include "sramntt/engine.hpp"

#include <iomanip>
#include <optional>
#include <sstream>
#include <string>

#include "sramntt/bits.hpp"
#include "sramntt/dataflow.hpp"
#include "sramntt/error.hpp"
#include "sramntt/modmath.hpp"

namespace sramntt {

double EnergyModel::estimate(const EventCounters& e, std::uint64_t route_bits) const noexcept {
  return single_activation * static_cast<double>(e.single_activations) +
         dual_activation * static_cast<double>(e.dual_activations) +
         write * static_cast<double>(e.writes) + sense * static_cast<double>(e.senses) +
         latch * static_cast<double>(e.latches) + route_bit * static_cast<double>(route_bits);
}

bool EnergyModel::valid() const noexcept {
  return single_activation >= 0 && dual_activation >= 0 && write >= 0 && sense >= 0 &&
         latch >= 0 && route_bit >= 0;
}

std::uint64_t CycleReport::stage_total() const noexcept {
  std::uint64_t t = 0;
  for (const auto& s : stages) t += s.total();
  return t;
}

std::uint64_t CycleReport::total() const noexcept {
  return stage_total() + weighting + pointwise + scaling + io;
}

CycleReport& CycleReport::operator+=(const CycleReport& o) {
  stages.insert(stages.end(), o.stages.begin(), o.stages.end());
  weighting += o.weighting;
  pointwise += o.pointwise;
  scaling += o.scaling;
  io += o.io;
  events += o.events;
  route_bits += o.route_bits;
  energy += o.energy;
  return *this;
}

std::string_view to_string(Workload w) noexcept {
  switch (w) {
    case Workload::Ntt: return "ntt";
    case Workload::Intt: return "intt";
    case Workload::Pointwise: return "pointwise";
    case Workload::Polymul: return "polymul";
  }
  return "?";
}

SramBank make_bank(std::uint32_t n, unsigned width) {
  if (n < 2 || !is_power_of_two(n)) {
    throw Error(Errc::NotPowerOfTwo, "n=" + std::to_string(n));
  }
  SramBank bank(rows_for_width(width), n);
  // One butterfly per column; the right half of the array is power-gated.
  bank.set_active_columns(n / 2);
  return bank;
}

SramBank make_bank(const NttParams& params) { return make_bank(params.n, params.width); }

namespace {

// Everything a schedule needs apart from the root tables.
struct Fabric {
  std::uint32_t n = 0;
  unsigned log_n = 0;
  std::uint64_t q = 0;
  BankLayout layout;
};

Fabric fabric_of(std::uint32_t n, unsigned width, std::uint64_t q) {
  return Fabric{n, log2_floor(n), q, BankLayout::for_width(width)};
}

// Per-label multipliers and per-stage twiddles of one transform.
struct Plan {
  std::vector<std::vector<std::uint64_t>> twiddles;  // [stage-1][column]
  std::optional<std::vector<std::uint64_t>> pre;     // by label, before stage 1
  std::optional<std::vector<std::uint64_t>> post;    // by label, after the last stage
};

class Meter {
 public:
  explicit Meter(const SramBank& bank) : bank_(bank), start_(bank.counters()) {}
  EventCounters delta() const { return bank_.counters() - start_; }

 private:
  const SramBank& bank_;
  EventCounters start_;
};

StageCycles run_stage(SramBank& bank, const Fabric& f, std::span<const std::uint64_t> twiddles,
                      const ExecOptions& exec) {
  const BankLayout& l = f.layout;
  StageCycles sc;
  sc.twiddle = write_words(bank, l.w(), twiddles, "twiddle.load").cycles;
  sc.mul = pim_mod_mul(bank, l.b(), l.w(), l.s0(), l.s1(), f.q, exec).cycles;
  sc.copy = pim_copy(bank, l.s0(), l.b()).cycles;
  sc.add = pim_mod_add(bank, l.a(), l.b(), l.s0(), f.q, exec).cycles;
  sc.sub = pim_mod_sub(bank, l.a(), l.b(), l.s1(), l.w(), f.q, exec).cycles;
  sc.route = route_stage(bank, l, f.n).cycles;
  return sc;
}

// Multiplies every resident word (stage-1 layout) by by_label[its label].
std::uint64_t pointwise_pass(SramBank& bank, const Fabric& f,
                             std::span<const std::uint64_t> by_label, const ExecOptions& exec) {
  const BankLayout& l = f.layout;
  std::uint64_t cycles = 0;
  std::vector<std::uint64_t> multipliers(f.n / 2);
  for (const Slot slot : {Slot::A, Slot::B}) {
    const WordSlot target = slot == Slot::A ? l.a() : l.b();
    const std::uint64_t lsb = slot == Slot::A ? 0 : 1;
    for (std::uint32_t c = 0; c < f.n / 2; ++c) {
      multipliers[c] = by_label[rotr_bits(2 * c + lsb, 1, f.log_n)];
    }
    cycles += write_words(bank, l.w(), multipliers, "pointwise.load").cycles;
    cycles += pim_mod_mul(bank, target, l.w(), l.s0(), l.s1(), f.q, exec).cycles;
    cycles += pim_copy(bank, l.s0(), target).cycles;
  }
  return cycles;
}

CycleReport run_plan(SramBank& bank, const Fabric& f, std::span<const std::uint64_t> input,
                     const Plan& plan, const ExecOptions& exec,
                     std::vector<std::uint64_t>* out_by_label) {
  const Meter meter(bank);
  CycleReport rep;
  rep.io += load_by_label(bank, f.layout, f.n, input).cycles;
  if (plan.pre) rep.weighting += pointwise_pass(bank, f, *plan.pre, exec);
  for (const auto& tw : plan.twiddles) {
    rep.stages.push_back(run_stage(bank, f, tw, exec));
    rep.route_bits += std::uint64_t{f.n} * f.layout.width;
  }
  if (plan.post) rep.scaling += pointwise_pass(bank, f, *plan.post, exec);
  if (out_by_label != nullptr) {
    OpResult io;
    *out_by_label = store_by_label(bank, f.layout, f.n, &io);
    rep.io += io.cycles;
  }
  rep.events = meter.delta();
  return rep;
}

std::vector<std::uint64_t> by_position(std::span<const std::uint64_t> by_label, unsigned log_n) {
  std::vector<std::uint64_t> out(by_label.size());
  for (std::uint64_t p = 0; p < out.size(); ++p) out[p] = by_label[reverse_bits(p, log_n)];
  return out;
}

std::vector<std::uint64_t> to_label_order(std::span<const std::uint64_t> natural, unsigned log_n) {
  std::vector<std::uint64_t> out(natural.size());
  for (std::uint64_t i = 0; i < out.size(); ++i) out[i] = natural[reverse_bits(i, log_n)];
  return out;
}

Plan forward_plan(const NttParams& p) {
  Plan plan;
  for (unsigned s = 1; s <= p.log_n(); ++s) plan.twiddles.push_back(stage_twiddles(p, s));
  if (p.mode == Mode::Negacyclic) {
    std::vector<std::uint64_t> pre(p.n);
    std::uint64_t pw = 1;
    for (auto& v : pre) {
      v = pw;
      pw = modmath::mul_mod(pw, *p.psi, p.q);
    }
    plan.pre = std::move(pre);
  }
  return plan;
}

Plan inverse_plan(const NttParams& p) {
  Plan plan;
  for (unsigned s = 1; s <= p.log_n(); ++s) {
    plan.twiddles.push_back(stage_twiddles(p, s, Direction::Inverse));
  }
  // Output label i carries coefficient bitrev(i).
  std::vector<std::uint64_t> natural(p.n);
  std::uint64_t scale = p.n_inv;
  for (auto& v : natural) {
    v = scale;
    if (p.mode == Mode::Negacyclic) scale = modmath::mul_mod(scale, *p.psi_inv, p.q);
  }
  plan.post = to_label_order(natural, p.log_n());
  return plan;
}

Plan unit_plan(std::uint32_t n, Workload w, Mode mode) {
  const unsigned log_n = log2_floor(n);
  Plan plan;
  plan.twiddles.assign(log_n, std::vector<std::uint64_t>(n / 2, 1));
  if (w == Workload::Ntt && mode == Mode::Negacyclic) plan.pre.emplace(n, 1);
  if (w == Workload::Intt) plan.post.emplace(n, 1);
  return plan;
}

void check_input(const NttParams& params, std::span<const std::uint64_t> v) {
  if (v.size() != params.n) {
    throw Error(Errc::LengthMismatch, "expected " + std::to_string(params.n) +
                                          " coefficients, got " + std::to_string(v.size()));
  }
  for (auto c : v) {
    if (c >= params.q) {
      throw Error(Errc::InvalidArgument,
                  "coefficient " + std::to_string(c) + " not below q=" + std::to_string(params.q));
    }
  }
}

void finish(CycleReport& rep, const EnergyModel& energy) {
  rep.energy = energy.estimate(rep.events, rep.route_bits);
}

Fabric fabric_of(const NttParams& p) { return fabric_of(p.n, p.width, p.q); }

}  // namespace

StageCycles run_butterfly_stage(SramBank& bank, const NttParams& params, unsigned stage,
                                Direction dir, const ExecOptions& exec) {
  const auto tw = stage_twiddles(params, stage, dir);
  return run_stage(bank, fabric_of(params), tw, exec);
}

TransformResult ntt(SramBank& bank, const NttParams& params, std::span<const std::uint64_t> a,
                    const EngineOptions& opts) {
  check_input(params, a);
  std::vector<std::uint64_t> out;
  TransformResult r;
  r.report = run_plan(bank, fabric_of(params), a, forward_plan(params), opts.exec, &out);
  r.values = by_position(out, params.log_n());
  finish(r.report, opts.energy);
  return r;
}

TransformResult intt(SramBank& bank, const NttParams& params,
                     std::span<const std::uint64_t> a_hat, const EngineOptions& opts) {
  check_input(params, a_hat);
  std::vector<std::uint64_t> out;
  TransformResult r;
  r.report = run_plan(bank, fabric_of(params), a_hat, inverse_plan(params), opts.exec, &out);
  r.values = by_position(out, params.log_n());
  finish(r.report, opts.energy);
  return r;
}

CycleReport pointwise_mul(SramBank& bank, const NttParams& params,
                          std::span<const std::uint64_t> s_hat, const EngineOptions& opts) {
  check_input(params, s_hat);
  const Meter meter(bank);
  CycleReport rep;
  rep.pointwise =
      pointwise_pass(bank, fabric_of(params), to_label_order(s_hat, params.log_n()), opts.exec);
  rep.events = meter.delta();
  finish(rep, opts.energy);
  return rep;
}

std::vector<std::uint64_t> read_spectrum(SramBank& bank, const NttParams& params, OpResult* io) {
  const auto by_label = store_polynomial(bank, params, io);
  return by_position(by_label, params.log_n());
}

TransformResult polymul(SramBank& bank, const NttParams& params, std::span<const std::uint64_t> a,
                        std::span<const std::uint64_t> s, const EngineOptions& opts) {
  check_input(params, a);
  check_input(params, s);
  const Fabric f = fabric_of(params);

  TransformResult s_hat = ntt(bank, params, s, opts);
  CycleReport rep = s_hat.report;
  rep += run_plan(bank, f, a, forward_plan(params), opts.exec, nullptr);
  rep += pointwise_mul(bank, params, s_hat.values, opts);

  const Meter meter(bank);
  OpResult io;
  const auto b_hat = read_spectrum(bank, params, &io);
  CycleReport readout;
  readout.io = io.cycles;
  readout.events = meter.delta();
  rep += readout;

  TransformResult b = intt(bank, params, b_hat, opts);
  rep += b.report;
  finish(rep, opts.energy);
  return {std::move(b.values), std::move(rep)};
}

CycleReport predict_cycles(std::uint32_t n, unsigned width, Workload workload, Mode mode,
                           const EnergyModel& energy) {
  if (n < 2 || !is_power_of_two(n)) {
    throw Error(Errc::NotPowerOfTwo, "n=" + std::to_string(n));
  }
  if (width < 4 || width > kMaxWidth) {
    throw Error(Errc::InsufficientBitWidth, "N=" + std::to_string(width));
  }
  const std::uint64_t nb = width;
  const std::uint64_t cols = n / 2;
  const unsigned log_n = log2_floor(n);

  // Per-op event profiles.
  struct Profile {
    std::uint64_t cycles, single, dual, writes, latches;
  };
  const Profile mul{(nb + 1) * (nb + 1), 4 * nb - 1, (nb - 1) * (nb - 1), nb * (nb + 1), 1};
  const Profile copy{2 * nb, nb, 0, nb, 0};
  const Profile add{2 * (nb + 1), 0, 2 * nb, 2 * nb, 2};
  const Profile sub{3 * (nb + 1), nb, 2 * nb, 3 * nb, 3};
  const Profile route{4 * nb, 2 * nb, 0, 2 * nb, 0};
  const Profile load_word{nb, 0, 0, nb, 0};
  const Profile store_word{nb, nb, 0, 0, 0};

  CycleReport rep;
  auto charge = [&](const Profile& p, std::uint64_t times = 1) {
    rep.events.single_activations += times * p.single;
    rep.events.dual_activations += times * p.dual;
    rep.events.writes += times * p.writes;
    rep.events.latches += times * p.latches;
    rep.events.senses += times * (p.single + p.dual) * cols;
    return times * p.cycles;
  };
  auto pass = [&] { return charge(load_word, 2) + charge(mul, 2) + charge(copy, 2); };
  auto stages = [&] {
    for (unsigned s = 0; s < log_n; ++s) {
      StageCycles sc;
      sc.twiddle = charge(load_word);
      sc.mul = charge(mul);
      sc.copy = charge(copy);
      sc.add = charge(add);
      sc.sub = charge(sub);
      sc.route = charge(route);
      rep.stages.push_back(sc);
      rep.route_bits += std::uint64_t{n} * nb;
    }
  };
  auto forward = [&](bool store) {
    rep.io += charge(load_word, 2);
    if (mode == Mode::Negacyclic) rep.weighting += pass();
    stages();
    if (store) rep.io += charge(store_word, 2);
  };
  auto inverse = [&] {
    rep.io += charge(load_word, 2);
    stages();
    rep.scaling += pass();
    rep.io += charge(store_word, 2);
  };

  switch (workload) {
    case Workload::Ntt:
      forward(true);
      break;
    case Workload::Intt:
      inverse();
      break;
    case Workload::Pointwise:
      rep.pointwise += pass();
      break;
    case Workload::Polymul:
      forward(true);
      forward(false);
      rep.pointwise += pass();
      rep.io += charge(store_word, 2);
      inverse();
      break;
  }
  rep.energy = energy.estimate(rep.events, rep.route_bits);
  return rep;
}

namespace {

std::optional<NttParams> friendly_params(std::uint32_t n, unsigned width, Mode mode) {
  if (width < 4) return std::nullopt;
  const std::uint64_t order = mode == Mode::Cyclic ? n : 2 * std::uint64_t{n};
  const unsigned max_bits = width - 2;
  for (std::uint64_t q = order + 1; bit_length(q) <= max_bits; q += order) {
    if (modmath::is_prime(q)) return validate_params(q, n, width, mode);
  }
  return std::nullopt;
}

}  // namespace

CycleReport simulate_schedule(std::uint32_t n, unsigned width, Workload workload, Mode mode,
                              const EnergyModel& energy) {
  if (n < 2 || !is_power_of_two(n)) {
    throw Error(Errc::NotPowerOfTwo, "n=" + std::to_string(n));
  }
  if (width < 4 || width > kMaxWidth) {
    throw Error(Errc::InsufficientBitWidth, "N=" + std::to_string(width));
  }
  SramBank bank = make_bank(n, width);
  const std::vector<std::uint64_t> zeros(n, 0);
  EngineOptions opts;
  opts.energy = energy;

  if (const auto params = friendly_params(n, width, mode)) {
    switch (workload) {
      case Workload::Ntt: return ntt(bank, *params, zeros, opts).report;
      case Workload::Intt: return intt(bank, *params, zeros, opts).report;
      case Workload::Pointwise: return pointwise_mul(bank, *params, zeros, opts);
      case Workload::Polymul: return polymul(bank, *params, zeros, zeros, opts).report;
    }
  }

  // No NTT-friendly prime fits: same schedule, unit roots, any prime that
  // respects the headroom.
  std::uint64_t q = (std::uint64_t{1} << (width - 2)) - 1;
  while (!modmath::is_prime(q)) --q;
  const Fabric f = fabric_of(n, width, q);
  const std::vector<std::uint64_t> ones(n, 1);
  std::vector<std::uint64_t> sink;
  CycleReport rep;
  switch (workload) {
    case Workload::Ntt:
      rep = run_plan(bank, f, zeros, unit_plan(n, Workload::Ntt, mode), opts.exec, &sink);
      break;
    case Workload::Intt:
      rep = run_plan(bank, f, zeros, unit_plan(n, Workload::Intt, mode), opts.exec, &sink);
      break;
    case Workload::Pointwise: {
      const Meter meter(bank);
      rep.pointwise = pointwise_pass(bank, f, ones, opts.exec);
      rep.events = meter.delta();
      break;
    }
    case Workload::Polymul: {
      rep = run_plan(bank, f, zeros, unit_plan(n, Workload::Ntt, mode), opts.exec, &sink);
      rep += run_plan(bank, f, zeros, unit_plan(n, Workload::Ntt, mode), opts.exec, nullptr);
      {
        const Meter meter(bank);
        CycleReport pw;
        pw.pointwise = pointwise_pass(bank, f, ones, opts.exec);
        OpResult io;
        sink = store_by_label(bank, f.layout, n, &io);
        pw.io = io.cycles;
        pw.events = meter.delta();
        rep += pw;
      }
      rep += run_plan(bank, f, zeros, unit_plan(n, Workload::Intt, mode), opts.exec, &sink);
      break;
    }
  }
  finish(rep, energy);
  return rep;
}

std::string format_report(const CycleReport& r) {
  std::ostringstream os;
  os << "stage\ttwiddle\tmul\tcopy\tadd\tsub\troute\ttotal\n";
  for (std::size_t i = 0; i < r.stages.size(); ++i) {
    const auto& s = r.stages[i];
    os << i + 1 << '\t' << s.twiddle << '\t' << s.mul << '\t' << s.copy << '\t' << s.add << '\t'
       << s.sub << '\t' << s.route << '\t' << s.total() << '\n';
  }
  os << "stage_total\t" << r.stage_total() << '\n'
     << "weighting\t" << r.weighting << '\n'
     << "pointwise\t" << r.pointwise << '\n'
     << "scaling\t" << r.scaling << '\n'
     << "io\t" << r.io << '\n'
     << "total\t" << r.total() << '\n'
     << "single_activations\t" << r.events.single_activations << '\n'
     << "dual_activations\t" << r.events.dual_activations << '\n'
     << "writes\t" << r.events.writes << '\n'
     << "senses\t" << r.events.senses << '\n'
     << "latches\t" << r.events.latches << '\n'
     << "route_bits\t" << r.route_bits << '\n'
     << "energy\t" << std::setprecision(12) << r.energy << '\n';
  return os.str();
}

}  // namespace sramntt
