#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "sramntt/bits.hpp"
#include "sramntt/dataflow.hpp"
#include "sramntt/error.hpp"
#include "sramntt/refarith.hpp"

namespace sramntt::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw Error(Errc::InvalidArgument, key + ": not a number: '" + text + "'");
  }
  return v;
}

double parse_cost(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || v < 0) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::InvalidArgument, key + ": expected a non-negative cost, got '" + text + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::uint64_t> random_poly(std::mt19937_64& rng, std::uint32_t n, std::uint64_t q) {
  std::uniform_int_distribution<std::uint64_t> dist(0, q - 1);
  std::vector<std::uint64_t> v(n);
  for (auto& c : v) c = dist(rng);
  return v;
}

nlohmann::json report_json(const CycleReport& r) {
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& s : r.stages) {
    stages.push_back({{"twiddle", s.twiddle}, {"mul", s.mul}, {"copy", s.copy},
                      {"add", s.add}, {"sub", s.sub}, {"route", s.route},
                      {"total", s.total()}});
  }
  return {{"stages", stages},
          {"stage_total", r.stage_total()},
          {"weighting", r.weighting},
          {"pointwise", r.pointwise},
          {"scaling", r.scaling},
          {"io", r.io},
          {"total", r.total()},
          {"events",
           {{"single_activations", r.events.single_activations},
            {"dual_activations", r.events.dual_activations},
            {"writes", r.events.writes},
            {"senses", r.events.senses},
            {"latches", r.events.latches}}},
          {"route_bits", r.route_bits},
          {"energy", r.energy}};
}

std::optional<Workload> parse_workload(std::string_view s) {
  for (auto w : {Workload::Ntt, Workload::Intt, Workload::Pointwise, Workload::Polymul}) {
    if (to_string(w) == s) return w;
  }
  return std::nullopt;
}

// ---- commands --------------------------------------------------------------

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const NttParams p = validate_params(cfg.q, cfg.n, cfg.effective_width(), cfg.mode);
  out << "q=" << p.q << "\nn=" << p.n << "\nN=" << p.width << "\nmode=" << to_string(p.mode)
      << "\nw=" << p.w << "\nw_inv=" << p.w_inv << "\nn_inv=" << p.n_inv << '\n';
  if (p.psi) out << "psi=" << *p.psi << "\npsi_inv=" << *p.psi_inv << '\n';
  out << "headroom=" << p.width - bit_length(p.q) << '\n'
      << "bank_rows=" << rows_for_width(p.width) << "\nbank_columns=" << p.n
      << "\nactive_columns=" << p.n / 2 << '\n';
  return kOk;
}

int cmd_polymul(const RunConfig& cfg, const std::string& input, bool json, std::ostream& out) {
  const NttParams p = validate_params(cfg.q, cfg.n, cfg.effective_width(), cfg.mode);
  std::vector<std::uint64_t> a;
  std::vector<std::uint64_t> s;
  if (!input.empty()) {
    auto blocks = parse_coefficient_blocks(read_file(input));
    if (blocks.size() != 2) {
      throw Error(Errc::FileFormat,
                  "expected 2 coefficient blocks, found " + std::to_string(blocks.size()));
    }
    for (const auto& b : blocks) {
      if (b.size() != p.n) {
        throw Error(Errc::LengthMismatch, "block has " + std::to_string(b.size()) +
                                              " coefficients, n=" + std::to_string(p.n));
      }
      for (auto c : b) {
        if (c >= p.q) {
          throw Error(Errc::FileFormat,
                      "coefficient " + std::to_string(c) + " not below q=" + std::to_string(p.q));
        }
      }
    }
    a = std::move(blocks[0]);
    s = std::move(blocks[1]);
  } else {
    std::mt19937_64 rng(cfg.seed);
    a = random_poly(rng, p.n, p.q);
    s = random_poly(rng, p.n, p.q);
  }

  SramBank bank = make_bank(p);
  EngineOptions opts;
  opts.energy = cfg.energy;
  const TransformResult r = polymul(bank, p, a, s, opts);
  const bool pass = r.values == ref::schoolbook_polymul(p, a, s);

  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) throw Error(Errc::InvalidArgument, "cannot write " + cfg.out);
    for (auto c : r.values) file << c << '\n';
  }
  if (json) {
    nlohmann::json j{{"n", p.n}, {"q", p.q}, {"N", p.width},
                     {"mode", std::string(to_string(p.mode))},
                     {"report", report_json(r.report)},
                     {"verdict", pass ? "PASS" : "FAIL"}};
    if (cfg.out.empty()) j["result"] = r.values;
    out << j.dump(2) << '\n';
  } else {
    if (cfg.out.empty()) {
      for (auto c : r.values) out << c << '\n';
      out << '\n';
    }
    out << format_report(r.report) << "verdict\t" << (pass ? "PASS" : "FAIL") << '\n';
  }
  return pass ? kOk : kVerifyFailed;
}

struct BenchRow {
  std::uint32_t n;
  unsigned width;
  CycleReport predicted;
  CycleReport simulated;
  std::string error;
};

int cmd_bench(const RunConfig& cfg, std::vector<std::uint32_t> ns, std::vector<std::uint32_t> ws,
              Workload workload, unsigned jobs, bool json, std::ostream& out) {
  if (ns.empty()) {
    ns = cfg.quick ? std::vector<std::uint32_t>{4, 8, 16, 32, 64}
                   : std::vector<std::uint32_t>{4, 8, 16, 32, 64, 128, 256, 512, 1024};
  }
  if (ws.empty()) {
    ws = cfg.quick ? std::vector<std::uint32_t>{8, 14} : std::vector<std::uint32_t>{8, 14, 32};
  }
  std::vector<BenchRow> rows;
  for (auto n : ns) {
    for (auto w : ws) rows.push_back({n, w, {}, {}, {}});
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      auto& row = rows[i];
      try {
        row.predicted = predict_cycles(row.n, row.width, workload, cfg.mode, cfg.energy);
        row.simulated = simulate_schedule(row.n, row.width, workload, cfg.mode, cfg.energy);
      } catch (const Error& e) {
        row.error = e.what();
      }
    }
  };
  if (jobs == 0) jobs = std::max(1U, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, rows.size()));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  bool all_ok = true;
  bool usage_error = false;
  nlohmann::json jrows = nlohmann::json::array();
  if (!json) {
    out << "n\tN\tmode\tworkload\tstages\tpredicted\tsimulated\tmatch\tsingle\tdual\twrites"
           "\tsenses\tlatches\troute_bits\tenergy\n";
  }
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      usage_error = true;
      if (json) {
        jrows.push_back({{"n", r.n}, {"N", r.width}, {"error", r.error}});
      } else {
        out << r.n << '\t' << r.width << '\t' << to_string(cfg.mode) << '\t'
            << to_string(workload) << "\terror\t" << r.error << '\n';
      }
      continue;
    }
    const bool match = r.predicted == r.simulated;
    all_ok = all_ok && match;
    const auto& e = r.simulated.events;
    if (json) {
      jrows.push_back({{"n", r.n},
                       {"N", r.width},
                       {"mode", std::string(to_string(cfg.mode))},
                       {"workload", std::string(to_string(workload))},
                       {"predicted", report_json(r.predicted)},
                       {"simulated", report_json(r.simulated)},
                       {"match", match}});
    } else {
      out << r.n << '\t' << r.width << '\t' << to_string(cfg.mode) << '\t'
          << to_string(workload) << '\t' << log2_floor(r.n) << '\t' << r.predicted.total()
          << '\t' << r.simulated.total() << '\t' << (match ? "yes" : "NO") << '\t'
          << e.single_activations << '\t' << e.dual_activations << '\t' << e.writes << '\t'
          << e.senses << '\t' << e.latches << '\t' << r.simulated.route_bits << '\t'
          << r.simulated.energy << '\n';
    }
  }
  if (json) out << jrows.dump(2) << '\n';
  if (!all_ok) return kVerifyFailed;
  return usage_error ? kUsage : kOk;
}

std::string format_rows(const TraceEvent& ev) {
  switch (ev.op) {
    case MicroOp::DualRead: return std::to_string(ev.row_a) + "," + std::to_string(ev.row_b);
    case MicroOp::Latch: return "-";
    default: return std::to_string(ev.row_a);
  }
}

int cmd_trace(const RunConfig& cfg, const std::string& scope, const std::string& op,
              unsigned stage, bool tables, std::ostream& out) {
  const NttParams p = validate_params(cfg.q, cfg.n, cfg.effective_width(), cfg.mode);
  if (tables) {
    out << placement_table(p.n) << '\n' << permutation_table(p.n);
    return kOk;
  }
  SramBank bank = make_bank(p);
  const BankLayout l = BankLayout::for_width(p.width);
  std::mt19937_64 rng(cfg.seed);
  const auto a = random_poly(rng, p.n, p.q);
  std::uint64_t origin = 0;
  auto start = [&] {
    origin = bank.cycle();
    bank.set_trace_hook([&](const TraceEvent& ev) {
      out << ev.cycle - origin << '\t' << to_string(ev.op) << '\t' << format_rows(ev) << '\t'
          << ev.phase << '\n';
    });
  };

  if (scope == "ntt") {
    start();
    ntt(bank, p, a);
  } else if (scope == "stage") {
    if (stage < 1 || stage > p.log_n()) {
      throw Error(Errc::StageOutOfRange, "stage " + std::to_string(stage) + " not in [1, " +
                                             std::to_string(p.log_n()) + "]");
    }
    load_polynomial(bank, p, a);
    start();
    run_butterfly_stage(bank, p, stage);
  } else if (scope == "op") {
    const auto b = random_poly(rng, p.n, p.q);
    const std::vector<std::uint64_t> x(a.begin(), a.begin() + p.n / 2);
    const std::vector<std::uint64_t> y(b.begin(), b.begin() + p.n / 2);
    write_words(bank, l.a(), x);
    write_words(bank, l.b(), y);
    start();
    if (op == "add") {
      pim_mod_add(bank, l.a(), l.b(), l.s0(), p.q);
    } else if (op == "sub") {
      pim_mod_sub(bank, l.a(), l.b(), l.s0(), l.s1(), p.q);
    } else if (op == "mul") {
      pim_mod_mul(bank, l.a(), l.b(), l.s0(), l.s1(), p.q);
    } else if (op == "copy") {
      pim_copy(bank, l.a(), l.s0());
    } else if (op == "twos") {
      pim_twos_complement(bank, l.a(), l.s0());
    } else if (op == "route") {
      route_stage(bank, l, p.n);
    } else {
      throw Error(Errc::InvalidArgument, "unknown op '" + op + "'");
    }
  } else {
    throw Error(Errc::InvalidArgument, "unknown scope '" + scope + "'");
  }
  bank.set_trace_hook(nullptr);
  return kOk;
}

int cmd_selftest(const RunConfig& cfg, const std::string& fault, std::ostream& out) {
  SelftestOptions opts;
  opts.quick = cfg.quick;
  if (fault == "comparator-init") {
    opts.fault_comparator_init = true;
  } else if (!fault.empty()) {
    throw Error(Errc::InvalidArgument, "unknown fault '" + fault + "'");
  }
  bool ok = true;
  for (const auto& r : run_selftest(opts)) {
    out << (r.pass ? "PASS" : "FAIL") << '\t' << r.name << '\t' << r.detail << '\n';
    ok = ok && r.pass;
  }
  out << (ok ? "ALL PASS" : "FAILURES") << '\n';
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

unsigned RunConfig::effective_width() const {
  return width != 0 ? width : bit_length(q) + 2;
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table{
      {"rlwe-256", 256, 7681, 15, Mode::Negacyclic},
      {"rlwe-512", 512, 12289, 16, Mode::Negacyclic},
      {"rlwe-1024", 1024, 12289, 16, Mode::Negacyclic},
  };
  return table;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(Errc::FileFormat, "config line " + std::to_string(lineno) + ": expected key=value");
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_config_key(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "n") {
    cfg.n = parse_number<std::uint32_t>(key, value);
  } else if (key == "q") {
    cfg.q = parse_number<std::uint64_t>(key, value);
  } else if (key == "N") {
    cfg.width = parse_number<unsigned>(key, value);
  } else if (key == "mode") {
    const auto m = parse_mode(value);
    if (!m) throw Error(Errc::InvalidArgument, "mode must be cyclic or negacyclic");
    cfg.mode = *m;
  } else if (key == "seed") {
    cfg.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "quick") {
    cfg.quick = value == "1" || value == "true" || value == "yes";
  } else if (key == "preset") {
    const auto& ps = presets();
    const auto it = std::find_if(ps.begin(), ps.end(), [&](const Preset& p) { return p.name == value; });
    if (it == ps.end()) throw Error(Errc::InvalidArgument, "unknown preset '" + value + "'");
    cfg.n = it->n;
    cfg.q = it->q;
    cfg.width = it->width;
    cfg.mode = it->mode;
  } else if (key == "energy.single") {
    cfg.energy.single_activation = parse_cost(key, value);
  } else if (key == "energy.dual") {
    cfg.energy.dual_activation = parse_cost(key, value);
  } else if (key == "energy.write") {
    cfg.energy.write = parse_cost(key, value);
  } else if (key == "energy.sense") {
    cfg.energy.sense = parse_cost(key, value);
  } else if (key == "energy.latch") {
    cfg.energy.latch = parse_cost(key, value);
  } else if (key == "energy.route") {
    cfg.energy.route_bit = parse_cost(key, value);
  } else {
    throw Error(Errc::InvalidArgument, "unknown config key '" + key + "'");
  }
}

std::vector<std::vector<std::uint64_t>> parse_coefficient_blocks(const std::string& text) {
  std::vector<std::vector<std::uint64_t>> blocks;
  std::istringstream in(text);
  std::string line;
  bool open = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) {
      open = false;
      continue;
    }
    std::uint64_t v = 0;
    const auto* end = line.data() + line.size();
    const auto [ptr, ec] = std::from_chars(line.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
      throw Error(Errc::FileFormat, "line " + std::to_string(lineno) + ": not a coefficient: '" +
                                        line + "'");
    }
    if (!open) {
      blocks.emplace_back();
      open = true;
    }
    blocks.back().push_back(v);
  }
  return blocks;
}

std::vector<std::uint32_t> parse_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_number<std::uint32_t>("list", item));
  }
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cycle-level simulator of an SRAM bit-serial NTT accelerator", "sramntt"};
  app.require_subcommand(1);
  app.fallthrough();

  // Overridable keys: raw text so file values can be applied underneath.
  const std::vector<std::pair<std::string, std::string>> keyed = {
      {"n", "transform size (power of two)"},
      {"q", "prime modulus"},
      {"N", "operand bit width"},
      {"mode", "cyclic | negacyclic"},
      {"seed", "RNG seed for generated inputs"},
      {"out", "output file"},
      {"preset", "rlwe-256 | rlwe-512 | rlwe-1024"},
  };
  std::map<std::string, std::string> flag_values;
  std::map<std::string, CLI::Option*> flag_opts;
  for (const auto& [key, help] : keyed) {
    flag_opts[key] = app.add_option("--" + key, flag_values[key], help);
  }
  std::string config_path;
  app.add_option("--config", config_path, "key=value file; flags override it");
  bool quick = false;
  app.add_flag("--quick", quick, "reduced sweeps");

  auto* validate = app.add_subcommand("validate", "check parameters and print derived values");
  auto* poly = app.add_subcommand("polymul", "a*s on the simulated fabric, checked against an oracle");
  std::string input;
  bool json = false;
  poly->add_option("--input", input, "two blocks of coefficients separated by a blank line");
  poly->add_flag("--json", json, "structured report");

  auto* bench = app.add_subcommand("bench", "predicted vs simulated cycles over a sweep");
  std::string sweep_n;
  std::string sweep_w;
  std::string workload_name = "polymul";
  unsigned jobs = 0;
  bench->add_option("--sweep-n", sweep_n, "comma-separated n values");
  bench->add_option("--sweep-N", sweep_w, "comma-separated operand widths");
  bench->add_option("--workload", workload_name, "ntt | intt | pointwise | polymul");
  bench->add_option("--jobs", jobs, "worker threads (0: all cores)");
  bench->add_flag("--json", json, "structured output");

  auto* trace = app.add_subcommand("trace", "dump the micro-op sequence");
  std::string scope = "ntt";
  std::string op = "add";
  unsigned stage = 1;
  bool tables = false;
  trace->add_option("--scope", scope, "op | stage | ntt");
  trace->add_option("--op", op, "add | sub | mul | copy | twos | route (scope op)");
  trace->add_option("--stage", stage, "stage index (scope stage)");
  trace->add_flag("--tables", tables, "print placement and permutation tables instead");

  auto* selftest = app.add_subcommand("selftest", "exhaustive small-field suites");
  std::string fault;
  selftest->add_option("--inject-fault", fault, "comparator-init");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    RunConfig cfg;
    cfg.quick = quick;
    std::map<std::string, std::string> file_kv;
    if (!config_path.empty()) file_kv = parse_config_text(read_file(config_path));
    // Preset first so explicit keys can refine it; flags beat the file.
    auto value_of = [&](const std::string& key) -> std::optional<std::string> {
      if (flag_opts.at(key)->count() > 0) return flag_values.at(key);
      if (const auto it = file_kv.find(key); it != file_kv.end()) return it->second;
      return std::nullopt;
    };
    if (const auto v = value_of("preset")) apply_config_key(cfg, "preset", *v);
    for (const auto& [key, value] : file_kv) {
      if (key != "preset" && (!flag_opts.contains(key) || flag_opts.at(key)->count() == 0)) {
        apply_config_key(cfg, key, value);
      }
    }
    for (const auto& [key, opt] : flag_opts) {
      if (key != "preset" && opt->count() > 0) apply_config_key(cfg, key, flag_values.at(key));
    }
    if (quick) cfg.quick = true;
    if (!cfg.energy.valid()) throw Error(Errc::InvalidArgument, "energy costs must be >= 0");

    std::ofstream file;
    std::ostream* sink = &out;
    auto redirect = [&] {
      if (cfg.out.empty()) return;
      file.open(cfg.out);
      if (!file) throw Error(Errc::InvalidArgument, "cannot write " + cfg.out);
      sink = &file;
    };

    if (validate->parsed()) {
      cfg.command = "validate";
      redirect();
      return cmd_validate(cfg, *sink);
    }
    if (poly->parsed()) {
      cfg.command = "polymul";
      return cmd_polymul(cfg, input, json, out);
    }
    if (bench->parsed()) {
      cfg.command = "bench";
      const auto w = parse_workload(workload_name);
      if (!w) throw Error(Errc::InvalidArgument, "unknown workload '" + workload_name + "'");
      redirect();
      return cmd_bench(cfg, parse_list(sweep_n), parse_list(sweep_w), *w, jobs, json, *sink);
    }
    if (trace->parsed()) {
      cfg.command = "trace";
      redirect();
      return cmd_trace(cfg, scope, op, stage, tables, *sink);
    }
    cfg.command = "selftest";
    redirect();
    return cmd_selftest(cfg, fault, *sink);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace sramntt::cli
