#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sramntt/engine.hpp"
#include "sramntt/params.hpp"

namespace sramntt::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2 };

struct RunConfig {
  std::uint32_t n = 8;
  std::uint64_t q = 17;
  unsigned width = 0;  // 0: bitlength(q) + 2
  Mode mode = Mode::Cyclic;
  std::uint64_t seed = 1;
  EnergyModel energy;
  std::string out;
  std::string command;
  bool quick = false;

  unsigned effective_width() const;
};

struct Preset {
  std::string name;
  std::uint32_t n;
  std::uint64_t q;
  unsigned width;
  Mode mode;
};

const std::vector<Preset>& presets();

// key=value lines; '#' starts a comment; blank lines ignored.
std::map<std::string, std::string> parse_config_text(const std::string& text);

// Applies one config key; throws Error(InvalidArgument) on unknown keys or bad values.
void apply_config_key(RunConfig& cfg, const std::string& key, const std::string& value);

// One decimal coefficient per line, blocks separated by blank lines.
std::vector<std::vector<std::uint64_t>> parse_coefficient_blocks(const std::string& text);

std::vector<std::uint32_t> parse_list(const std::string& text);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SuiteResult {
  std::string name;
  bool pass;
  std::string detail;
};

struct SelftestOptions {
  bool quick = false;
  bool fault_comparator_init = false;
};

std::vector<SuiteResult> run_selftest(const SelftestOptions& opts);

}  // namespace sramntt::cli
