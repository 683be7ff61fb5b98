#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sramntt {

enum class Errc {
  NotPrime,
  NotPowerOfTwo,
  NoRootExists,
  InsufficientBitWidth,
  StageOutOfRange,
  ModulusMismatch,
  LengthMismatch,
  RowOutOfRange,
  SameRow,
  SlotOverlapInvalid,
  WidthMismatch,
  HeadroomViolated,
  IndexOutOfRange,
  FileFormat,
  InvalidArgument,
};

std::string_view to_string(Errc code) noexcept;

// Every failure in the library is reported through this type; `code()` is
// what callers (and the CLI) switch on.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace sramntt
