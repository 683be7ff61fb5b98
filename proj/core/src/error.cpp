#include "sramntt/error.hpp"

namespace sramntt {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::NotPowerOfTwo: return "NotPowerOfTwo";
    case Errc::NoRootExists: return "NoRootExists";
    case Errc::InsufficientBitWidth: return "InsufficientBitWidth";
    case Errc::StageOutOfRange: return "StageOutOfRange";
    case Errc::ModulusMismatch: return "ModulusMismatch";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::RowOutOfRange: return "RowOutOfRange";
    case Errc::SameRow: return "SameRow";
    case Errc::SlotOverlapInvalid: return "SlotOverlapInvalid";
    case Errc::WidthMismatch: return "WidthMismatch";
    case Errc::HeadroomViolated: return "HeadroomViolated";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::FileFormat: return "FileFormat";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace sramntt
