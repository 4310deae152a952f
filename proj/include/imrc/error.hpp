#ifndef IMRC_ERROR_HPP
#define IMRC_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace imrc {

enum class ErrorCode {
  NonFinite,
  NegativePower,
  InvalidAllocation,
  InfeasibleRadicand,
  DegenerateRelayChannel,
  LinearizationInfeasible,
  BadBlockCount,
  NoFeasibleRho,
  NoFeasiblePoint,
  NoSignChange,
  BadGrid,
  ConfigError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NegativePower: return "NegativePower";
    case ErrorCode::InvalidAllocation: return "InvalidAllocation";
    case ErrorCode::InfeasibleRadicand: return "InfeasibleRadicand";
    case ErrorCode::DegenerateRelayChannel: return "DegenerateRelayChannel";
    case ErrorCode::LinearizationInfeasible: return "LinearizationInfeasible";
    case ErrorCode::BadBlockCount: return "BadBlockCount";
    case ErrorCode::NoFeasibleRho: return "NoFeasibleRho";
    case ErrorCode::NoFeasiblePoint: return "NoFeasiblePoint";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::BadGrid: return "BadGrid";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace imrc

#endif  // IMRC_ERROR_HPP
