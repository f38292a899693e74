#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ignifront {

enum class ErrorCode {
  // input validation
  NonFinite,
  NonPositiveParameter,
  OrderingViolated,
  InvalidReaction,
  OutOfDomain,
  OutOfRange,
  SpeedNonPositive,
  StabilityViolated,
  UsageError,
  // numerical failures
  BracketFailure,
  NoSignChange,
  SeedTooLarge,
  ToleranceFailure,
  TailEstimateUnreliable,
  ExtrapolationBeyondTail,
  FrontLeftDomain,
  InsufficientData,
  IoFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for errors caused by bad inputs rather than by a numerical breakdown.
bool is_validation_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ignifront
