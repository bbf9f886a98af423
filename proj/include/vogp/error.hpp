#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vogp {

enum class ErrorCode {
  // cone
  ZeroRow,
  NotPointed,
  EmptyInterior,
  ThetaOutOfRange,
  // shared
  DimensionMismatch,
  EmptyInput,
  IndexOutOfRange,
  NonFiniteInput,
  // convex
  UnboundedBox,
  Infeasible,
  NotConverged,
  // gp
  FactorizationFailure,
  DegenerateData,
  // engine
  EmptySet,
  NotFound,
  // metrics
  EmptyFront,
  // adadisc
  DepthExceeded,
  AlreadyExpanded,
  GridTooLarge,
  // harness
  MalformedHeader,
  NonNumericCell,
  TooFewRows,
  UnknownName,
  OutOfDomain,
  InvalidConfig,
  Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Writes a diagnostic line to stderr unless warnings are silenced.
void warn(const std::string& message);
void set_warnings_enabled(bool enabled);

}  // namespace vogp
