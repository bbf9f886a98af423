#include "vogp/error.hpp"

#include <atomic>
#include <iostream>

namespace vogp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroRow: return "ZeroRow";
    case ErrorCode::NotPointed: return "NotPointed";
    case ErrorCode::EmptyInterior: return "EmptyInterior";
    case ErrorCode::ThetaOutOfRange: return "ThetaOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::UnboundedBox: return "UnboundedBox";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::FactorizationFailure: return "FactorizationFailure";
    case ErrorCode::DegenerateData: return "DegenerateData";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::EmptyFront: return "EmptyFront";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::AlreadyExpanded: return "AlreadyExpanded";
    case ErrorCode::GridTooLarge: return "GridTooLarge";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::NonNumericCell: return "NonNumericCell";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {
std::atomic<bool> g_warnings{true};
}

void warn(const std::string& message) {
  if (g_warnings.load(std::memory_order_relaxed)) std::clog << "warning: " << message << '\n';
}

void set_warnings_enabled(bool enabled) { g_warnings.store(enabled, std::memory_order_relaxed); }

}  // namespace vogp
