#pragma once

#include <stdexcept>
#include <string>

namespace cutkit {

enum class ErrorCode {
  EmptyRuleset,
  NonPositiveCut,
  MalformedText,
  TailOverlap,
  InfiniteRuleset,
  CapacityExceeded,
  OracleScaleExceeded,
  OutOfRange,
  NotApplicable,
  TableTooShort,
  PrefixTooShort,
  HeapBeyondTable,
  NotApplicableRuleset,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyRuleset: return "EmptyRuleset";
    case ErrorCode::NonPositiveCut: return "NonPositiveCut";
    case ErrorCode::MalformedText: return "MalformedText";
    case ErrorCode::TailOverlap: return "TailOverlap";
    case ErrorCode::InfiniteRuleset: return "InfiniteRuleset";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::OracleScaleExceeded: return "OracleScaleExceeded";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::TableTooShort: return "TableTooShort";
    case ErrorCode::PrefixTooShort: return "PrefixTooShort";
    case ErrorCode::HeapBeyondTable: return "HeapBeyondTable";
    case ErrorCode::NotApplicableRuleset: return "NotApplicableRuleset";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cutkit
