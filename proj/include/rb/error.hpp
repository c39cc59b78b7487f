#pragma once

#include <stdexcept>
#include <string>

namespace rb {

enum class ErrorCode {
  kInvalidArgument,
  kDegenerateTightness,
  kNotBijective,
  kUnsupportedArity,
  kOracleGuard,
  kNoSwapPair,
  kNoSelfUnsatConstraint,
  kVariableUnconstrained,
  kMalformedModel,
  kDimacsHeader,
  kDimacsLiteralRange,
  kDimacsMissingTerminator,
  kSchemaVersion,
  kBudgetExhausted,
  kIo,
  kParse,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rb
