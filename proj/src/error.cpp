#include "rb/error.hpp"

namespace rb {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid_argument";
    case ErrorCode::kDegenerateTightness:
      return "degenerate_tightness";
    case ErrorCode::kNotBijective:
      return "not_bijective";
    case ErrorCode::kUnsupportedArity:
      return "unsupported_arity";
    case ErrorCode::kOracleGuard:
      return "oracle_guard";
    case ErrorCode::kNoSwapPair:
      return "no_swap_pair";
    case ErrorCode::kNoSelfUnsatConstraint:
      return "no_self_unsat_constraint";
    case ErrorCode::kVariableUnconstrained:
      return "variable_unconstrained";
    case ErrorCode::kMalformedModel:
      return "malformed_model";
    case ErrorCode::kDimacsHeader:
      return "dimacs_header";
    case ErrorCode::kDimacsLiteralRange:
      return "dimacs_literal_range";
    case ErrorCode::kDimacsMissingTerminator:
      return "dimacs_missing_terminator";
    case ErrorCode::kSchemaVersion:
      return "schema_version";
    case ErrorCode::kBudgetExhausted:
      return "budget_exhausted";
    case ErrorCode::kIo:
      return "io";
    case ErrorCode::kParse:
      return "parse";
  }
  return "unknown";
}

}  // namespace rb
