#include "curvlie/error.hpp"

namespace curvlie {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::DivisionByZero: return "division by zero";
    case ErrorCode::Singular: return "singular matrix";
    case ErrorCode::VariableMismatch: return "variable table mismatch";
    case ErrorCode::MissingVariable: return "missing variable";
    case ErrorCode::BudgetExceeded: return "resource budget exceeded";
    case ErrorCode::Internal: return "internal error";
  }
  return "unknown error";
}

}  // namespace curvlie
