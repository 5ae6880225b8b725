#ifndef SUPERHOL_ERROR_HPP
#define SUPERHOL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace superhol {

/// Machine-readable error categories. The CLI maps these to exit codes.
enum class ErrorCode {
  dimension_mismatch,
  parity_violation,
  index_out_of_range,
  not_invertible,
  parse_error,
  unresolved_reference,
  precondition_failed,
  unsupported_order,
  numeric_failure,
  io_error,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::parity_violation: return "parity_violation";
    case ErrorCode::index_out_of_range: return "index_out_of_range";
    case ErrorCode::not_invertible: return "not_invertible";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::unresolved_reference: return "unresolved_reference";
    case ErrorCode::precondition_failed: return "precondition_failed";
    case ErrorCode::unsupported_order: return "unsupported_order";
    case ErrorCode::numeric_failure: return "numeric_failure";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

} // namespace superhol

#endif
