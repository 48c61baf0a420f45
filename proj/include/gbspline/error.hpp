#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gbs {

enum class ErrorCode {
  InvalidArgument,
  NotNondecreasing,
  NonFiniteKnot,
  OutOfDomain,
  OutOfInterval,
  WidthTooLarge,
  SingularOrIllConditioned,
  ChebyshevViolation,
  QuadratureFailure,
  DegreeTooLargeForKnots,
  IndexOutOfRange,
  LadderMissing,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// True for codes that signal a numerical breakdown rather than bad input.
bool is_numeric_failure(ErrorCode code);

/// Library error. `index()` carries the offending knot, interval or
/// function index when one is meaningful.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace gbs
