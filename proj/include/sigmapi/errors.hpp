#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sigmapi {

enum class ErrorCode {
  // input
  SyntaxError,
  DuplicateEquation,
  BadExponent,
  NonSquare,
  // domain
  ContradictoryDomain,
  InvalidProjection,
  EmptySystem,
  DomainViolation,
  ZeroComponent,
  DomainExit,
  // numeric
  OrderBudget,
  NotStationary,
  NotQuadratic,
  OutOfRadius,
  StepLimit,
  Divergence,
  Blowup,
  MixedCenters,
  EmptyWindow,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Base of every exception thrown by the library. The code identifies the
/// failure precisely; the subclass only selects the category (which the CLI
/// maps to an exit status).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Location of a problem inside a text input. Lines and columns are 1-based,
/// byte offsets are 0-based and half-open.
struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t begin = 0;
  std::size_t end = 0;
};

class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& what, SourceSpan span)
      : Error(code, what), span_(span) {}

  const SourceSpan& span() const noexcept { return span_; }

 private:
  SourceSpan span_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace sigmapi
