#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace hullcheck {

enum class ErrorCode {
  Parse,
  Validation,
  NoMixedResults,
  NonFinite,
  DegenerateWeights,
  NotOverlapping,
  NotMinimal,
  NotTypeI,
  SingularVminus,
  BudgetExceeded,
  CompositionFailed,
  UnknownBasis,
  BadShape,
  DimensionUnsupported,
  InvalidArgument,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Line numbers are 1-based and count the header line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what, std::size_t line = 0)
      : Error(ErrorCode::Validation,
              (line ? "line " + std::to_string(line) + ": " : std::string()) + field + ": " + what),
        field_(std::move(field)),
        line_(line) {}

  const std::string& field() const noexcept { return field_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string field_;
  std::size_t line_;
};

}  // namespace hullcheck
