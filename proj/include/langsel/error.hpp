#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace langsel {

/// Coarse error categories; the CLI maps these onto exit codes.
enum class ErrorKind { Usage, Validation, Io };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Stable error name, e.g. "MissingPrediction".
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

#define LANGSEL_VALIDATION_ERROR(Name)                                  \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& message)                           \
        : Error(ErrorKind::Validation, #Name, #Name ": " + message) {}  \
  }

LANGSEL_VALIDATION_ERROR(MissingPrediction);
LANGSEL_VALIDATION_ERROR(UnknownId);
LANGSEL_VALIDATION_ERROR(IdMismatch);
LANGSEL_VALIDATION_ERROR(WeightError);
LANGSEL_VALIDATION_ERROR(RangeError);
LANGSEL_VALIDATION_ERROR(DuplicateId);
LANGSEL_VALIDATION_ERROR(EmptyInput);
LANGSEL_VALIDATION_ERROR(NoBaseline);
LANGSEL_VALIDATION_ERROR(DuplicateModelId);
LANGSEL_VALIDATION_ERROR(DegenerateGold);
LANGSEL_VALIDATION_ERROR(TrackMismatch);
LANGSEL_VALIDATION_ERROR(EmptyWord);
LANGSEL_VALIDATION_ERROR(EmptyCorpus);
LANGSEL_VALIDATION_ERROR(GridError);
LANGSEL_VALIDATION_ERROR(ConflictError);
LANGSEL_VALIDATION_ERROR(SplitError);

#undef LANGSEL_VALIDATION_ERROR

/// Malformed input at a known location. `line` is 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(ErrorKind::Validation, "ParseError",
              "ParseError: " + source + (line ? ":" + std::to_string(line) : std::string()) +
                  ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message)
      : Error(ErrorKind::Io, "IoError", "IoError: " + message) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& message)
      : Error(ErrorKind::Usage, "UsageError", "UsageError: " + message) {}
};

}  // namespace langsel
