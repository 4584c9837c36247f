#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace thg {

enum class ErrorKind {
  InvalidInput,
  NotFound,
  Unsupported,
  InsufficientData,
  ParseError,
  SchemaViolation,
  InvariantViolation,
  NotApplicable,
  Internal,
};

std::string_view to_string(ErrorKind kind);

/// Library error. `path` is a JSON-style field path when the error comes from
/// model loading, empty otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string path = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& path() const noexcept { return path_; }
  /// The message without the kind and path prefixes.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string path_;
  std::string message_;
};

}  // namespace thg
