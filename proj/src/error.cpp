#include "thg/error.hpp"

namespace thg {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::NotFound: return "not-found";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::ParseError: return "parse-error";
    case ErrorKind::SchemaViolation: return "schema-violation";
    case ErrorKind::InvariantViolation: return "invariant-violation";
    case ErrorKind::NotApplicable: return "not-applicable";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

namespace {
std::string format_message(ErrorKind kind, const std::string& message, const std::string& path) {
  std::string out(to_string(kind));
  out += ": ";
  if (!path.empty()) out += path + ": ";
  out += message;
  return out;
}
}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::string path)
    : std::runtime_error(format_message(kind, message, path)), kind_(kind), path_(std::move(path)), message_(message) {}

}  // namespace thg
