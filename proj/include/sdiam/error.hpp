#pragma once

#include <stdexcept>
#include <string>

namespace sdiam {

enum class ErrorKind {
  kParse,          // malformed input file
  kValidation,     // structure failed a validator
  kDisconnected,   // graph (or G - A) is not connected where required
  kApexCap,        // too many apices for the range index
  kEmptySide,      // a separation has an empty side
  kSizeCap,        // instance larger than a configured cap
  kPrecondition,   // any other violated precondition
  kInternal,
};

// Every failure the library reports is an Error carrying a kind; the CLI maps
// kinds to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kDisconnected: return "disconnected";
    case ErrorKind::kApexCap: return "apex_cap";
    case ErrorKind::kEmptySide: return "empty_side";
    case ErrorKind::kSizeCap: return "size_cap";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kInternal: return "internal";
  }
  return "unknown";
}

}  // namespace sdiam
