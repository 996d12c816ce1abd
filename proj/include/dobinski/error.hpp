#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dobinski {

enum class ErrorKind { invalid_argument, pole, divergence, cap_exceeded };

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::pole: return "pole";
    case ErrorKind::divergence: return "divergence";
    case ErrorKind::cap_exceeded: return "cap_exceeded";
  }
  return "unknown";
}

/// Mathematical failure raised by the evaluation routines. The CLI maps
/// these onto exit code 1 and a JSON error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail, std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(detail), kind_(kind), index_(index) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Series index the failure refers to (the offending k of a pole).
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> index_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail,
                              std::optional<std::size_t> index = std::nullopt) {
  throw Error(kind, detail, index);
}

}  // namespace dobinski
