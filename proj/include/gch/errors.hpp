#pragma once

#include <stdexcept>
#include <string>

namespace gch {

/// Invalid parameters or configuration. `field()` names the offending
/// setting (e.g. "grid.n") when one is known.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& message, std::string field = {})
      : std::invalid_argument(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A computation produced NaN or infinity (typically imminent blow-up).
class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gch
