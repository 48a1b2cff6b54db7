#pragma once

#include <stdexcept>
#include <string>

namespace mss {

// A violated mathematical precondition (s > r, even r where oddness is needed, ...).
// `code` is a stable snake_case identifier for machine consumers.
class DomainError : public std::invalid_argument {
 public:
  DomainError(std::string code, const std::string& message)
      : std::invalid_argument(message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace mss
