#pragma once

#include <stdexcept>
#include <string>

namespace commlab {

class CommlabError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Caller passed inconsistent parameters (arity mismatch, bad flag combos).
class ConfigError : public CommlabError {
  using CommlabError::CommlabError;
};

/// A protocol or automaton broke an engine contract at run time.
class EngineViolation : public CommlabError {
  using CommlabError::CommlabError;
};

/// An operation declined to run (enumeration cap, empty prime range, overflow).
/// `reason` is a stable machine-readable code; `what()` is the human message.
class Refusal : public CommlabError {
 public:
  Refusal(std::string reason_code, const std::string& message)
      : CommlabError(message), reason(std::move(reason_code)) {}
  std::string reason;
};

}  // namespace commlab
