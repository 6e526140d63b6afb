#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rbt {

// Root of every error the library throws. Callers that only need to report
// and exit can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Board digits violate the X-first parity rule or show two winners.
class InvalidState : public Error {
 public:
  using Error::Error;
};

class OccupiedCell : public Error {
 public:
  using Error::Error;
};

class TerminalState : public Error {
 public:
  using Error::Error;
};

class FormatVersionMismatch : public Error {
 public:
  using Error::Error;
};

class CorruptEntry : public Error {
 public:
  using Error::Error;
};

// Every support state was eliminated while predicting; the history cannot
// have happened under the engine's dynamics.
class EmptySupport : public Error {
 public:
  using Error::Error;
};

// No support state is consistent with the observation.
class ZeroEvidence : public Error {
 public:
  using Error::Error;
};

class MissingQEntry : public Error {
 public:
  explicit MissingQEntry(std::uint32_t state)
      : Error("no Q-table entry for state " + std::to_string(state)),
        state_(state) {}

  std::uint32_t state() const noexcept { return state_; }

 private:
  std::uint32_t state_;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

}  // namespace rbt
