#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace evote {

// Base of every protocol-level failure raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Operation called in the wrong machine/session phase.
class PhaseError : public Error {
 public:
  using Error::Error;
};

class IdSpaceExhausted : public Error {
 public:
  using Error::Error;
};

// Some non-selected choices have no prior entry to borrow an id from.
class BootstrapProblem : public Error {
 public:
  explicit BootstrapProblem(std::vector<std::string> choices)
      : Error([&] {
          std::string msg = "no recorded entry to borrow for:";
          for (const auto& c : choices) msg += " '" + c + "'";
          return msg;
        }()),
        choices_(std::move(choices)) {}
  const std::vector<std::string>& choices() const noexcept { return choices_; }

 private:
  std::vector<std::string> choices_;
};

// Selections that are not exactly k distinct candidates.
class InvalidSelection : public Error {
 public:
  using Error::Error;
};

class CryptoError : public Error {
 public:
  using Error::Error;
};

class BadSignature : public Error {
 public:
  using Error::Error;
};

// Duplicate pairing, cross-choice id reuse or unknown choice on a board.
class BoardError : public Error {
 public:
  using Error::Error;
};

// Some candidate would end with a negative count after bootstrap subtraction.
class TallyInconsistency : public Error {
 public:
  using Error::Error;
};

// Fewer board entries than signings imply.
class MissingVotes : public Error {
 public:
  MissingVotes(std::int64_t shortfall)
      : Error("board holds " + std::to_string(shortfall) +
              " fewer entries than signings and bootstrap imply"),
        shortfall_(shortfall) {}
  std::int64_t shortfall() const noexcept { return shortfall_; }

 private:
  std::int64_t shortfall_;
};

class VoterRollMismatch : public Error {
 public:
  using Error::Error;
};

class MalformedBatch : public Error {
 public:
  using Error::Error;
};

// Per-candidate deviation of a bootstrap batch from B votes each.
struct CountDelta {
  std::string choice;
  std::int64_t delta = 0;
  friend bool operator==(const CountDelta&, const CountDelta&) = default;
};

class BootstrapCountMismatch : public Error {
 public:
  explicit BootstrapCountMismatch(std::vector<CountDelta> deltas);
  const std::vector<CountDelta>& deltas() const noexcept { return deltas_; }

 private:
  std::vector<CountDelta> deltas_;
};

class RecordDestroyed : public Error {
 public:
  using Error::Error;
};

}  // namespace evote
