#pragma once

#include <stdexcept>
#include <string>

namespace quasireg {

// Caller handed us something outside an operation's domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A construction produced output that failed its own verifier.
class ContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bounded search gave up.
class SearchExhausted : public std::runtime_error {
 public:
  SearchExhausted(const std::string& what, int largest_k)
      : std::runtime_error(what), largest_k_(largest_k) {}
  int largest_k() const { return largest_k_; }

 private:
  int largest_k_;
};

}  // namespace quasireg
