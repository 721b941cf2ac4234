#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace threshold {

// Base of every error the library raises for bad input or violated preconditions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text (cotree notation, bit strings, decimal literals).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Well-formed input describing an object outside the model (a_r < 2, disconnected graph, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Evaluation at a pole of the join/union recurrences.
class PoleError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An explicit choice that does not exceed its level's lower bound.
class PolicyError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace threshold
