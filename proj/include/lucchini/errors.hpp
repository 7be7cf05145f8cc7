#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lucchini {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (cycle notation, element grammar, config files).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or evaluation ran past a configured resource bound.
class BoundExceeded : public Error {
 public:
  BoundExceeded(const std::string& what, std::size_t reached)
      : Error(what + " (reached " + std::to_string(reached) + ")"),
        reached_(reached) {}

  /// Partial count reached before giving up.
  std::size_t reached() const noexcept { return reached_; }

 private:
  std::size_t reached_;
};

/// A check was refused because the hypothesis it relies on does not hold.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

}  // namespace lucchini
