#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dist235 {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text or model file. `position` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A rational function was evaluated (or expanded) where its denominator vanishes.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Division by an exactly-zero polynomial, series or matrix pivot.
class ZeroDivisionError : public Error {
 public:
  using Error::Error;
};

/// Truncation orders that cannot be combined, or are too small for an extraction.
class OrderError : public Error {
 public:
  using Error::Error;
};

/// Geometric degeneracy: wrong growth vector, singular frame, lost transversality.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// An internal identity or self-check that must hold exactly did not.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace dist235
