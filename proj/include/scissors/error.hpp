#pragma once

#include <stdexcept>
#include <string>

namespace scissors {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed complex or functor documents.
class ParseError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its domain (wrong boundary, non-cofibration, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Cover saturation refused because a down-set is larger than the configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class BoundExceeded : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace scissors
