#pragma once

#include <stdexcept>
#include <string>

namespace rmstuck {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameter combination or malformed input.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// More stuck cells than the configured multiplicity can mask.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A label does not uniquely identify the masks of its set.
class LabelError : public Error {
 public:
  using Error::Error;
};

/// Label columns are linearly dependent in the generator matrix, so they
/// cannot be part of a systematic information set.
class InfeasibleLabelError : public LabelError {
 public:
  using LabelError::LabelError;
};

/// The random-error decoder could not return a codeword within radius t.
class DecodeError : public Error {
 public:
  using Error::Error;
};

/// Decoded label bits do not match any mask in the set.
class LabelMissError : public DecodeError {
 public:
  using DecodeError::DecodeError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace rmstuck
