#pragma once

#include <stdexcept>
#include <string>

namespace resistnet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid graph construction: self-loop, duplicate pair, bad index or weight.
class GraphError : public Error {
 public:
  using Error::Error;
};

/// Malformed numeric input (non-finite entries, bad shapes, malformed sectors).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be inverted is numerically singular.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Effective resistance between nodes in different components.
class InfiniteResistanceError : public Error {
 public:
  using Error::Error;
};

/// An analysis precondition (connectivity, nominal stability, ...) does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The requested result does not apply to this configuration (e.g. overlapping path sets).
class NotApplicableError : public Error {
 public:
  using Error::Error;
};

/// Integration step violates the explicit stability guard.
class StepSizeError : public Error {
 public:
  using Error::Error;
};

/// Random graph generation failed (e.g. never connected).
class GenerationError : public Error {
 public:
  using Error::Error;
};

/// Graph file could not be parsed or does not follow the schema.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace resistnet
