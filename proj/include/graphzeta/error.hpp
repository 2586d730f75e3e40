#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace graphzeta {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejected input: malformed graph, bad options, precondition violations.
class ValidationError : public Error {
 public:
  enum class Kind {
    SelfLoop,
    DuplicateEdge,
    NonPositiveWeight,
    VertexOutOfRange,
    WeightCountMismatch,
    EmptyGraph,
    Disconnected,
    NotRegular,
    MissingWeights,
    Parse,
    InvalidArgument,
  };

  ValidationError(Kind kind, const std::string& what)
      : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// A numerical routine could not produce a trustworthy answer
/// (pole of a scattering phase, QR non-convergence, missing null space).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A combinatorial resource cap was hit (orbit catalog size).
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::size_t length_reached)
      : Error(what), length_reached_(length_reached) {}

  std::size_t length_reached() const noexcept { return length_reached_; }

 private:
  std::size_t length_reached_;
};

}  // namespace graphzeta
