#pragma once

#include <stdexcept>
#include <string>

namespace gravprobe {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class BasisMismatch : public Error {
 public:
  using Error::Error;
};

class DegenerateSuperposition : public Error {
 public:
  using Error::Error;
};

class DegenerateCouplingError : public Error {
 public:
  using Error::Error;
};

class NotDegenerateError : public Error {
 public:
  using Error::Error;
};

class InvalidDistribution : public Error {
 public:
  using Error::Error;
};

class NoInformationError : public Error {
 public:
  using Error::Error;
};

class SingularOutcomeError : public Error {
 public:
  using Error::Error;
};

class PhaseUndefinedError : public Error {
 public:
  using Error::Error;
};

class NumericalInconsistency : public Error {
 public:
  using Error::Error;
};

// raised when a grid or quadrature refinement does not settle
class GridResolutionError : public Error {
 public:
  using Error::Error;
};

class TruncationError : public Error {
 public:
  using Error::Error;
};

class UnsupportedProbe : public Error {
 public:
  using Error::Error;
};

class UnsupportedDiscretization : public Error {
 public:
  using Error::Error;
};

// throws InvalidArgument with `what` unless cond holds
void require(bool cond, const std::string& what);

}  // namespace gravprobe
