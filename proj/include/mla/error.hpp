#pragma once

#include <stdexcept>
#include <string>

namespace mla {

// Base of every error raised by the library. The CLI maps subclasses onto
// exit codes, so keep the hierarchy flat.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand dimensions do not conform (contraction modes, reshape sizes, JSON
// payload length, square-tensor requirement).
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

// A dense kernel (SVD, eigen-solver) did not converge.
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

class IndexNotOne : public Error {
 public:
  using Error::Error;
};

class ZeroTensor : public Error {
 public:
  using Error::Error;
};

class CandidateInvalid : public Error {
 public:
  using Error::Error;
};

// A series or stationary iteration is known not to converge (rho >= 1).
class NotConvergent : public Error {
 public:
  using Error::Error;
};

class ZeroDiagonal : public Error {
 public:
  using Error::Error;
};

// Right-hand side is not in R(A^k).
class Inconsistent : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

// Malformed tensor JSON or CSV input.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace mla
