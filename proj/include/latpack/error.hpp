#pragma once

#include <stdexcept>
#include <string>

namespace latpack {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that cannot describe a full-dimensional bounded polytope.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};
class Unbounded : public Error {
 public:
  using Error::Error;
};
class EmptyInterior : public Error {
 public:
  using Error::Error;
};
class ParseError : public Error {
 public:
  using Error::Error;
};

class ZeroPolynomial : public Error {
 public:
  using Error::Error;
};
class DegreeTooHigh : public Error {
 public:
  using Error::Error;
};
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};
class BothConstantInVar : public Error {
 public:
  using Error::Error;
};

class UnknownSolid : public Error {
 public:
  using Error::Error;
};
class NoLatticeFound : public Error {
 public:
  using Error::Error;
};

}  // namespace latpack
