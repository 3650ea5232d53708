#pragma once

#include <stdexcept>
#include <string>

namespace regmaps {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RegistryMismatch : public Error {
 public:
  RegistryMismatch() : Error("polynomials use different variable registries") {}
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& what) : Error("unknown variable: " + what) {}
};

class OverlappingBlocks : public Error {
 public:
  OverlappingBlocks() : Error("sphere blocks share a variable") {}
};

class MissingAssignment : public Error {
 public:
  explicit MissingAssignment(const std::string& var) : Error("no value assigned to variable " + var) {}
};

class VarietyMismatch : public Error {
 public:
  VarietyMismatch(const std::string& expected, const std::string& got)
      : Error("variety mismatch: expected " + expected + ", got " + got) {}
};

// The point lies where the map's denominator vanishes.
class DenominatorZero : public Error {
 public:
  using Error::Error;
};

// The image of a point fails a codomain relation.
class CodomainViolation : public Error {
 public:
  using Error::Error;
};

class NoSampler : public Error {
 public:
  explicit NoSampler(const std::string& variety) : Error("no exact sampler registered for " + variety) {}
};

// Arguments outside an operation's documented range (n < 1, bad axis, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Raised by numerical routines that cannot produce a trustworthy answer.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace regmaps
