#pragma once

#include <stdexcept>
#include <string>

namespace gammarad {

// Base class for all library errors.  Everything thrown on purpose derives
// from this, so callers can catch one type at the boundary.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A mathematical precondition was violated (eigenvalue with nonpositive real
// part, exponent outside its admissible interval, empty family, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// Malformed input: bad configuration files, unknown keys, unparseable
// numbers, mismatched dimensions.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

// A computation would overflow, underflow to nonsense, or exceed a declared
// size guard (e.g. an index budget).
class NumericRangeError : public Error {
 public:
  explicit NumericRangeError(const std::string& what) : Error(what) {}
};

// A supplied basis failed its orthonormality check.  Carries the worst Gram
// defect so the caller can see how far off it was.
class BasisError : public Error {
 public:
  BasisError(const std::string& what, double worst_defect)
      : Error(what), worst_defect_(worst_defect) {}
  double worst_defect() const { return worst_defect_; }

 private:
  double worst_defect_ = 0.0;
};

}  // namespace gammarad
