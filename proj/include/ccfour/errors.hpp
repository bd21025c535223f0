#pragma once

#include <stdexcept>
#include <string>

namespace ccfour {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mass is non-positive or non-finite. `index()` is 0-based.
class MassError : public Error {
 public:
  MassError(int index, const std::string& what) : Error(what), index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_;
};

/// Some weighted area vanishes: the direction lies on a collinearity circle.
class DegenerateDirection : public Error {
 public:
  using Error::Error;
};

/// lambda lies outside the interval where every 1 + lambda*A_j*A_k is positive.
class LambdaDomainError : public Error {
 public:
  LambdaDomainError(int i, int j, const std::string& what) : Error(what), i_(i), j_(j) {}
  int first() const noexcept { return i_; }
  int second() const noexcept { return j_; }

 private:
  int i_, j_;
};

/// Distances violate a triangle inequality.
class NotRealizable : public Error {
 public:
  using Error::Error;
};

/// Distances are not coplanar within tolerance.
class NotPlanar : public Error {
 public:
  using Error::Error;
};

/// Ratios S_j / A_j do not share one sign, so no positive masses exist.
class InconsistentOrientation : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace ccfour
