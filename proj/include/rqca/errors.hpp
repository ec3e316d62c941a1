#pragma once

#include <stdexcept>
#include <string>

namespace rqca {

// Root of the exception hierarchy. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: dimension mismatches, mixed contexts, malformed text or JSON.
class UsageError : public Error {
 public:
  using Error::Error;
};

class NotExactlyDivisible : public Error {
 public:
  using Error::Error;
};

class NegativePowerOfPolynomialVariable : public Error {
 public:
  using Error::Error;
};

class NotSkewSymmetrizable : public Error {
 public:
  using Error::Error;
};

class NotEllCompatible : public Error {
 public:
  NotEllCompatible(const std::string& what, int row, int col)
      : Error(what), row_(row), col_(col) {}
  // 0-based position (i, j) of the first failing congruence.
  int row() const { return row_; }
  int col() const { return col_; }

 private:
  int row_;
  int col_;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class CoprimeViolated : public Error {
 public:
  using Error::Error;
};

class DecompositionFailed : public Error {
 public:
  using Error::Error;
};

class ZeroPivotUnresolvable : public Error {
 public:
  using Error::Error;
};

class NotANerve : public Error {
 public:
  using Error::Error;
};

class NotReduced : public Error {
 public:
  using Error::Error;
};

class NotInRootLattice : public Error {
 public:
  using Error::Error;
};

class UnsupportedWord : public Error {
 public:
  using Error::Error;
};

// Internal consistency failure: an invariant that should always hold did not.
class CompatibilityFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace rqca
