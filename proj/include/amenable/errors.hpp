#pragma once

#include <stdexcept>
#include <string>

namespace amenable {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operands come from different group backends (or incompatible shapes of one).
class BackendMismatch : public Error {
public:
  using Error::Error;
};

/// Operation is not defined for this backend, e.g. sign() of an integer.
class Unsupported : public Error {
public:
  using Error::Error;
};

/// Precondition on an argument violated.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A search or enumeration would exceed its configured budget.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

/// cofinite_trim could not find a trimming index inside the calibration range.
class CalibrationError : public Error {
public:
  using Error::Error;
};

class InvalidConfig : public Error {
public:
  using Error::Error;
};

} // namespace amenable
