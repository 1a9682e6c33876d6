#pragma once

#include <stdexcept>
#include <string>

namespace frankl {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file or unparsable value.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Family is closed under neither intersection nor union.
class NotClosedError : public Error {
 public:
  using Error::Error;
};

/// Requested element does not occur in any set of the family.
class ElementAbsentError : public Error {
 public:
  using Error::Error;
};

/// Operation requires a family with at least two sets.
class FamilyTooSmallError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration requested beyond the supported ground-set size.
class GroundSetTooLargeError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or joint-distribution request exceeds the configured budget.
class BudgetExceededError : public Error {
 public:
  BudgetExceededError(const std::string& what, std::string estimated_size)
      : Error(what), estimated_size_(std::move(estimated_size)) {}

  /// Decimal string; sizes can exceed 64 bits.
  const std::string& estimated_size() const { return estimated_size_; }

 private:
  std::string estimated_size_;
};

/// Conditioning prefix has zero probability.
class ZeroProbabilityPrefixError : public Error {
 public:
  using Error::Error;
};

/// Queried set is not a member of the base family.
class SetAbsentError : public Error {
 public:
  using Error::Error;
};

/// Symbol exponent outside the valid range for its coordinate parameters.
class ExponentOutOfRangeError : public Error {
 public:
  using Error::Error;
};

/// Argument outside a function's mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace frankl
