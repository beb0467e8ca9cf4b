#ifndef BANDSPEC_ERRORS_HPP
#define BANDSPEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bandspec {

/// Bad call arguments: out-of-range indices, insufficient data, wrong case tag.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An extreme diagonal entry of the banded matrix is (numerically) zero.
class DegenerateMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation point outside the region where a series converges.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A closed-form value is not representable in the working precision.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// Two independent evaluation routes of the same quantity disagree.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed matrix specification file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bandspec

#endif  // BANDSPEC_ERRORS_HPP
