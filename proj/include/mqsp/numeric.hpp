#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace mqsp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Coefficient arithmetic lives in one of two numeric backends.  A value
/// never changes backend after construction and backends never mix inside
/// one polynomial.
enum class Backend { Exact, Float };

struct BackendMismatch : std::logic_error {
  using std::logic_error::logic_error;
};

struct DegreeNotReduced : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidRange : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidSpec : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PrecondViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// JSON / text input that does not match the expected schema.  `where`
/// points at the offending field.
struct ParseError : std::runtime_error {
  std::string where;
  ParseError(std::string where_, const std::string& what_)
      : std::runtime_error(where_ + ": " + what_), where(std::move(where_)) {}
};

/// "num/den" in lowest terms; plain "num" when the denominator is 1.
std::string format_rational(const Rational& r);

/// Inverse of format_rational.  Accepts an optional leading sign on the
/// numerator only.  Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

/// Exact square root of a non-negative rational, or nullopt when either
/// numerator or denominator is not a perfect square.
std::optional<Rational> rational_sqrt(const Rational& r);

}  // namespace mqsp
