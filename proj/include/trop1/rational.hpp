#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace trop1 {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent user input (exit code 2 at the CLI).
class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& what) : Error(what) {}
};

/// Two independent routes disagreed; indicates a bug, never bad input.
class InconsistencyError : public Error {
public:
    explicit InconsistencyError(const std::string& what) : Error(what) {}
};

/// Parses "n" or "p/q" (optional leading '-', q > 0) into a canonical rational.
Rational parse_rational(std::string_view text);

/// Formats as "n" for integers and "p/q" otherwise; q is always positive.
std::string format_rational(const Rational& value);

inline bool is_integer(const Rational& value) {
    return boost::multiprecision::denominator(value) == 1;
}

inline Integer numerator_of(const Rational& value) { return boost::multiprecision::numerator(value); }
inline Integer denominator_of(const Rational& value) { return boost::multiprecision::denominator(value); }

inline int sign(const Rational& value) { return value.sign(); }

}  // namespace trop1
