#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace seshadri {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (scenario files, CLI values).
class InputError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain (mismatched ambients,
/// unsupported pairings, violated preconditions).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Accepts "p", "-p" and "p/q". Decimal and exponent notation are rejected
// so that every input stays exact.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

std::int64_t numerator_i64(const Rational& value);
std::int64_t denominator_i64(const Rational& value);

Rational floor(const Rational& value);

}  // namespace seshadri
