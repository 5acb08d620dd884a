#include "seshadri/rational.hpp"

#include <cctype>
#include <limits>

namespace seshadri {

namespace {

Integer parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) {
    throw InputError("invalid rational '" + std::string(whole) + "': missing digits");
  }
  std::string_view body = digits;
  if (body.front() == '-' || body.front() == '+') body.remove_prefix(1);
  if (body.empty()) {
    throw InputError("invalid rational '" + std::string(whole) + "': missing digits");
  }
  for (char c : body) {
    if (std::isdigit(static_cast<unsigned char>(c)) == 0) {
      throw InputError("invalid rational '" + std::string(whole) + "': unexpected character '" +
                       std::string(1, c) + "'");
    }
  }
  return Integer(std::string(digits.front() == '+' ? digits.substr(1) : digits));
}

std::int64_t narrow(const Integer& value, const char* what) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    throw Error(std::string(what) + " does not fit in 64 bits: " + value.str());
  }
  return static_cast<std::int64_t>(value);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.find_first_of(".eE") != std::string_view::npos) {
    throw InputError("floating-point value '" + std::string(text) +
                     "' rejected: write exact rationals as \"p/q\"");
  }
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, text));
  }
  Integer num = parse_integer(text.substr(0, slash), text);
  Integer den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) {
    throw InputError("invalid rational '" + std::string(text) + "': zero denominator");
  }
  return Rational(num, den);
}

std::string to_string(const Rational& value) {
  const Integer& den = boost::multiprecision::denominator(value);
  if (den == 1) return boost::multiprecision::numerator(value).str();
  return boost::multiprecision::numerator(value).str() + "/" + den.str();
}

std::int64_t numerator_i64(const Rational& value) {
  return narrow(boost::multiprecision::numerator(value), "numerator");
}

std::int64_t denominator_i64(const Rational& value) {
  return narrow(boost::multiprecision::denominator(value), "denominator");
}

Rational floor(const Rational& value) {
  const Integer num = boost::multiprecision::numerator(value);
  const Integer den = boost::multiprecision::denominator(value);
  Integer q = num / den;
  if (num < 0 && q * den != num) q -= 1;
  return Rational(q);
}

}  // namespace seshadri
