#include "seshadri/linear_form.hpp"

#include <algorithm>
#include <cctype>

namespace seshadri {

LinearForm::LinearForm(Vector coefficients) : coefficients_(std::move(coefficients)) { trim(); }

LinearForm LinearForm::variable(std::size_t index, Rational coefficient) {
  LinearForm form;
  form.set(index, std::move(coefficient));
  return form;
}

Rational LinearForm::operator[](std::size_t index) const {
  return index < coefficients_.size() ? coefficients_[index] : Rational(0);
}

void LinearForm::set(std::size_t index, Rational value) {
  if (index >= coefficients_.size()) coefficients_.resize(index + 1);
  coefficients_[index] = std::move(value);
  trim();
}

bool LinearForm::is_zero() const { return coefficients_.empty(); }

Rational LinearForm::evaluate(std::span<const Rational> point) const {
  if (point.size() < coefficients_.size()) {
    throw DomainError("point has " + std::to_string(point.size()) + " coordinates, form needs " +
                      std::to_string(coefficients_.size()));
  }
  Rational value = 0;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (coefficients_[i] != 0) value += coefficients_[i] * point[i];
  }
  return value;
}

LinearForm& LinearForm::operator+=(const LinearForm& other) {
  if (other.coefficients_.size() > coefficients_.size()) coefficients_.resize(other.coefficients_.size());
  for (std::size_t i = 0; i < other.coefficients_.size(); ++i) coefficients_[i] += other.coefficients_[i];
  trim();
  return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& other) {
  if (other.coefficients_.size() > coefficients_.size()) coefficients_.resize(other.coefficients_.size());
  for (std::size_t i = 0; i < other.coefficients_.size(); ++i) coefficients_[i] -= other.coefficients_[i];
  trim();
  return *this;
}

LinearForm& LinearForm::operator*=(const Rational& factor) {
  for (auto& c : coefficients_) c *= factor;
  trim();
  return *this;
}

bool operator==(const LinearForm& lhs, const LinearForm& rhs) {
  // both sides are trimmed, so padding never differs
  return lhs.coefficients_ == rhs.coefficients_;
}

void LinearForm::trim() {
  while (!coefficients_.empty() && coefficients_.back() == 0) coefficients_.pop_back();
}

std::string LinearForm::to_string(std::span<const std::string> names,
                                  std::optional<std::size_t> unit) const {
  std::string out;
  auto append_term = [&](const Rational& coeff, const std::string& name) {
    const bool negative = coeff < 0;
    const Rational magnitude = negative ? Rational(-coeff) : coeff;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (name.empty()) {
      out += seshadri::to_string(magnitude);
    } else {
      if (magnitude != 1) out += seshadri::to_string(magnitude) + "*";
      out += name;
    }
  };
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (coefficients_[i] == 0 || (unit && *unit == i)) continue;
    const std::string name = i < names.size() ? names[i] : "x" + std::to_string(i);
    append_term(coefficients_[i], name);
  }
  if (unit && (*this)[*unit] != 0) append_term((*this)[*unit], "");
  return out.empty() ? "0" : out;
}

Rational dot(std::span<const Rational> lhs, std::span<const Rational> rhs) {
  Rational value = 0;
  const std::size_t n = std::min(lhs.size(), rhs.size());
  for (std::size_t i = 0; i < n; ++i) value += lhs[i] * rhs[i];
  return value;
}

namespace {

class FormParser {
 public:
  FormParser(std::string_view text, std::span<const std::string> names, std::optional<std::size_t> unit)
      : text_(text), names_(names), unit_(unit) {}

  LinearForm parse() {
    LinearForm form;
    skip_space();
    bool first = true;
    while (pos_ < text_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      form += parse_term() * Rational(sign);
      first = false;
      skip_space();
    }
    if (first) fail("empty expression");
    return form;
  }

 private:
  LinearForm parse_term() {
    Rational coeff = 1;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek())) != 0) {
      coeff = parse_number();
      have_coeff = true;
      skip_space();
      if (peek() == '*') {
        ++pos_;
        skip_space();
      } else {
        return constant(coeff);
      }
    }
    if (std::isalpha(static_cast<unsigned char>(peek())) == 0 && peek() != '_') {
      fail(have_coeff ? "expected a variable after '*'" : "expected a number or variable");
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0 || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
      pos_ = start;
      fail("unknown variable '" + name + "'");
    }
    return LinearForm::variable(static_cast<std::size_t>(it - names_.begin()), coeff);
  }

  LinearForm constant(const Rational& value) {
    if (!unit_) fail("non-homogeneous constant term in a homogeneous form");
    return LinearForm::variable(*unit_, value);
  }

  Rational parse_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0 ||
                                   text_[pos_] == '/' || text_[pos_] == '.')) {
      ++pos_;
    }
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const InputError& e) {
      pos_ = start;
      fail(e.what());
    }
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw InputError("in form '" + std::string(text_) + "' at column " + std::to_string(pos_ + 1) +
                     ": " + message);
  }

  std::string_view text_;
  std::span<const std::string> names_;
  std::optional<std::size_t> unit_;
  std::size_t pos_ = 0;
};

}  // namespace

LinearForm parse_linear_form(std::string_view text, std::span<const std::string> names,
                             std::optional<std::size_t> unit) {
  return FormParser(text, names, unit).parse();
}

}  // namespace seshadri
