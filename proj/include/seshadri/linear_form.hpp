#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seshadri/rational.hpp"

namespace seshadri {

using Vector = std::vector<Rational>;

/// Homogeneous linear form over the variables of a cone. Coefficients past
/// size() are zero, so forms built before a variable was appended stay valid.
class LinearForm {
 public:
  LinearForm() = default;
  explicit LinearForm(Vector coefficients);

  static LinearForm variable(std::size_t index, Rational coefficient = 1);

  std::size_t size() const { return coefficients_.size(); }
  Rational operator[](std::size_t index) const;
  void set(std::size_t index, Rational value);
  const Vector& coefficients() const { return coefficients_; }

  bool is_zero() const;
  Rational evaluate(std::span<const Rational> point) const;

  LinearForm& operator+=(const LinearForm& other);
  LinearForm& operator-=(const LinearForm& other);
  LinearForm& operator*=(const Rational& factor);

  friend LinearForm operator+(LinearForm lhs, const LinearForm& rhs) { return lhs += rhs; }
  friend LinearForm operator-(LinearForm lhs, const LinearForm& rhs) { return lhs -= rhs; }
  friend LinearForm operator*(LinearForm form, const Rational& factor) { return form *= factor; }
  friend LinearForm operator*(const Rational& factor, LinearForm form) { return form *= factor; }
  friend LinearForm operator-(LinearForm form) { return form *= Rational(-1); }

  // Zero-padded comparison.
  friend bool operator==(const LinearForm& lhs, const LinearForm& rhs);

  // Renders e.g. "2*a + b - 1"; the unit variable, when given, prints as a
  // constant.
  std::string to_string(std::span<const std::string> names,
                        std::optional<std::size_t> unit = std::nullopt) const;

 private:
  void trim();

  Vector coefficients_;
};

Rational dot(std::span<const Rational> lhs, std::span<const Rational> rhs);

// Parses expressions such as "2*d - m_1 - m_2 + 3" over the given names.
// Constant terms attach to `unit`; without a unit they are rejected.
LinearForm parse_linear_form(std::string_view text, std::span<const std::string> names,
                             std::optional<std::size_t> unit);

}  // namespace seshadri
