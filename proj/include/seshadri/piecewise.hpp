#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seshadri/linear_form.hpp"

namespace seshadri {

/// A condition `form >= 0` attached to a branch of a piecewise form.
struct BranchCondition {
  LinearForm form;
  std::string label;
};

/// One linear piece of a piecewise-linear form, with the conditions on the
/// cone under which the piece is the active one.
struct Branch {
  std::vector<std::size_t> choice;  // one index per min/max node, innermost first
  LinearForm form;
  std::vector<BranchCondition> conditions;
};

/// Composition of min, max and sums of homogeneous linear forms.
class PlForm {
 public:
  enum class Op { linear, min, max, sum };

  PlForm() = default;
  static PlForm linear(LinearForm form);
  static PlForm min(std::vector<PlForm> children);
  static PlForm max(std::vector<PlForm> children);
  static PlForm sum(std::vector<PlForm> children);

  Op op() const { return op_; }
  const LinearForm& form() const { return form_; }
  const std::vector<PlForm>& children() const { return children_; }
  bool is_linear() const { return op_ == Op::linear; }

  Rational evaluate(std::span<const Rational> point) const;

  PlForm scaled(const Rational& factor) const;
  PlForm shifted(const LinearForm& offset) const;

  // Resolves every min/max node (innermost first) into the list of linear
  // pieces. The branch order is deterministic: children are combined in
  // lexicographic order, then the active child index runs over 0..k-1.
  std::vector<Branch> resolve(std::span<const std::string> names,
                              std::optional<std::size_t> unit = std::nullopt) const;

  std::string to_string(std::span<const std::string> names,
                        std::optional<std::size_t> unit = std::nullopt) const;

  friend bool operator==(const PlForm& lhs, const PlForm& rhs);

 private:
  Op op_ = Op::linear;
  LinearForm form_;
  std::vector<PlForm> children_;
};

}  // namespace seshadri
