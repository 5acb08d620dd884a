#include "seshadri/piecewise.hpp"

#include <algorithm>

namespace seshadri {

PlForm PlForm::linear(LinearForm form) {
  PlForm f;
  f.op_ = Op::linear;
  f.form_ = std::move(form);
  return f;
}

namespace {

PlForm make_node(PlForm::Op op, std::vector<PlForm> children) {
  if (children.empty()) throw DomainError("min/max/sum of an empty list");
  if (children.size() == 1) return std::move(children.front());
  switch (op) {
    case PlForm::Op::min: return PlForm::min(std::move(children));
    case PlForm::Op::max: return PlForm::max(std::move(children));
    default: return PlForm::sum(std::move(children));
  }
}

}  // namespace

PlForm PlForm::min(std::vector<PlForm> children) {
  if (children.size() <= 1) return make_node(Op::linear, std::move(children));
  PlForm f;
  f.op_ = Op::min;
  f.children_ = std::move(children);
  return f;
}

PlForm PlForm::max(std::vector<PlForm> children) {
  if (children.size() <= 1) return make_node(Op::linear, std::move(children));
  PlForm f;
  f.op_ = Op::max;
  f.children_ = std::move(children);
  return f;
}

PlForm PlForm::sum(std::vector<PlForm> children) {
  if (children.size() <= 1) return make_node(Op::linear, std::move(children));
  PlForm f;
  f.op_ = Op::sum;
  f.children_ = std::move(children);
  return f;
}

Rational PlForm::evaluate(std::span<const Rational> point) const {
  switch (op_) {
    case Op::linear: return form_.evaluate(point);
    case Op::sum: {
      Rational total = 0;
      for (const auto& c : children_) total += c.evaluate(point);
      return total;
    }
    case Op::min:
    case Op::max: {
      Rational best = children_.front().evaluate(point);
      for (std::size_t i = 1; i < children_.size(); ++i) {
        const Rational v = children_[i].evaluate(point);
        if (op_ == Op::min ? v < best : v > best) best = v;
      }
      return best;
    }
  }
  return 0;
}

PlForm PlForm::scaled(const Rational& factor) const {
  if (op_ == Op::linear) return linear(form_ * factor);
  std::vector<PlForm> scaled_children;
  scaled_children.reserve(children_.size());
  for (const auto& c : children_) scaled_children.push_back(c.scaled(factor));
  PlForm f;
  f.children_ = std::move(scaled_children);
  f.op_ = op_;
  // a negative factor swaps min and max
  if (factor < 0 && op_ == Op::min) f.op_ = Op::max;
  else if (factor < 0 && op_ == Op::max) f.op_ = Op::min;
  return f;
}

PlForm PlForm::shifted(const LinearForm& offset) const {
  switch (op_) {
    case Op::linear: return linear(form_ + offset);
    case Op::sum: {
      PlForm f = *this;
      f.children_.push_back(linear(offset));
      return f;
    }
    default: {
      PlForm f = *this;
      for (auto& c : f.children_) c = c.shifted(offset);
      return f;
    }
  }
}

std::vector<Branch> PlForm::resolve(std::span<const std::string> names,
                                    std::optional<std::size_t> unit) const {
  if (op_ == Op::linear) return {Branch{{}, form_, {}}};

  std::vector<std::vector<Branch>> resolved;
  resolved.reserve(children_.size());
  for (const auto& c : children_) resolved.push_back(c.resolve(names, unit));

  // cartesian product of the children's branches, lexicographic
  std::vector<std::vector<const Branch*>> combos{{}};
  for (const auto& options : resolved) {
    std::vector<std::vector<const Branch*>> next;
    next.reserve(combos.size() * options.size());
    for (const auto& prefix : combos) {
      for (const auto& b : options) {
        auto extended = prefix;
        extended.push_back(&b);
        next.push_back(std::move(extended));
      }
    }
    combos = std::move(next);
  }

  std::vector<Branch> out;
  for (const auto& combo : combos) {
    Branch merged;
    for (const Branch* b : combo) {
      merged.choice.insert(merged.choice.end(), b->choice.begin(), b->choice.end());
      merged.conditions.insert(merged.conditions.end(), b->conditions.begin(), b->conditions.end());
    }
    if (op_ == Op::sum) {
      for (const Branch* b : combo) merged.form += b->form;
      out.push_back(std::move(merged));
      continue;
    }
    for (std::size_t active = 0; active < combo.size(); ++active) {
      Branch b = merged;
      b.choice.push_back(active);
      b.form = combo[active]->form;
      const std::string active_text = b.form.to_string(names, unit);
      for (std::size_t other = 0; other < combo.size(); ++other) {
        if (other == active) continue;
        const std::string other_text = combo[other]->form.to_string(names, unit);
        if (op_ == Op::min) {
          b.conditions.push_back({combo[other]->form - b.form, "min selects " + active_text + " <= " + other_text});
        } else {
          b.conditions.push_back({b.form - combo[other]->form, "max selects " + active_text + " >= " + other_text});
        }
      }
      out.push_back(std::move(b));
    }
  }
  return out;
}

std::string PlForm::to_string(std::span<const std::string> names, std::optional<std::size_t> unit) const {
  switch (op_) {
    case Op::linear: return form_.to_string(names, unit);
    case Op::sum: {
      std::string out;
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i > 0) out += " + ";
        out += children_[i].op() == Op::sum ? "(" + children_[i].to_string(names, unit) + ")"
                                            : children_[i].to_string(names, unit);
      }
      return out;
    }
    default: {
      std::string out = op_ == Op::min ? "min{" : "max{";
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i > 0) out += ", ";
        out += children_[i].to_string(names, unit);
      }
      return out + "}";
    }
  }
}

bool operator==(const PlForm& lhs, const PlForm& rhs) {
  return lhs.op_ == rhs.op_ && lhs.form_ == rhs.form_ && lhs.children_ == rhs.children_;
}

}  // namespace seshadri
