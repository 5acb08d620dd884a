#include "seshadri/ambient.hpp"

#include <algorithm>

#include "seshadri/polyhedral.hpp"

namespace seshadri {

AmbientSpace AmbientSpace::hirzebruch(int e) {
  if (e < 0) throw DomainError("Hirzebruch surface F_e needs e >= 0, got " + std::to_string(e));
  return {AmbientKind::hirzebruch, e};
}

AmbientSpace AmbientSpace::projective_plane() { return {AmbientKind::projective_plane, 2}; }

AmbientSpace AmbientSpace::projective_space(int n) {
  if (n == 2) return projective_plane();
  if (n < 2) throw DomainError("projective space P^n needs n >= 2, got " + std::to_string(n));
  return {AmbientKind::projective_space, n};
}

AmbientSpace AmbientSpace::smooth_curve() { return {AmbientKind::curve, 1}; }

int AmbientSpace::dimension() const {
  switch (kind_) {
    case AmbientKind::projective_space: return parameter_;
    case AmbientKind::curve: return 1;
    default: return 2;
  }
}

std::vector<std::string> AmbientSpace::basis_labels() const {
  if (kind_ == AmbientKind::hirzebruch) return {"sigma", "f"};
  if (kind_ == AmbientKind::curve) return {"pt"};
  return {"H"};
}

std::vector<std::string> AmbientSpace::class_coordinate_names() const {
  if (kind_ == AmbientKind::hirzebruch) return {"a", "b"};
  return {"d"};
}

std::string AmbientSpace::name() const {
  switch (kind_) {
    case AmbientKind::hirzebruch: return "F_" + std::to_string(parameter_);
    case AmbientKind::projective_plane: return "P^2";
    case AmbientKind::projective_space: return "P^" + std::to_string(parameter_);
    case AmbientKind::curve: return "C";
  }
  return "?";
}

std::int64_t AmbientSpace::pairing(std::size_t i, std::size_t j) const {
  switch (kind_) {
    case AmbientKind::hirzebruch:
      if (i > 1 || j > 1) throw DomainError("basis index out of range on " + name());
      if (i == 0 && j == 0) return -parameter_;  // sigma^2 = -e
      if (i == 1 && j == 1) return 0;            // f^2 = 0
      return 1;                                  // sigma.f = 1
    case AmbientKind::projective_plane:
      if (i != 0 || j != 0) throw DomainError("basis index out of range on P^2");
      return 1;
    case AmbientKind::projective_space:
      throw DomainError("no surface intersection form on " + name() + "; only line restrictions are supported");
    case AmbientKind::curve:
      throw DomainError("no intersection form on a curve; divisor classes there are degrees");
  }
  return 0;
}

DivisorClass::DivisorClass(AmbientSpace ambient, std::vector<std::int64_t> coefficients)
    : ambient_(ambient), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != ambient_.basis_size()) {
    throw DomainError("divisor class on " + ambient_.name() + " needs " + std::to_string(ambient_.basis_size()) +
                      " coefficients, got " + std::to_string(coefficients_.size()));
  }
}

DivisorClass DivisorClass::zero(const AmbientSpace& ambient) {
  return {ambient, std::vector<std::int64_t>(ambient.basis_size(), 0)};
}

bool DivisorClass::is_zero() const {
  return std::all_of(coefficients_.begin(), coefficients_.end(), [](std::int64_t c) { return c == 0; });
}

void DivisorClass::require_same(const DivisorClass& other) const {
  if (!(ambient_ == other.ambient_)) {
    throw DomainError("divisor classes live on different ambients: " + ambient_.name() + " vs " +
                      other.ambient_.name());
  }
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& other) {
  require_same(other);
  for (std::size_t i = 0; i < coefficients_.size(); ++i) coefficients_[i] += other.coefficients_[i];
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& other) {
  require_same(other);
  for (std::size_t i = 0; i < coefficients_.size(); ++i) coefficients_[i] -= other.coefficients_[i];
  return *this;
}

DivisorClass operator*(std::int64_t k, DivisorClass c) {
  for (auto& x : c.coefficients_) x *= k;
  return c;
}

std::string DivisorClass::to_string() const {
  const auto labels = ambient_.basis_labels();
  std::string out;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    const std::int64_t c = coefficients_[i];
    if (c == 0) continue;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    const std::int64_t mag = c < 0 ? -c : c;
    if (mag != 1) out += std::to_string(mag) + "*";
    out += labels[i];
  }
  return out.empty() ? "0" : out;
}

std::int64_t intersect(const DivisorClass& lhs, const DivisorClass& rhs) {
  if (!(lhs.ambient() == rhs.ambient())) {
    throw DomainError("cannot intersect classes on " + lhs.ambient().name() + " and " + rhs.ambient().name());
  }
  const AmbientSpace& x = lhs.ambient();
  std::int64_t total = 0;
  for (std::size_t i = 0; i < x.basis_size(); ++i) {
    for (std::size_t j = 0; j < x.basis_size(); ++j) {
      if (lhs[i] != 0 && rhs[j] != 0) total += lhs[i] * rhs[j] * x.pairing(i, j);
    }
  }
  return total;
}

LinearForm intersect_form(const DivisorClass& c, std::span<const std::size_t> class_vars) {
  const AmbientSpace& x = c.ambient();
  if (class_vars.size() != x.basis_size()) {
    throw DomainError("curve class on " + x.name() + " needs " + std::to_string(x.basis_size()) + " coordinates");
  }
  LinearForm form;
  for (std::size_t j = 0; j < x.basis_size(); ++j) {
    std::int64_t coeff = 0;
    for (std::size_t i = 0; i < x.basis_size(); ++i) {
      if (c[i] != 0) coeff += c[i] * x.pairing(i, j);
    }
    form += LinearForm::variable(class_vars[j], coeff);
  }
  return form;
}

std::int64_t degree_on_line(const DivisorClass& c) {
  if (c.ambient().kind() == AmbientKind::hirzebruch || c.ambient().kind() == AmbientKind::curve) {
    throw DomainError("degree on a line is only defined on projective spaces, not " + c.ambient().name());
  }
  return c[0];
}

// ---------------------------------------------------------------- ClassCone

ClassCone::ClassCone(std::vector<std::string> variables, bool with_unit) : variables_(std::move(variables)) {
  if (with_unit) {
    unit_ = variables_.size();
    variables_.emplace_back("u");
    add_constraint(LinearForm::variable(*unit_), "u >= 0", "homogenization");
  }
}

std::optional<std::size_t> ClassCone::find(std::string_view name) const {
  const auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it == variables_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - variables_.begin());
}

std::size_t ClassCone::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw DomainError("cone has no variable '" + std::string(name) + "'");
}

std::size_t ClassCone::add_variable(std::string name) {
  if (find(name)) throw DomainError("duplicate cone variable '" + name + "'");
  variables_.push_back(std::move(name));
  return variables_.size() - 1;
}

void ClassCone::add_constraint(LinearForm form, std::string label, std::string origin) {
  if (form.size() > variables_.size()) throw DomainError("constraint '" + label + "' uses unknown variables");
  constraints_.push_back({std::move(form), std::move(label), std::move(origin)});
}

std::vector<LinearForm> ClassCone::constraint_forms() const {
  std::vector<LinearForm> forms;
  forms.reserve(constraints_.size());
  for (const auto& c : constraints_) forms.push_back(c.form);
  return forms;
}

std::vector<Vector> ClassCone::rays() const {
  const auto forms = constraint_forms();
  return polyhedral::extremal_rays(forms, variables_.size());
}

bool ClassCone::contains(std::span<const Rational> point) const {
  return std::all_of(constraints_.begin(), constraints_.end(),
                     [&](const Constraint& c) { return c.form.evaluate(point) >= 0; });
}

Vector ClassCone::point(std::span<const std::pair<std::string, Rational>> values) const {
  Vector p(variables_.size());
  if (unit_) p[*unit_] = 1;
  for (const auto& [name, value] : values) p[index_of(name)] = value;
  return p;
}

LinearForm ClassCone::parse(std::string_view text) const {
  std::vector<std::string> names = variables_;
  // the unit is written as a constant, never by name
  if (unit_) names[*unit_] = "\x01";
  return parse_linear_form(text, names, unit_);
}

LinearForm ClassCone::parse_inequality(std::string_view text) const {
  const auto ge = text.find(">=");
  const auto le = text.find("<=");
  if (ge != std::string_view::npos && le != std::string_view::npos) {
    throw InputError("inequality '" + std::string(text) + "' has both >= and <=");
  }
  if (ge == std::string_view::npos && le == std::string_view::npos) return parse(text);
  const auto at = ge != std::string_view::npos ? ge : le;
  const LinearForm lhs = parse(text.substr(0, at));
  const LinearForm rhs = parse(text.substr(at + 2));
  return ge != std::string_view::npos ? lhs - rhs : rhs - lhs;
}

std::string ClassCone::format(const LinearForm& form) const { return form.to_string(variables_, unit_); }

std::string ClassCone::format(const PlForm& form) const { return form.to_string(variables_, unit_); }

std::string ClassCone::format_point(std::span<const Rational> point) const {
  std::string out = "(";
  bool first = true;
  for (std::size_t i = 0; i < variables_.size() && i < point.size(); ++i) {
    if (unit_ && *unit_ == i) continue;
    if (!first) out += ", ";
    out += variables_[i] + "=" + to_string(point[i]);
    first = false;
  }
  return out + ")";
}

bool operator==(const ClassCone& lhs, const ClassCone& rhs) {
  if (lhs.variables_ != rhs.variables_ || lhs.unit_ != rhs.unit_) return false;
  if (lhs.constraints_.size() != rhs.constraints_.size()) return false;
  for (std::size_t i = 0; i < lhs.constraints_.size(); ++i) {
    if (!(lhs.constraints_[i].form == rhs.constraints_[i].form)) return false;
  }
  return true;
}

// ------------------------------------------------------ irreducible classes

IrreducibleClasses irreducible_class_cone(const AmbientSpace& ambient) {
  if (!ambient.is_surface()) {
    throw DomainError("irreducible class cone is only modelled on surfaces, not " + ambient.name());
  }
  IrreducibleClasses out;
  out.main.ambient = ambient;
  out.main.cone = ClassCone(ambient.class_coordinate_names(), true);
  ClassCone& cone = out.main.cone;
  const std::size_t u = *cone.unit();
  if (ambient.kind() == AmbientKind::hirzebruch) {
    const std::size_t a = cone.index_of("a");
    const std::size_t b = cone.index_of("b");
    out.main.class_vars = {a, b};
    const int e = ambient.e();
    cone.add_constraint(LinearForm::variable(a) - LinearForm::variable(u), "a >= 1",
                        "C.f >= 1 for irreducible C other than f");
    if (e == 0) {
      cone.add_constraint(LinearForm::variable(b) - LinearForm::variable(u), "b >= 1",
                          "C.sigma >= 1 for irreducible C other than sigma (F_0)");
    } else {
      cone.add_constraint(LinearForm::variable(b) - LinearForm::variable(a, e),
                          "b >= " + (e == 1 ? std::string("a") : std::to_string(e) + "*a"),
                          "C.sigma >= 0 for irreducible C other than sigma");
    }
    out.special.push_back({"f", {0, 1}, true, false});
    out.special.push_back({"sigma", {1, 0}, true, false});
  } else {
    const std::size_t d = cone.index_of("d");
    out.main.class_vars = {d};
    cone.add_constraint(LinearForm::variable(d) - LinearForm::variable(u), "d >= 1", "degree of a curve");
    out.special.push_back({"line", {1}, true, true});
  }
  return out;
}

// ------------------------------------------------------------------ probes

std::string to_string(ProbeKind kind) {
  switch (kind) {
    case ProbeKind::fiber_pencil: return "fiber-pencil";
    case ProbeKind::very_ample: return "very-ample";
    case ProbeKind::line_pencil: return "line-pencil";
  }
  return "?";
}

ProbeSet default_probes(const AmbientSpace& ambient) {
  ProbeSet set;
  if (ambient.kind() == AmbientKind::hirzebruch) {
    const int e = ambient.e();
    set.probes.push_back({"fiber f through x", DivisorClass(ambient, {0, 1}), ProbeKind::fiber_pencil});
    if (e == 0) {
      set.probes.push_back({"sigma through x", DivisorClass(ambient, {1, 0}), ProbeKind::fiber_pencil});
    }
    const DivisorClass very_ample(ambient, {1, e + 1});
    set.probes.push_back({"smooth member of |" + very_ample.to_string() + "| through x", very_ample,
                          ProbeKind::very_ample});
  } else {
    set.probes.push_back({"line through x", DivisorClass(ambient, {1}), ProbeKind::line_pencil});
  }
  return set;
}

NefCone nef_cone(const AmbientSpace& ambient) {
  if (ambient.kind() == AmbientKind::hirzebruch) {
    return {DivisorClass(ambient, {1, ambient.e()}), DivisorClass(ambient, {0, 1})};
  }
  if (ambient.kind() == AmbientKind::projective_plane) {
    return {DivisorClass(ambient, {1}), DivisorClass(ambient, {1})};
  }
  throw DomainError("nef cone is only modelled on surfaces");
}

namespace {

// Curve classes spanning the dual of the nef cone under the intersection
// form: gamma_1 is orthogonal to the second generator and positive on the
// first, and vice versa.
std::pair<DivisorClass, DivisorClass> dual_generators(const NefCone& nef) {
  const AmbientSpace& x = nef.first.ambient();
  if (x.basis_size() == 1) return {DivisorClass(x, {1}), DivisorClass(x, {1})};
  auto orthogonal_to = [&](const DivisorClass& g, const DivisorClass& positive_on) {
    // (g.e0, g.e1) . (p, q) = 0  ->  (p, q) = (g.e1, -g.e0) up to sign
    const std::int64_t g0 = intersect(g, DivisorClass(x, {1, 0}));
    const std::int64_t g1 = intersect(g, DivisorClass(x, {0, 1}));
    DivisorClass gamma(x, {g1, -g0});
    if (intersect(gamma, positive_on) < 0) gamma = -1 * gamma;
    return gamma;
  };
  return {orthogonal_to(nef.second, nef.first), orthogonal_to(nef.first, nef.second)};
}

}  // namespace

bool is_nef(const NefCone& cone, const DivisorClass& c) {
  const auto [g1, g2] = dual_generators(cone);
  return intersect(c, g1) >= 0 && intersect(c, g2) >= 0;
}

bool is_ample(const NefCone& cone, const DivisorClass& c) {
  const auto [g1, g2] = dual_generators(cone);
  return intersect(c, g1) > 0 && intersect(c, g2) > 0;
}

void validate_probes(const ProbeSet& probes, const NefCone& nef) {
  for (const auto& p : probes.probes) {
    if (p.kind != ProbeKind::very_ample) continue;
    if (intersect(p.cls, nef.first) <= 0 || intersect(p.cls, nef.second) <= 0 || intersect(p.cls, p.cls) <= 0) {
      throw DomainError("very ample probe " + p.cls.to_string() + " is not in the interior of the nef cone");
    }
  }
}

MultBound mult_upper_bound_form(const ProbeSet& probes, const CurveClassForm& curve) {
  const ClassCone& cone = curve.cone;
  if (!cone.unit()) throw DomainError("probe applicability needs a cone with a unit variable");
  const LinearForm unit = LinearForm::variable(*cone.unit());
  const auto rays = cone.rays();
  MultBound out;
  std::vector<PlForm> applicable;
  for (const auto& p : probes.probes) {
    ProbeApplicability a;
    a.label = p.label;
    a.bound = intersect_form(p.cls, curve.class_vars);
    const LinearForm margin = a.bound - unit;
    a.applicable = std::all_of(rays.begin(), rays.end(), [&](const Vector& r) { return margin.evaluate(r) >= 0; });
    if (a.applicable) applicable.push_back(PlForm::linear(a.bound));
    out.probes.push_back(std::move(a));
  }
  if (!applicable.empty()) out.form = PlForm::min(std::move(applicable));
  return out;
}

std::optional<std::int64_t> mult_bound_at(const ProbeSet& probes, const DivisorClass& curve_class) {
  std::optional<std::int64_t> best;
  for (const auto& p : probes.probes) {
    const std::int64_t v = intersect(p.cls, curve_class);
    if (v >= 1 && (!best || v < *best)) best = v;
  }
  return best;
}

}  // namespace seshadri
