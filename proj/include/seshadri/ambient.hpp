#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seshadri/linear_form.hpp"
#include "seshadri/piecewise.hpp"

namespace seshadri {

enum class AmbientKind { hirzebruch, projective_plane, projective_space, curve };

/// The ambient variety: a Hirzebruch surface F_e (F_0 = P^1 x P^1), the
/// projective plane, P^n (n >= 3) where only lines are modelled, or an
/// abstract smooth curve whose divisor classes are degrees.
class AmbientSpace {
 public:
  static AmbientSpace hirzebruch(int e);
  static AmbientSpace projective_plane();
  static AmbientSpace projective_space(int n);
  static AmbientSpace smooth_curve();

  AmbientKind kind() const { return kind_; }
  int e() const { return parameter_; }
  int dimension() const;
  bool is_surface() const {
    return kind_ == AmbientKind::hirzebruch || kind_ == AmbientKind::projective_plane;
  }

  // Number of basis divisor classes: 2 on F_e (sigma, f), 1 otherwise (H).
  std::size_t basis_size() const { return kind_ == AmbientKind::hirzebruch ? 2 : 1; }
  std::vector<std::string> basis_labels() const;
  // Coordinate names used for curve classes: a, b on F_e; d otherwise.
  std::vector<std::string> class_coordinate_names() const;

  std::string name() const;

  // Intersection number of basis elements i and j. Throws for P^n, n >= 3.
  std::int64_t pairing(std::size_t i, std::size_t j) const;

  friend bool operator==(const AmbientSpace&, const AmbientSpace&) = default;

 private:
  AmbientSpace(AmbientKind kind, int parameter) : kind_(kind), parameter_(parameter) {}

  AmbientKind kind_ = AmbientKind::projective_plane;
  int parameter_ = 2;  // e for F_e, n for P^n
};

/// Integer combination of the ambient basis: a*sigma + b*f, or d*H.
class DivisorClass {
 public:
  DivisorClass(AmbientSpace ambient, std::vector<std::int64_t> coefficients);
  static DivisorClass zero(const AmbientSpace& ambient);

  const AmbientSpace& ambient() const { return ambient_; }
  const std::vector<std::int64_t>& coefficients() const { return coefficients_; }
  std::int64_t operator[](std::size_t i) const { return coefficients_.at(i); }
  bool is_zero() const;

  DivisorClass& operator+=(const DivisorClass& other);
  DivisorClass& operator-=(const DivisorClass& other);
  friend DivisorClass operator+(DivisorClass lhs, const DivisorClass& rhs) { return lhs += rhs; }
  friend DivisorClass operator-(DivisorClass lhs, const DivisorClass& rhs) { return lhs -= rhs; }
  friend DivisorClass operator*(std::int64_t k, DivisorClass c);
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;

  std::string to_string() const;

 private:
  void require_same(const DivisorClass& other) const;

  AmbientSpace ambient_;
  std::vector<std::int64_t> coefficients_;
};

std::int64_t intersect(const DivisorClass& lhs, const DivisorClass& rhs);

// c . C as a linear form, where C has basis coordinates held in `class_vars`.
LinearForm intersect_form(const DivisorClass& c, std::span<const std::size_t> class_vars);

// Degree of a divisor class on a line (P^2 or P^n).
std::int64_t degree_on_line(const DivisorClass& c);

/// `form >= 0`, with a human-readable label and where it came from.
struct Constraint {
  LinearForm form;
  std::string label;
  std::string origin;
};

/// Polyhedral cone of curve-class parameters. All constraints are
/// homogeneous; affine facts such as a >= 1 are expressed with the unit
/// variable u (read as the constant 1, with u >= 0 always present).
class ClassCone {
 public:
  ClassCone() = default;
  ClassCone(std::vector<std::string> variables, bool with_unit);

  const std::vector<std::string>& variables() const { return variables_; }
  std::size_t dimension() const { return variables_.size(); }
  std::optional<std::size_t> unit() const { return unit_; }
  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;

  std::size_t add_variable(std::string name);
  void add_constraint(LinearForm form, std::string label, std::string origin = {});

  const std::vector<Constraint>& constraints() const { return constraints_; }
  std::vector<LinearForm> constraint_forms() const;

  // Extremal rays in homogeneous coordinates, primitive and sorted.
  std::vector<Vector> rays() const;
  bool contains(std::span<const Rational> point) const;

  // A point with unit coordinate 1 built from named values; unnamed
  // coordinates are 0.
  Vector point(std::span<const std::pair<std::string, Rational>> values) const;

  LinearForm parse(std::string_view text) const;
  // "lhs >= rhs" or "lhs <= rhs" as a form that is >= 0 on the cone; a bare
  // expression means "expr >= 0".
  LinearForm parse_inequality(std::string_view text) const;
  std::string format(const LinearForm& form) const;
  std::string format(const PlForm& form) const;
  std::string format_point(std::span<const Rational> point) const;

  friend bool operator==(const ClassCone& lhs, const ClassCone& rhs);

 private:
  std::vector<std::string> variables_;
  std::optional<std::size_t> unit_;
  std::vector<Constraint> constraints_;
};

/// A symbolic curve class: the cone of admissible parameters and the roles
/// of its variables.
struct CurveClassForm {
  AmbientSpace ambient = AmbientSpace::projective_plane();
  ClassCone cone;
  std::vector<std::size_t> class_vars;     // basis coordinates (a, b) or (d)
  std::vector<std::size_t> marked_vars;    // m_1..m_k, multiplicities at marked points
  std::optional<std::size_t> mult_var;     // m_x, multiplicity at the point x
};

/// A concrete irreducible curve class outside (or flagged within) the main
/// cone, e.g. sigma and f on F_e, or the line class on P^2.
struct SpecialRay {
  std::string label;
  std::vector<std::int64_t> coords;
  bool smooth_rational = true;
  bool in_main_cone = false;
};

struct IrreducibleClasses {
  CurveClassForm main;
  std::vector<SpecialRay> special;
};

// Superset of the classes of irreducible curves: the main cone
// {a >= 1, b >= a*e} (b >= 1 when e = 0) plus the rays f and sigma; on P^2
// the cone {d >= 1}. Throws for P^n, n >= 3.
IrreducibleClasses irreducible_class_cone(const AmbientSpace& ambient);

enum class ProbeKind { fiber_pencil, very_ample, line_pencil };
std::string to_string(ProbeKind kind);

/// A curve class with a member through every point, used to bound
/// multiplicities by Bezout: mult_x C <= P.C when C is not that member.
struct Probe {
  std::string label;
  DivisorClass cls;
  ProbeKind kind;
};

struct ProbeSet {
  std::vector<Probe> probes;
};

// Fiber pencil, sigma on F_0, the very ample class sigma + (e+1) f; the line
// pencil on P^2.
ProbeSet default_probes(const AmbientSpace& ambient);

struct NefCone {
  DivisorClass first;
  DivisorClass second;
};

NefCone nef_cone(const AmbientSpace& ambient);
bool is_nef(const NefCone& cone, const DivisorClass& c);
bool is_ample(const NefCone& cone, const DivisorClass& c);

// Throws DomainError when a very ample probe is not in the interior of the
// nef cone.
void validate_probes(const ProbeSet& probes, const NefCone& nef);

struct ProbeApplicability {
  std::string label;
  LinearForm bound;  // P.C over the cone variables
  bool applicable = false;
};

/// min over applicable probes of P.C, as a piecewise-linear form.
struct MultBound {
  std::optional<PlForm> form;  // empty: no applicable probe, the bound is unbounded
  std::vector<ProbeApplicability> probes;
};

// A probe applies on the cone when P.C >= 1 at every point of it, decided
// on the cone's rays.
MultBound mult_upper_bound_form(const ProbeSet& probes, const CurveClassForm& curve);

// Pointwise: min of P.C over probes with P.C >= 1 at the class.
std::optional<std::int64_t> mult_bound_at(const ProbeSet& probes, const DivisorClass& curve_class);

}  // namespace seshadri
