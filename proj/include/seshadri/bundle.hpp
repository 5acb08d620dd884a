#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "seshadri/ambient.hpp"

namespace seshadri {

struct SplitShape {
  std::vector<DivisorClass> classes;
  friend bool operator==(const SplitShape&, const SplitShape&) = default;
};

// 0 -> sub -> E -> quot -> 0 with line bundle sub and quotient.
struct ExtensionShape {
  DivisorClass sub;
  DivisorClass quot;
  friend bool operator==(const ExtensionShape&, const ExtensionShape&) = default;
};

// 0 -> sub -> E -> quot (x) I_Z -> 0, Z a set of distinct marked points.
// Geometric facts about Z (no three collinear, a unique conic through Z)
// are recorded by the scenario, not checked here.
struct IdealExtensionShape {
  DivisorClass sub;
  DivisorClass quot;
  std::vector<std::string> points;
  friend bool operator==(const IdealExtensionShape&, const IdealExtensionShape&) = default;
};

// A bundle on a smooth curve given by the degrees (and ranks) of its
// graded pieces.
struct OnCurveSplitShape {
  std::vector<std::int64_t> degrees;
  std::vector<std::int64_t> ranks;  // empty: all rank 1
  friend bool operator==(const OnCurveSplitShape&, const OnCurveSplitShape&) = default;
};

// Splitting type of E on each family of torus-invariant lines in P^n.
struct EquivariantLinesShape {
  std::vector<std::vector<std::int64_t>> families;
  friend bool operator==(const EquivariantLinesShape&, const EquivariantLinesShape&) = default;
};

// A bundle known only through its rank and the facts declared about it;
// degrees on curves must be supplied with the curve.
struct AbstractShape {
  std::int64_t rank = 2;
  std::string description;
  friend bool operator==(const AbstractShape&, const AbstractShape&) = default;
};

using BundleShape = std::variant<SplitShape, ExtensionShape, IdealExtensionShape, OnCurveSplitShape,
                                 EquivariantLinesShape, AbstractShape>;

/// Facts about the bundle imported from the literature; each holds the
/// citation it was taken from.
struct BundleFlags {
  std::optional<std::string> ample;
  std::optional<std::string> nef;
  std::optional<std::string> globally_generated;
  std::optional<std::string> semistable_vanishing_discriminant;
  std::optional<std::string> uniform_splitting;
  friend bool operator==(const BundleFlags&, const BundleFlags&) = default;
};

class BundlePresentation {
 public:
  BundlePresentation(AmbientSpace ambient, BundleShape shape, BundleFlags flags = {});

  static BundlePresentation split(std::vector<DivisorClass> classes, BundleFlags flags = {});
  static BundlePresentation extension(DivisorClass sub, DivisorClass quot, BundleFlags flags = {});
  static BundlePresentation ideal_extension(DivisorClass sub, DivisorClass quot, std::vector<std::string> points,
                                            BundleFlags flags = {});
  static BundlePresentation on_curve(std::vector<std::int64_t> degrees, std::vector<std::int64_t> ranks = {},
                                     BundleFlags flags = {});
  static BundlePresentation equivariant_lines(int n, std::vector<std::vector<std::int64_t>> families,
                                              BundleFlags flags = {});
  static BundlePresentation abstract(AmbientSpace ambient, std::int64_t rank, std::string description,
                                     BundleFlags flags = {});

  const AmbientSpace& ambient() const { return ambient_; }
  const BundleShape& shape() const { return shape_; }
  const BundleFlags& flags() const { return flags_; }
  BundleFlags& flags() { return flags_; }
  const DivisorClass& twist() const { return twist_; }
  std::int64_t rank() const;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&shape_);
  }

  std::string describe() const;

  friend BundlePresentation twist(const BundlePresentation& bundle, const DivisorClass& line);
  friend bool operator==(const BundlePresentation&, const BundlePresentation&) = default;

 private:
  AmbientSpace ambient_;
  BundleShape shape_;
  BundleFlags flags_;
  DivisorClass twist_;
};

// E (x) L: every stage class shifts by L; for bundles on lines every
// splitting degree shifts by deg(L|line).
BundlePresentation twist(const BundlePresentation& bundle, const DivisorClass& line);

// Twist of a bundle on a curve by a line bundle of the given degree.
BundlePresentation twist_on_curve(const BundlePresentation& bundle, std::int64_t degree);

/// Degrees of the graded pieces of nu^* E on the normalization of a curve,
/// as linear forms in the curve parameters.
struct RestrictionModel {
  enum class Kind { split, extension };
  Kind kind = Kind::extension;
  std::vector<LinearForm> stages;      // extension: {sub, quot}; split: one per summand
  std::vector<std::string> labels;

  LinearForm total_degree() const;
};

RestrictionModel restriction_model(const BundlePresentation& bundle, const CurveClassForm& curve);

// Splitting degrees on a line: the given torus-invariant family for
// equivariant data, any line for split bundles on P^n.
std::vector<std::int64_t> splitting_on_line(const BundlePresentation& bundle, std::size_t family = 0);

/// Concrete curve data for witnesses and exceptional curves.
struct CurveDatum {
  std::string label;
  std::vector<std::int64_t> coords;   // class in the ambient basis
  std::vector<std::int64_t> marked;   // multiplicities at the marked points
  std::int64_t mult = 1;              // multiplicity at the point x
  bool smooth = false;
  bool rational = false;
  // Degrees stated directly (e.g. a known splitting type); overrides the
  // restriction model.
  std::optional<std::vector<std::int64_t>> degrees;
  bool degrees_split = false;
  std::string citation;
};

// Stage degrees of nu^* E on a concrete curve.
std::vector<std::int64_t> stage_degrees(const BundlePresentation& bundle, const CurveDatum& curve,
                                        RestrictionModel::Kind* kind = nullptr);

struct ChernData {
  DivisorClass c1;
  std::int64_t c2 = 0;
  std::int64_t discriminant = 0;  // 2 r c2 - (r - 1) c1^2
};

ChernData chern(const BundlePresentation& bundle);

// Throws DomainError when the bundle is declared semistable with vanishing
// discriminant but its Chern data gives a nonzero discriminant.
void check_discriminant(const BundlePresentation& bundle);

// Minimal stage degree on the curve; a negative value exhibits a quotient of
// negative degree, so the bundle is not nef.
std::int64_t detect_non_nef_witness(const BundlePresentation& bundle, const CurveDatum& curve);

}  // namespace seshadri
