#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "seshadri/bundle.hpp"
#include "seshadri/piecewise.hpp"

namespace seshadri {

enum class SlopeMode { exact, lower_bound };
enum class SlopeRule { split, extension_lemma, twist, rational_ample };

std::string to_string(SlopeMode mode);
std::string to_string(SlopeRule rule);

/// A value of mu_min, or a lower bound for it: a number for concrete data,
/// a concave piecewise-linear form over a curve-class cone otherwise.
struct SlopeBound {
  std::variant<Rational, PlForm> value;
  SlopeMode mode = SlopeMode::lower_bound;
  SlopeRule rule = SlopeRule::extension_lemma;

  bool is_number() const { return std::holds_alternative<Rational>(value); }
  const Rational& number() const { return std::get<Rational>(value); }
  const PlForm& form() const { return std::get<PlForm>(value); }
};

// min(d_i / r_i); ranks default to 1.
SlopeBound mu_min_split(std::span<const std::int64_t> degrees, std::span<const std::int64_t> ranks = {});

// mu_min of an extension is at least the min over its stages.
SlopeBound mu_min_lb_extension(const RestrictionModel& model);

// mu_min(F (x) L) = mu_min(F) + deg L.
SlopeBound mu_min_twist(const SlopeBound& base, const Rational& degree);
SlopeBound mu_min_twist(const SlopeBound& base, const LinearForm& degree);

// An ample bundle restricted to a smooth rational curve splits into line
// bundles of positive degree, so mu_min >= 1 there. Refuses unless
// ampleness is declared and the curve is flagged smooth rational.
SlopeBound rational_ample_rule(const BundlePresentation& bundle, const CurveDatum& curve);

// Seshadri constant of an ample bundle on a smooth curve: mu_min, the same
// at every point. Rejects data with a graded piece of slope <= 0.
Rational hacon_epsilon(std::span<const std::int64_t> degrees, std::span<const std::int64_t> ranks = {});
Rational hacon_epsilon(const BundlePresentation& bundle_on_curve);

/// Bounds for mu_min of nu^*E on one concrete curve.
struct SlopeRange {
  Rational lower;         // extension lemma (exact for split data), lifted by the ample rule
  Rational upper;         // min degree over the known quotient line bundles
  SlopeRule lower_rule = SlopeRule::extension_lemma;
  std::vector<std::int64_t> stages;
  bool exact() const { return lower == upper; }
};

// `use_ample_rule` lets the rational ample rule lift the lower bound when
// the bundle is declared ample and the curve is smooth rational.
SlopeRange mu_min_range(const BundlePresentation& bundle, const CurveDatum& curve, bool use_ample_rule = true);

}  // namespace seshadri
