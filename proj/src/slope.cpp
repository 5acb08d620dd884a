#include "seshadri/slope.hpp"

#include <algorithm>

namespace seshadri {

std::string to_string(SlopeMode mode) { return mode == SlopeMode::exact ? "exact" : "lower-bound"; }

std::string to_string(SlopeRule rule) {
  switch (rule) {
    case SlopeRule::split: return "split";
    case SlopeRule::extension_lemma: return "extension-lemma";
    case SlopeRule::twist: return "twist";
    case SlopeRule::rational_ample: return "rational-ample";
  }
  return "?";
}

SlopeBound mu_min_split(std::span<const std::int64_t> degrees, std::span<const std::int64_t> ranks) {
  if (degrees.empty()) throw DomainError("mu_min of an empty splitting");
  if (!ranks.empty() && ranks.size() != degrees.size()) throw DomainError("rank weights must match the degree list");
  Rational best;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    const std::int64_t r = ranks.empty() ? 1 : ranks[i];
    if (r <= 0) throw DomainError("rank weights must be positive");
    const Rational slope(degrees[i], r);
    if (i == 0 || slope < best) best = slope;
  }
  return {best, SlopeMode::exact, SlopeRule::split};
}

SlopeBound mu_min_lb_extension(const RestrictionModel& model) {
  if (model.stages.empty()) throw DomainError("restriction model without stages");
  std::vector<PlForm> pieces;
  pieces.reserve(model.stages.size());
  for (const auto& s : model.stages) pieces.push_back(PlForm::linear(s));
  // for split data every stage is a quotient, so the min is the exact value
  const SlopeMode mode = model.kind == RestrictionModel::Kind::split ? SlopeMode::exact : SlopeMode::lower_bound;
  return {PlForm::min(std::move(pieces)), mode,
          mode == SlopeMode::exact ? SlopeRule::split : SlopeRule::extension_lemma};
}

SlopeBound mu_min_twist(const SlopeBound& base, const Rational& degree) {
  if (!base.is_number()) throw DomainError("twisting a symbolic slope needs a degree form");
  return {base.number() + degree, base.mode, SlopeRule::twist};
}

SlopeBound mu_min_twist(const SlopeBound& base, const LinearForm& degree) {
  if (base.is_number()) throw DomainError("twisting a numeric slope needs a numeric degree");
  return {base.form().shifted(degree), base.mode, SlopeRule::twist};
}

SlopeBound rational_ample_rule(const BundlePresentation& bundle, const CurveDatum& curve) {
  if (!bundle.flags().ample) {
    throw DomainError("rational ample rule needs the bundle to be declared ample");
  }
  if (!curve.smooth || !curve.rational) {
    throw DomainError("rational ample rule needs a smooth rational curve; '" + curve.label + "' is not flagged as one");
  }
  return {Rational(1), SlopeMode::lower_bound, SlopeRule::rational_ample};
}

Rational hacon_epsilon(std::span<const std::int64_t> degrees, std::span<const std::int64_t> ranks) {
  const SlopeBound mu = mu_min_split(degrees, ranks);
  if (mu.number() <= 0) {
    throw DomainError("bundle is not ample on the curve: a graded piece has slope " + to_string(mu.number()));
  }
  return mu.number();
}

Rational hacon_epsilon(const BundlePresentation& bundle_on_curve) {
  const auto* shape = bundle_on_curve.as<OnCurveSplitShape>();
  if (shape == nullptr) throw DomainError("hacon_epsilon needs a bundle on a smooth curve");
  return hacon_epsilon(shape->degrees, shape->ranks);
}

SlopeRange mu_min_range(const BundlePresentation& bundle, const CurveDatum& curve, bool use_ample_rule) {
  SlopeRange out;
  RestrictionModel::Kind kind{};
  out.stages = stage_degrees(bundle, curve, &kind);
  if (out.stages.empty()) throw DomainError("curve '" + curve.label + "' has no stage degrees");
  const auto lowest = *std::min_element(out.stages.begin(), out.stages.end());
  out.lower = lowest;
  if (kind == RestrictionModel::Kind::split) {
    out.lower_rule = SlopeRule::split;
    out.upper = lowest;
  } else {
    // the last stage is a quotient line bundle; mu_min is at most its degree
    out.upper = out.stages.back();
  }
  if (use_ample_rule && bundle.flags().ample && curve.smooth && curve.rational && out.lower < 1) {
    out.lower = rational_ample_rule(bundle, curve).number();
    out.lower_rule = SlopeRule::rational_ample;
  }
  if (out.lower > out.upper) {
    throw DomainError("curve '" + curve.label + "': lower slope bound " + to_string(out.lower) +
                      " exceeds the quotient degree " + to_string(out.upper) + "; inconsistent scenario data");
  }
  return out;
}

}  // namespace seshadri
