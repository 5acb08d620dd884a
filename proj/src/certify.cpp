#include "seshadri/certify.hpp"

#include <algorithm>
#include <stdexcept>

#include "seshadri/polyhedral.hpp"

namespace seshadri {

std::string to_string(SubconeStatus status) {
  switch (status) {
    case SubconeStatus::nonneg: return "nonneg";
    case SubconeStatus::vacuous: return "vacuous";
    case SubconeStatus::counterexample: return "counterexample";
  }
  return "?";
}

bool ConeInequalityCertificate::holds() const { return first_failure() == nullptr; }

const SubconeCertificate* ConeInequalityCertificate::first_failure() const {
  for (const auto& s : subcones) {
    if (s.status == SubconeStatus::counterexample) return &s;
  }
  return nullptr;
}

std::vector<LinearForm> subcone_constraints(const ClassCone& cone, const std::vector<BranchCondition>& conditions) {
  auto rows = cone.constraint_forms();
  for (const auto& c : conditions) rows.push_back(c.form);
  return rows;
}

namespace {

// A point with u = 1 where the target is negative, given the rays of the
// subcone and at least one ray with u > 0.
Vector counterexample_point(const std::vector<Vector>& rays, const LinearForm& target, std::size_t unit) {
  const Vector* negative = nullptr;
  const Vector* anchor = nullptr;
  for (const auto& r : rays) {
    const Rational v = target.evaluate(r);
    if (v < 0 && r[unit] > 0) {
      Vector p = r;
      for (auto& x : p) x /= r[unit];
      return p;
    }
    if (v < 0 && negative == nullptr) negative = &r;
    if (r[unit] > 0 && anchor == nullptr) anchor = &r;
  }
  if (negative == nullptr || anchor == nullptr) throw std::logic_error("counterexample_point without a witness ray");
  // anchor + lambda * negative leaves the cone's u = 1 slice only through
  // the recession direction, so a large enough lambda makes the target negative
  const Rational slope = -target.evaluate(*negative);
  const Rational lambda = floor(target.evaluate(*anchor) / slope) + 1;
  Vector p(anchor->size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = ((*anchor)[i] + lambda * (*negative)[i]) / (*anchor)[unit];
  return p;
}

}  // namespace

ConeInequalityCertificate prove_branches_nonneg(const PlForm& form, const std::vector<Branch>& branches,
                                                const ClassCone& cone) {
  ConeInequalityCertificate cert;
  cert.form = form;
  const std::size_t dim = cone.dimension();
  for (const auto& branch : branches) {
    SubconeCertificate sub;
    sub.choice = branch.choice;
    sub.conditions = branch.conditions;
    sub.target = branch.form;
    const auto rows = subcone_constraints(cone, branch.conditions);
    sub.rays = polyhedral::extremal_rays(rows, dim);

    const bool nonneg =
        std::all_of(sub.rays.begin(), sub.rays.end(), [&](const Vector& r) { return sub.target.evaluate(r) >= 0; });
    const auto unit = cone.unit();
    const bool empty_slice = unit && std::none_of(sub.rays.begin(), sub.rays.end(),
                                                  [&](const Vector& r) { return r[*unit] > 0; });
    if (nonneg) {
      auto lambda = polyhedral::farkas_multipliers(rows, sub.target, dim);
      if (!lambda) throw std::logic_error("Farkas multipliers missing for a form nonnegative on all rays");
      sub.multipliers = std::move(*lambda);
    } else if (empty_slice) {
      sub.status = SubconeStatus::vacuous;
      auto lambda = polyhedral::farkas_multipliers(rows, -LinearForm::variable(*unit), dim);
      if (!lambda) throw std::logic_error("Farkas multipliers missing for -u on a subcone inside u = 0");
      sub.multipliers = std::move(*lambda);
    } else {
      sub.status = SubconeStatus::counterexample;
      if (unit) {
        sub.counterexample = counterexample_point(sub.rays, sub.target, *unit);
      } else {
        for (const auto& r : sub.rays) {
          if (sub.target.evaluate(r) < 0) {
            sub.counterexample = r;
            break;
          }
        }
      }
    }
    cert.subcones.push_back(std::move(sub));
  }
  return cert;
}

ConeInequalityCertificate prove_nonneg_on_cone(const PlForm& form, const ClassCone& cone) {
  return prove_branches_nonneg(form, form.resolve(cone.variables(), cone.unit()), cone);
}

// ---------------------------------------------------------------- setup

CertifySetup default_setup(const BundlePresentation& bundle) {
  CertifySetup setup;
  setup.probes = default_probes(bundle.ambient());
  const auto irr = irreducible_class_cone(bundle.ambient());
  for (const auto& ray : irr.special) {
    if (ray.in_main_cone) continue;
    CurveDatum c;
    c.label = ray.label;
    c.coords = ray.coords;
    c.smooth = ray.smooth_rational;
    c.rational = ray.smooth_rational;
    c.citation = "irreducible curve outside the main cone";
    setup.special_curves.push_back(std::move(c));
  }
  return setup;
}

CurveClassForm base_curve_form(const BundlePresentation& bundle, const CertifySetup& setup) {
  CurveClassForm curve = irreducible_class_cone(bundle.ambient()).main;
  ClassCone& cone = curve.cone;
  if (const auto* ideal = bundle.as<IdealExtensionShape>()) {
    for (std::size_t i = 0; i < ideal->points.size(); ++i) {
      const std::string name = "m" + std::to_string(i + 1);
      const std::size_t v = cone.add_variable(name);
      curve.marked_vars.push_back(v);
      cone.add_constraint(LinearForm::variable(v), name + " >= 0", "multiplicity of C at " + ideal->points[i]);
    }
  }
  for (const auto& extra : setup.extra_constraints) {
    cone.add_constraint(cone.parse_inequality(extra.text), extra.text, extra.label);
  }
  return curve;
}

bool add_multiplicity_variable(CurveClassForm& curve, const std::vector<ProbeApplicability>& probes) {
  ClassCone& cone = curve.cone;
  const std::size_t u = *cone.unit();
  const std::size_t mx = cone.add_variable("m_x");
  curve.mult_var = mx;
  cone.add_constraint(LinearForm::variable(mx) - LinearForm::variable(u), "m_x >= 1", "C passes through x");
  bool bounded = false;
  for (const auto& p : probes) {
    if (!p.applicable) continue;
    bounded = true;
    cone.add_constraint(p.bound - LinearForm::variable(mx), "m_x <= " + cone.format(p.bound),
                        "Bezout with the " + p.label);
  }
  return bounded;
}

ConeModel build_cone_model(const BundlePresentation& bundle, const CertifySetup& setup) {
  ConeModel model;
  model.curve = base_curve_form(bundle, setup);
  model.base_cone = model.curve.cone;

  const std::size_t u = *model.base_cone.unit();
  std::vector<ProbeApplicability> bounds;
  for (const auto& p : setup.probes.probes) {
    ProbeProof proof;
    proof.probe.label = p.label;
    proof.probe.bound = intersect_form(p.cls, model.curve.class_vars);
    proof.proof = prove_nonneg_on_cone(PlForm::linear(proof.probe.bound - LinearForm::variable(u)), model.base_cone);
    proof.probe.applicable = proof.proof.holds();
    bounds.push_back(proof.probe);
    model.probes.push_back(std::move(proof));
  }
  model.mult_bounded = add_multiplicity_variable(model.curve, bounds);

  model.restriction = restriction_model(bundle, model.curve);
  model.mu_lower = mu_min_lb_extension(model.restriction);
  return model;
}

std::vector<Branch> level_branches(const ConeModel& model, const Rational& t) {
  const ClassCone& cone = model.curve.cone;
  auto branches = model.mu_lower.form().resolve(cone.variables(), cone.unit());
  const LinearForm shift = LinearForm::variable(*model.curve.mult_var, -t);
  for (auto& b : branches) b.form += shift;
  return branches;
}

PlForm level_target(const ConeModel& model, const Rational& t) {
  return model.mu_lower.form().shifted(LinearForm::variable(*model.curve.mult_var, -t));
}

SpecialCurveReport check_special_curve(const BundlePresentation& bundle, const CurveDatum& curve, const Rational& t) {
  if (curve.mult < 1) throw DomainError("curve '" + curve.label + "' needs multiplicity >= 1 at x");
  SpecialCurveReport report;
  report.curve = curve;
  report.slope = mu_min_range(bundle, curve, true);
  report.ratio = report.slope.lower / curve.mult;
  report.passes = report.ratio >= t;
  return report;
}

std::vector<std::string> lower_bound_failures(const LowerBoundReport& report) {
  std::vector<std::string> failures;
  const ClassCone& cone = report.model.curve.cone;
  if (!report.model.mult_bounded) {
    failures.push_back("no probe bounds mult_x C on the whole cone, so the multiplicity is unbounded");
  }
  for (std::size_t i = 0; i < report.cone.subcones.size(); ++i) {
    const auto& s = report.cone.subcones[i];
    if (s.status != SubconeStatus::counterexample) continue;
    std::string where;
    for (const auto& c : s.conditions) where += (where.empty() ? "" : "; ") + c.label;
    failures.push_back("subcone " + std::to_string(i) + (where.empty() ? "" : " [" + where + "]") + ": " +
                       cone.format(s.target) + " < 0 at " + cone.format_point(*s.counterexample));
  }
  for (const auto& r : report.special) {
    if (r.passes) continue;
    failures.push_back("ray " + r.curve.label + ": mu_min >= " + to_string(r.slope.lower) + " (" +
                       to_string(r.slope.lower_rule) + "), mult " + std::to_string(r.curve.mult) + ", ratio " +
                       to_string(r.ratio) + " < " + to_string(report.level));
  }
  return failures;
}

LowerBoundReport seshadri_lower_bound(const BundlePresentation& bundle, const CertifySetup& setup,
                                      const Rational& t) {
  LowerBoundReport report;
  report.level = t;
  report.model = build_cone_model(bundle, setup);
  const ClassCone& cone = report.model.curve.cone;
  report.cone = prove_branches_nonneg(level_target(report.model, t), level_branches(report.model, t), cone);

  for (const auto& curve : setup.special_curves) report.special.push_back(check_special_curve(bundle, curve, t));
  report.failures = lower_bound_failures(report);
  report.certified = report.failures.empty();
  return report;
}

std::optional<Rational> max_certifiable_level(const BundlePresentation& bundle, const CertifySetup& setup) {
  const ConeModel model = build_cone_model(bundle, setup);
  const ClassCone& cone = model.curve.cone;
  const std::size_t u = *cone.unit();
  const std::size_t mx = *model.curve.mult_var;
  std::optional<Rational> best;
  auto consider = [&](const Rational& v) {
    if (!best || v < *best) best = v;
  };
  for (const auto& branch : model.mu_lower.form().resolve(cone.variables(), cone.unit())) {
    const auto rays = polyhedral::extremal_rays(subcone_constraints(cone, branch.conditions), cone.dimension());
    if (std::none_of(rays.begin(), rays.end(), [&](const Vector& r) { return r[u] > 0; })) continue;
    for (const auto& r : rays) {
      const Rational s = branch.form.evaluate(r);
      if (r[mx] > 0) {
        consider(s / r[mx]);
      } else if (s < 0) {
        return std::nullopt;
      }
    }
  }
  for (const auto& curve : setup.special_curves) consider(check_special_curve(bundle, curve, 0).ratio);
  if (!best) throw DomainError("the curve cone contains no curve classes");
  return best;
}

WitnessReport seshadri_upper_witness(const BundlePresentation& bundle, const CurveDatum& witness) {
  if (witness.mult < 1) throw DomainError("witness '" + witness.label + "' needs multiplicity >= 1 at x");
  WitnessReport report;
  report.curve = witness;
  report.slope = mu_min_range(bundle, witness, true);
  report.contribution = report.slope.upper / witness.mult;
  report.exact = report.slope.exact();
  return report;
}

// ------------------------------------------------------------ closed forms

Rational additivity_lower_bound(const Rational& eps_nef_part, const Rational& eps_line, const AdditivityFacts& facts) {
  if (!facts.nef_part) throw DomainError("additivity needs E (x) L^-1 to be declared nef");
  if (!facts.line_ample_globally_generated) {
    throw DomainError("additivity needs L to be declared ample and globally generated");
  }
  if (eps_nef_part < 0) throw DomainError("Seshadri constant of a nef bundle is >= 0, got " + to_string(eps_nef_part));
  if (eps_line < 1) {
    throw DomainError("an ample globally generated line bundle has Seshadri constant >= 1, got " +
                      to_string(eps_line));
  }
  return eps_nef_part + eps_line;
}

EquivariantBound equivariant_line_bound(const BundlePresentation& bundle) {
  const auto* shape = bundle.as<EquivariantLinesShape>();
  if (shape == nullptr) throw DomainError("equivariant line bound needs splitting data on invariant lines");
  EquivariantBound out;
  for (std::size_t i = 0; i < shape->families.size(); ++i) {
    const Rational mu = mu_min_split(shape->families[i]).number();
    if (mu <= 0) {
      throw DomainError("bundle is not ample on invariant line family " + std::to_string(i) + ": mu_min = " +
                        to_string(mu));
    }
    if (i == 0 || mu < out.lower) {
      out.lower = mu;
      out.argmin_family = i;
    }
  }
  if (bundle.flags().uniform_splitting) {
    auto sorted = [](std::vector<std::int64_t> v) {
      std::sort(v.begin(), v.end());
      return v;
    };
    const auto reference = sorted(shape->families.front());
    for (const auto& fam : shape->families) {
      if (sorted(fam) != reference) {
        throw DomainError("uniform splitting is declared but the line families split differently");
      }
    }
    out.exact = true;
  }
  return out;
}

std::int64_t small_construction_rank(const Rational& delta) {
  if (delta <= 0) throw DomainError("delta must be positive, got " + to_string(delta));
  const Rational r = floor(1 / delta) + 1;
  return numerator_i64(r);
}

SmallConstruction small_seshadri_construction(std::int64_t r, const Rational& delta) {
  if (r < 1) throw DomainError("rank r must be >= 1, got " + std::to_string(r));
  if (delta <= 0) throw DomainError("delta must be positive, got " + to_string(delta));
  SmallConstruction out;
  out.r = r;
  out.delta = delta;
  const std::int64_t degree[] = {1};
  const std::int64_t rank[] = {r};
  out.upper = hacon_epsilon(degree, rank);
  out.below_delta = out.upper < delta;
  return out;
}

ReductionResult semistable_reduction(std::int64_t rank, const DivisorClass& det_q1, std::int64_t rank_q1,
                                     const LineBundleOracle& line_oracle,
                                     const std::optional<std::string>& hypothesis) {
  if (!hypothesis) {
    throw DomainError("the reduction needs mu_min(nu^*E) = mu(nu^*Q1) on every curve to be declared");
  }
  if (rank < 1) throw DomainError("rank must be >= 1, got " + std::to_string(rank));
  if (rank_q1 < 1 || rank_q1 > rank) {
    throw DomainError("rank of Q1 must lie in [1, " + std::to_string(rank) + "], got " + std::to_string(rank_q1));
  }
  ReductionResult out;
  out.epsilon_det_q1 = line_oracle(det_q1);
  out.value = out.epsilon_det_q1 / rank_q1;
  out.floor = Rational(1, rank);
  out.floor_applies = out.epsilon_det_q1 >= 1;
  return out;
}

Rational projective_plane_line_oracle(const DivisorClass& line_bundle) {
  if (line_bundle.ambient().kind() != AmbientKind::projective_plane) {
    throw DomainError("the line-bundle oracle only knows P^2, not " + line_bundle.ambient().name());
  }
  if (line_bundle[0] < 1) {
    throw DomainError("O(" + std::to_string(line_bundle[0]) + ") is not ample on P^2");
  }
  return line_bundle[0];
}

}  // namespace seshadri
