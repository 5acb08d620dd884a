#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "seshadri/ambient.hpp"
#include "seshadri/bundle.hpp"
#include "seshadri/piecewise.hpp"
#include "seshadri/slope.hpp"

namespace seshadri {

// ------------------------------------------------------- cone inequalities

enum class SubconeStatus { nonneg, vacuous, counterexample };
std::string to_string(SubconeStatus status);

/// One branch of the resolved form: the subcone cut out by the branch
/// conditions and the evidence that the branch form is >= 0 there.
struct SubconeCertificate {
  std::vector<std::size_t> choice;
  std::vector<BranchCondition> conditions;
  LinearForm target;
  SubconeStatus status = SubconeStatus::nonneg;
  std::vector<Vector> rays;
  // One multiplier per subcone constraint: the cone constraints in order,
  // then the branch conditions. nonneg: they recombine to `target`;
  // vacuous: they recombine to -u, so the subcone has no point with u = 1.
  std::vector<Rational> multipliers;
  std::optional<Vector> counterexample;  // a point with u = 1 and target < 0
};

struct ConeInequalityCertificate {
  PlForm form;
  std::vector<SubconeCertificate> subcones;

  bool holds() const;
  const SubconeCertificate* first_failure() const;
};

// Decides form >= 0 on the cone. Every min/max is resolved by splitting the
// cone; each piece is checked on the extremal rays of its subcone and
// backed by exact Farkas multipliers, or refuted by a rational point.
ConeInequalityCertificate prove_nonneg_on_cone(const PlForm& form, const ClassCone& cone);

// Same, for branches resolved by the caller (their union must cover the
// cone, as the branches of PlForm::resolve do).
ConeInequalityCertificate prove_branches_nonneg(const PlForm& form, const std::vector<Branch>& branches,
                                                const ClassCone& cone);

// Forms of the constraints of a subcone: the cone constraints, then the
// branch conditions.
std::vector<LinearForm> subcone_constraints(const ClassCone& cone, const std::vector<BranchCondition>& conditions);

// --------------------------------------------------------- certification

/// Everything the lower-bound check needs besides the level: probes,
/// curves checked one at a time, witnesses, extra cone facts.
struct CertifySetup {
  ProbeSet probes;
  struct ExtraConstraint {
    std::string text;  // e.g. "2*d >= m1 + m2 + m3 + m4 + m5"
    std::string label;
  };
  std::vector<ExtraConstraint> extra_constraints;
  // Curves outside the main cone (sigma and f on F_e, or curves excluded
  // by an extra constraint), each checked individually.
  std::vector<CurveDatum> special_curves;
  std::vector<CurveDatum> witnesses;
};

// Default probes and special rays of the bundle's ambient.
CertifySetup default_setup(const BundlePresentation& bundle);

struct ProbeProof {
  ProbeApplicability probe;
  ConeInequalityCertificate proof;  // P.C - 1 >= 0 on the base cone
};

/// The symbolic problem: the curve cone with the multiplicity variable m_x
/// bounded by the applicable probes, and the slope lower bound on it.
struct ConeModel {
  CurveClassForm curve;
  ClassCone base_cone;  // before m_x and its constraints
  std::vector<ProbeProof> probes;
  bool mult_bounded = false;  // some probe applies; otherwise m_x is unbounded and nothing certifies
  RestrictionModel restriction;
  SlopeBound mu_lower;
};

ConeModel build_cone_model(const BundlePresentation& bundle, const CertifySetup& setup);

// The pieces of build_cone_model that need no search: the main cone with
// marked-point variables and extra constraints, and m_x with its bounds
// from the probes flagged applicable (returns whether any is).
CurveClassForm base_curve_form(const BundlePresentation& bundle, const CertifySetup& setup);
bool add_multiplicity_variable(CurveClassForm& curve, const std::vector<ProbeApplicability>& probes);

// mu_lower - t * m_x, and its branches: those of mu_lower with t * m_x
// subtracted, so branch conditions compare stages only.
PlForm level_target(const ConeModel& model, const Rational& t);
std::vector<Branch> level_branches(const ConeModel& model, const Rational& t);

struct SpecialCurveReport {
  CurveDatum curve;
  SlopeRange slope;
  Rational ratio;  // slope.lower / mult
  bool passes = false;
};

SpecialCurveReport check_special_curve(const BundlePresentation& bundle, const CurveDatum& curve, const Rational& t);

struct LowerBoundReport {
  Rational level;
  ConeModel model;
  ConeInequalityCertificate cone;
  std::vector<SpecialCurveReport> special;
  bool certified = false;
  std::vector<std::string> failures;
};

// Certifies eps(X, E, x) >= t for every x, or reports where it fails (a
// failure is not a proof that eps < t).
LowerBoundReport seshadri_lower_bound(const BundlePresentation& bundle, const CertifySetup& setup, const Rational& t);

// Failure lines for a report whose model, cone and special fields are set.
std::vector<std::string> lower_bound_failures(const LowerBoundReport& report);

// Largest t the lower-bound check accepts, from the rays of the resolved
// subcones and the special curves. Empty when the slope bound is negative
// along a direction with m_x = 0, so no level certifies.
std::optional<Rational> max_certifiable_level(const BundlePresentation& bundle, const CertifySetup& setup);

struct WitnessReport {
  CurveDatum curve;
  SlopeRange slope;
  Rational contribution;  // slope.upper / mult, an upper bound for eps at points of the curve
  bool exact = false;     // slope known exactly
};

WitnessReport seshadri_upper_witness(const BundlePresentation& bundle, const CurveDatum& witness);

// ------------------------------------------------------- closed-form rules

// eps(E) >= eps(E (x) L^-1) + eps(L) for E (x) L^-1 nef and L ample and
// globally generated; both facts are declared by citation.
struct AdditivityFacts {
  std::optional<std::string> nef_part;  // E (x) L^-1 nef
  std::optional<std::string> line_ample_globally_generated;
};
Rational additivity_lower_bound(const Rational& eps_nef_part, const Rational& eps_line, const AdditivityFacts& facts);

struct EquivariantBound {
  Rational lower;
  bool exact = false;
  std::size_t argmin_family = 0;
};

// min over the invariant line families of mu_min; exact when the splitting
// type is declared uniform.
EquivariantBound equivariant_line_bound(const BundlePresentation& bundle);

struct SmallConstruction {
  std::int64_t r = 1;
  Rational delta;
  Rational upper;  // eps(X, E_r, x) <= mu(V_r) = 1/r
  bool below_delta = false;
};

SmallConstruction small_seshadri_construction(std::int64_t r, const Rational& delta);
// Smallest r with 1/r < delta: floor(1/delta) + 1.
std::int64_t small_construction_rank(const Rational& delta);

using LineBundleOracle = std::function<Rational(const DivisorClass&)>;

struct ReductionResult {
  Rational epsilon_det_q1;
  Rational value;  // eps(det Q1) / rank Q1
  Rational floor;  // 1 / rank E
  bool floor_applies = false;  // eps(det Q1) >= 1
};

// eps(X, E, x) = eps(X, det Q1, x) / rank Q1 under the declared hypothesis
// that mu_min(nu^*E) = mu(nu^*Q1) on every curve.
ReductionResult semistable_reduction(std::int64_t rank, const DivisorClass& det_q1, std::int64_t rank_q1,
                                     const LineBundleOracle& line_oracle,
                                     const std::optional<std::string>& hypothesis);

// eps(P^2, O(d), x) = d: lines through x realize the infimum.
Rational projective_plane_line_oracle(const DivisorClass& line_bundle);

}  // namespace seshadri
