#include "seshadri/bundle.hpp"

#include <algorithm>
#include <numeric>

namespace seshadri {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_ambient(const DivisorClass& c, const AmbientSpace& ambient, const char* role) {
  if (!(c.ambient() == ambient)) {
    throw DomainError(std::string(role) + " class lives on " + c.ambient().name() + ", bundle on " + ambient.name());
  }
}

}  // namespace

BundlePresentation::BundlePresentation(AmbientSpace ambient, BundleShape shape, BundleFlags flags)
    : ambient_(ambient), shape_(std::move(shape)), flags_(std::move(flags)), twist_(DivisorClass::zero(ambient)) {
  std::visit(overloaded{
                 [&](const SplitShape& s) {
                   if (s.classes.empty()) throw DomainError("split bundle needs at least one summand");
                   for (const auto& c : s.classes) require_ambient(c, ambient_, "summand");
                 },
                 [&](const ExtensionShape& s) {
                   require_ambient(s.sub, ambient_, "sub");
                   require_ambient(s.quot, ambient_, "quotient");
                 },
                 [&](const IdealExtensionShape& s) {
                   require_ambient(s.sub, ambient_, "sub");
                   require_ambient(s.quot, ambient_, "quotient");
                   auto sorted = s.points;
                   std::sort(sorted.begin(), sorted.end());
                   if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
                     throw DomainError("marked points must be pairwise distinct");
                   }
                 },
                 [&](const OnCurveSplitShape& s) {
                   if (s.degrees.empty()) throw DomainError("bundle on a curve needs at least one graded piece");
                   if (!s.ranks.empty() && s.ranks.size() != s.degrees.size()) {
                     throw DomainError("rank weights must match the degree list");
                   }
                   for (auto r : s.ranks) {
                     if (r <= 0) throw DomainError("rank weights must be positive");
                   }
                 },
                 [&](const EquivariantLinesShape& s) {
                   if (s.families.empty() || s.families.front().empty()) {
                     throw DomainError("equivariant data needs at least one nonempty line family");
                   }
                   for (const auto& fam : s.families) {
                     if (fam.size() != s.families.front().size()) {
                       throw DomainError("every line family needs a splitting of the same rank");
                     }
                   }
                 },
                 [&](const AbstractShape& s) {
                   if (s.rank < 1) throw DomainError("rank must be >= 1, got " + std::to_string(s.rank));
                 },
             },
             shape_);
}

BundlePresentation BundlePresentation::split(std::vector<DivisorClass> classes, BundleFlags flags) {
  if (classes.empty()) throw DomainError("split bundle needs at least one summand");
  const AmbientSpace ambient = classes.front().ambient();
  return {ambient, SplitShape{std::move(classes)}, std::move(flags)};
}

BundlePresentation BundlePresentation::extension(DivisorClass sub, DivisorClass quot, BundleFlags flags) {
  const AmbientSpace ambient = sub.ambient();
  return {ambient, ExtensionShape{std::move(sub), std::move(quot)}, std::move(flags)};
}

BundlePresentation BundlePresentation::ideal_extension(DivisorClass sub, DivisorClass quot,
                                                       std::vector<std::string> points, BundleFlags flags) {
  const AmbientSpace ambient = sub.ambient();
  return {ambient, IdealExtensionShape{std::move(sub), std::move(quot), std::move(points)}, std::move(flags)};
}

BundlePresentation BundlePresentation::on_curve(std::vector<std::int64_t> degrees, std::vector<std::int64_t> ranks,
                                                BundleFlags flags) {
  return {AmbientSpace::smooth_curve(), OnCurveSplitShape{std::move(degrees), std::move(ranks)}, std::move(flags)};
}

BundlePresentation BundlePresentation::equivariant_lines(int n, std::vector<std::vector<std::int64_t>> families,
                                                         BundleFlags flags) {
  return {AmbientSpace::projective_space(n), EquivariantLinesShape{std::move(families)}, std::move(flags)};
}

BundlePresentation BundlePresentation::abstract(AmbientSpace ambient, std::int64_t rank, std::string description,
                                                BundleFlags flags) {
  return {ambient, AbstractShape{rank, std::move(description)}, std::move(flags)};
}

std::int64_t BundlePresentation::rank() const {
  return std::visit(overloaded{
                        [](const SplitShape& s) { return static_cast<std::int64_t>(s.classes.size()); },
                        [](const ExtensionShape&) { return std::int64_t{2}; },
                        [](const IdealExtensionShape&) { return std::int64_t{2}; },
                        [](const OnCurveSplitShape& s) {
                          if (s.ranks.empty()) return static_cast<std::int64_t>(s.degrees.size());
                          return std::accumulate(s.ranks.begin(), s.ranks.end(), std::int64_t{0});
                        },
                        [](const EquivariantLinesShape& s) {
                          return static_cast<std::int64_t>(s.families.front().size());
                        },
                        [](const AbstractShape& s) { return s.rank; },
                    },
                    shape_);
}

std::string BundlePresentation::describe() const {
  auto join = [](const auto& items, auto&& fmt) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i > 0) out += ", ";
      out += fmt(items[i]);
    }
    return out;
  };
  const std::string on = " on " + ambient_.name();
  return std::visit(
      overloaded{
          [&](const SplitShape& s) {
            return "O(" + join(s.classes, [](const DivisorClass& c) { return c.to_string(); }) + ")" + on;
          },
          [&](const ExtensionShape& s) {
            return "0 -> " + s.sub.to_string() + " -> E -> " + s.quot.to_string() + " -> 0" + on;
          },
          [&](const IdealExtensionShape& s) {
            return "0 -> " + s.sub.to_string() + " -> E -> (" + s.quot.to_string() + ") * I_Z -> 0" + on +
                   ", Z = {" + join(s.points, [](const std::string& p) { return p; }) + "}";
          },
          [&](const OnCurveSplitShape& s) {
            std::string out = "graded pieces of degree (" +
                              join(s.degrees, [](std::int64_t d) { return std::to_string(d); }) + ")";
            if (!s.ranks.empty()) {
              out += " and rank (" + join(s.ranks, [](std::int64_t r) { return std::to_string(r); }) + ")";
            }
            return out + " on a smooth curve";
          },
          [&](const EquivariantLinesShape& s) {
            return std::to_string(s.families.size()) + " invariant line families with splitting (" +
                   join(s.families.front(), [](std::int64_t d) { return std::to_string(d); }) + ", ...)" + on;
          },
          [&](const AbstractShape& s) {
            std::string out = s.description.empty() ? "rank " + std::to_string(s.rank) + " bundle" : s.description;
            if (!twist_.is_zero()) out += ", twisted by " + twist_.to_string();
            return out + on;
          },
      },
      shape_);
}

BundlePresentation twist(const BundlePresentation& bundle, const DivisorClass& line) {
  require_ambient(line, bundle.ambient_, "twist");
  BundlePresentation out = bundle;
  std::visit(overloaded{
                 [&](SplitShape& s) {
                   for (auto& c : s.classes) c += line;
                 },
                 [&](ExtensionShape& s) {
                   s.sub += line;
                   s.quot += line;
                 },
                 [&](IdealExtensionShape& s) {
                   s.sub += line;
                   s.quot += line;
                 },
                 [&](OnCurveSplitShape& s) {
                   for (std::size_t i = 0; i < s.degrees.size(); ++i) {
                     s.degrees[i] += (s.ranks.empty() ? 1 : s.ranks[i]) * line[0];
                   }
                 },
                 [&](EquivariantLinesShape& s) {
                   const std::int64_t shift = degree_on_line(line);
                   for (auto& fam : s.families) {
                     for (auto& d : fam) d += shift;
                   }
                 },
                 [&](AbstractShape&) {},
             },
             out.shape_);
  out.twist_ += line;
  return out;
}

BundlePresentation twist_on_curve(const BundlePresentation& bundle, std::int64_t degree) {
  if (bundle.as<OnCurveSplitShape>() == nullptr) throw DomainError("twist_on_curve needs a bundle on a curve");
  return twist(bundle, DivisorClass(AmbientSpace::smooth_curve(), {degree}));
}

LinearForm RestrictionModel::total_degree() const {
  LinearForm total;
  for (const auto& s : stages) total += s;
  return total;
}

RestrictionModel restriction_model(const BundlePresentation& bundle, const CurveClassForm& curve) {
  if (!(curve.ambient == bundle.ambient())) {
    throw DomainError("curve class on " + curve.ambient.name() + ", bundle on " + bundle.ambient().name());
  }
  RestrictionModel model;
  std::visit(overloaded{
                 [&](const SplitShape& s) {
                   model.kind = RestrictionModel::Kind::split;
                   for (const auto& c : s.classes) {
                     model.stages.push_back(intersect_form(c, curve.class_vars));
                     model.labels.push_back("(" + c.to_string() + ").C");
                   }
                 },
                 [&](const ExtensionShape& s) {
                   model.stages = {intersect_form(s.sub, curve.class_vars), intersect_form(s.quot, curve.class_vars)};
                   model.labels = {"sub (" + s.sub.to_string() + ").C", "quotient (" + s.quot.to_string() + ").C"};
                 },
                 [&](const IdealExtensionShape& s) {
                   if (curve.marked_vars.size() != s.points.size()) {
                     throw DomainError("curve form needs one multiplicity variable per marked point (" +
                                       std::to_string(s.points.size()) + "), has " +
                                       std::to_string(curve.marked_vars.size()));
                   }
                   LinearForm marked;
                   for (auto v : curve.marked_vars) marked += LinearForm::variable(v);
                   model.stages = {intersect_form(s.sub, curve.class_vars) + marked,
                                   intersect_form(s.quot, curve.class_vars) - marked};
                   model.labels = {"sub (" + s.sub.to_string() + ").C + sum m_i",
                                   "quotient (" + s.quot.to_string() + ").C - sum m_i"};
                 },
                 [&](const OnCurveSplitShape&) {
                   throw DomainError("a bundle on a curve has no restriction to symbolic curve classes");
                 },
                 [&](const EquivariantLinesShape&) {
                   throw DomainError("equivariant line data only restricts to lines, not to symbolic classes");
                 },
                 [&](const AbstractShape&) {
                   throw DomainError("an abstract bundle has no restriction model; declare degrees on concrete curves");
                 },
             },
             bundle.shape());
  return model;
}

std::vector<std::int64_t> splitting_on_line(const BundlePresentation& bundle, std::size_t family) {
  if (const auto* eq = bundle.as<EquivariantLinesShape>()) {
    if (family >= eq->families.size()) {
      throw DomainError("line family " + std::to_string(family) + " out of range (" +
                        std::to_string(eq->families.size()) + " families)");
    }
    return eq->families[family];
  }
  if (const auto* s = bundle.as<SplitShape>()) {
    std::vector<std::int64_t> out;
    for (const auto& c : s->classes) out.push_back(degree_on_line(c));
    return out;
  }
  throw DomainError("line splitting is only known for split or equivariant presentations");
}

std::vector<std::int64_t> stage_degrees(const BundlePresentation& bundle, const CurveDatum& curve,
                                        RestrictionModel::Kind* kind) {
  if (curve.degrees) {
    if (kind != nullptr) *kind = curve.degrees_split ? RestrictionModel::Kind::split : RestrictionModel::Kind::extension;
    return *curve.degrees;
  }
  const DivisorClass c(bundle.ambient(), curve.coords);
  if (kind != nullptr) *kind = RestrictionModel::Kind::extension;
  return std::visit(
      overloaded{
          [&](const SplitShape& s) {
            if (kind != nullptr) *kind = RestrictionModel::Kind::split;
            std::vector<std::int64_t> out;
            for (const auto& cls : s.classes) out.push_back(intersect(cls, c));
            return out;
          },
          [&](const ExtensionShape& s) { return std::vector<std::int64_t>{intersect(s.sub, c), intersect(s.quot, c)}; },
          [&](const IdealExtensionShape& s) {
            if (curve.marked.size() != s.points.size()) {
              throw DomainError("curve '" + curve.label + "' needs " + std::to_string(s.points.size()) +
                                " marked multiplicities, has " + std::to_string(curve.marked.size()));
            }
            const std::int64_t marked = std::accumulate(curve.marked.begin(), curve.marked.end(), std::int64_t{0});
            return std::vector<std::int64_t>{intersect(s.sub, c) + marked, intersect(s.quot, c) - marked};
          },
          [&](const OnCurveSplitShape&) -> std::vector<std::int64_t> {
            throw DomainError("stage degrees of a bundle on a curve are its own degree list");
          },
          [&](const EquivariantLinesShape&) -> std::vector<std::int64_t> {
            throw DomainError("use splitting_on_line for equivariant line data");
          },
          [&](const AbstractShape&) -> std::vector<std::int64_t> {
            throw DomainError("curve '" + curve.label + "' needs declared degrees: the bundle is abstract");
          },
      },
      bundle.shape());
}

ChernData chern(const BundlePresentation& bundle) {
  const AmbientSpace& x = bundle.ambient();
  if (!x.is_surface()) throw DomainError("Chern data is only computed for bundles on surfaces");
  ChernData out{DivisorClass::zero(x)};
  std::visit(overloaded{
                 [&](const SplitShape& s) {
                   for (std::size_t i = 0; i < s.classes.size(); ++i) {
                     out.c1 += s.classes[i];
                     for (std::size_t j = i + 1; j < s.classes.size(); ++j) out.c2 += intersect(s.classes[i], s.classes[j]);
                   }
                 },
                 [&](const ExtensionShape& s) {
                   out.c1 = s.sub + s.quot;
                   out.c2 = intersect(s.sub, s.quot);
                 },
                 [&](const IdealExtensionShape& s) {
                   out.c1 = s.sub + s.quot;
                   out.c2 = intersect(s.sub, s.quot) + static_cast<std::int64_t>(s.points.size());
                 },
                 [&](const OnCurveSplitShape&) { throw DomainError("no surface Chern data for a bundle on a curve"); },
                 [&](const EquivariantLinesShape&) { throw DomainError("no Chern data for equivariant line data"); },
                 [&](const AbstractShape&) { throw DomainError("no Chern data for an abstract bundle"); },
             },
             bundle.shape());
  const std::int64_t r = bundle.rank();
  out.discriminant = 2 * r * out.c2 - (r - 1) * intersect(out.c1, out.c1);
  return out;
}

void check_discriminant(const BundlePresentation& bundle) {
  if (!bundle.flags().semistable_vanishing_discriminant || !bundle.ambient().is_surface()) return;
  if (bundle.as<OnCurveSplitShape>() != nullptr || bundle.as<EquivariantLinesShape>() != nullptr ||
      bundle.as<AbstractShape>() != nullptr) {
    return;
  }
  const ChernData c = chern(bundle);
  if (c.discriminant != 0) {
    throw DomainError("bundle declared semistable with vanishing discriminant, but 2r c2 - (r-1) c1^2 = " +
                      std::to_string(c.discriminant));
  }
}

std::int64_t detect_non_nef_witness(const BundlePresentation& bundle, const CurveDatum& curve) {
  const auto degrees = stage_degrees(bundle, curve);
  return *std::min_element(degrees.begin(), degrees.end());
}

}  // namespace seshadri
