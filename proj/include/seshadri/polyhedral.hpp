#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "seshadri/linear_form.hpp"

// Exact polyhedral-cone primitives. A cone is always given in inequality
// form { x : row_i . x >= 0 } over a fixed number of coordinates.
namespace seshadri::polyhedral {

std::size_t rank(std::span<const Vector> rows, std::size_t dim);

// Solves sum_j columns[j] * x_j = rhs. Returns nothing when the columns are
// linearly dependent or the system is inconsistent.
std::optional<Vector> solve_independent(std::span<const Vector> columns, const Vector& rhs);

// Scales a nonzero vector to the primitive integer vector on the same ray.
Vector primitive(Vector v);

// Extremal rays of a pointed cone, as primitive integer vectors in
// lexicographic order. Throws DomainError for non-pointed cones. The cone {0}
// has no rays.
std::vector<Vector> extremal_rays(std::span<const LinearForm> rows, std::size_t dim);

// Nonnegative multipliers lambda with sum_j lambda_j * rows[j] == target.
// Searches supports by increasing size, then lexicographically, so the
// result is deterministic and of minimal support.
std::optional<Vector> farkas_multipliers(std::span<const LinearForm> rows, const LinearForm& target,
                                         std::size_t dim);

}  // namespace seshadri::polyhedral
