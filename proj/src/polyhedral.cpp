#include "seshadri/polyhedral.hpp"

#include <algorithm>
#include <set>

namespace seshadri::polyhedral {

namespace {

using Matrix = std::vector<Vector>;

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    const Rational inv = 1 / m[row][col];
    for (std::size_t c = col; c < m[row].size(); ++c) m[row][c] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational factor = m[r][col];
      for (std::size_t c = col; c < m[r].size(); ++c) m[r][c] -= factor * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

Vector dense(const LinearForm& form, std::size_t dim) {
  if (form.size() > dim) {
    throw DomainError("form has " + std::to_string(form.size()) + " coordinates, cone has " +
                      std::to_string(dim));
  }
  Vector v(dim);
  for (std::size_t i = 0; i < form.size(); ++i) v[i] = form[i];
  return v;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

bool nonnegative_on(const Matrix& rows, const Vector& v) {
  return std::all_of(rows.begin(), rows.end(), [&](const Vector& r) { return dot(r, v) >= 0; });
}

}  // namespace

std::size_t rank(std::span<const Vector> rows, std::size_t dim) {
  Matrix m(rows.begin(), rows.end());
  for (auto& r : m) r.resize(dim);
  return rref(m, dim).size();
}

std::optional<Vector> solve_independent(std::span<const Vector> columns, const Vector& rhs) {
  const std::size_t k = columns.size();
  const std::size_t n = rhs.size();
  Matrix aug(n, Vector(k + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug[i][j] = i < columns[j].size() ? columns[j][i] : Rational(0);
    aug[i][k] = rhs[i];
  }
  const auto pivots = rref(aug, k + 1);
  if (pivots.size() != k) {
    // either a dependent column or a pivot in the rhs column
    return std::nullopt;
  }
  if (!pivots.empty() && pivots.back() == k) return std::nullopt;
  Vector x(k);
  for (std::size_t r = 0; r < k; ++r) x[pivots[r]] = aug[r][k];
  for (std::size_t r = k; r < n; ++r) {
    if (aug[r][k] != 0) return std::nullopt;
  }
  return x;
}

Vector primitive(Vector v) {
  Integer den_lcm = 1;
  for (const auto& x : v) den_lcm = boost::multiprecision::lcm(den_lcm, boost::multiprecision::denominator(x));
  Integer num_gcd = 0;
  for (auto& x : v) {
    x *= Rational(den_lcm);
    num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::numerator(x));
  }
  if (num_gcd == 0) throw DomainError("primitive() of the zero vector");
  for (auto& x : v) x /= Rational(num_gcd);
  return v;
}

std::vector<Vector> extremal_rays(std::span<const LinearForm> rows, std::size_t dim) {
  Matrix g;
  g.reserve(rows.size());
  for (const auto& r : rows) {
    if (!r.is_zero()) g.push_back(dense(r, dim));
  }
  if (rank(g, dim) < dim) {
    throw DomainError("cone is not pointed (constraint rank " + std::to_string(rank(g, dim)) + " < " +
                      std::to_string(dim) + ")");
  }
  std::set<Vector> found;
  const std::size_t k = dim - 1;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  do {
    Matrix sub;
    sub.reserve(k);
    for (std::size_t i : idx) sub.push_back(g[i]);
    const auto pivots = rref(sub, dim);
    if (pivots.size() != k) continue;
    // one free column: the kernel is spanned by e_free - sum sub[r][free] e_pivot
    std::size_t free_col = 0;
    while (std::find(pivots.begin(), pivots.end(), free_col) != pivots.end()) ++free_col;
    Vector v(dim);
    v[free_col] = 1;
    for (std::size_t r = 0; r < k; ++r) v[pivots[r]] = -sub[r][free_col];
    if (nonnegative_on(g, v)) {
      found.insert(primitive(v));
    } else {
      for (auto& x : v) x = -x;
      if (nonnegative_on(g, v)) found.insert(primitive(v));
    }
  } while (k > 0 && next_combination(idx, g.size()));
  return {found.begin(), found.end()};
}

std::optional<Vector> farkas_multipliers(std::span<const LinearForm> rows, const LinearForm& target,
                                         std::size_t dim) {
  const Vector rhs = dense(target, dim);
  Matrix g;
  g.reserve(rows.size());
  for (const auto& r : rows) g.push_back(dense(r, dim));
  if (target.is_zero()) return Vector(rows.size());

  const std::size_t max_support = std::min(rows.size(), dim);
  for (std::size_t k = 1; k <= max_support; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    do {
      Matrix cols;
      cols.reserve(k);
      bool usable = true;
      for (std::size_t i : idx) {
        if (std::all_of(g[i].begin(), g[i].end(), [](const Rational& x) { return x == 0; })) {
          usable = false;
          break;
        }
        cols.push_back(g[i]);
      }
      if (!usable) continue;
      const auto x = solve_independent(cols, rhs);
      if (!x) continue;
      if (std::any_of(x->begin(), x->end(), [](const Rational& v) { return v < 0; })) continue;
      Vector lambda(rows.size());
      for (std::size_t j = 0; j < k; ++j) lambda[idx[j]] = (*x)[j];
      return lambda;
    } while (next_combination(idx, g.size()));
  }
  return std::nullopt;
}

}  // namespace seshadri::polyhedral
