#include "ordunit/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ordunit/sampling.hpp"

namespace ordunit {

void require_dim(std::span<const double> x, std::size_t dim, const char* what) {
  if (x.size() != dim) {
    std::ostringstream msg;
    msg << what << ": expected dimension " << dim << ", got " << x.size();
    throw DimensionError(msg.str());
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  require_dim(b, a.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec add(std::span<const double> a, std::span<const double> b) {
  require_dim(b, a.size(), "add");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vec sub(std::span<const double> a, std::span<const double> b) {
  require_dim(b, a.size(), "sub");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec scale(double s, std::span<const double> a) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

Vec axpy(std::span<const double> a, double s, std::span<const double> b) {
  require_dim(b, a.size(), "axpy");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + s * b[i];
  return out;
}

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

ConeSpec ConeSpec::orthant() { return ConeSpec(Kind::Orthant, {}); }

ConeSpec ConeSpec::halfspaces(std::vector<Vec> rows) {
  if (rows.empty()) throw std::invalid_argument("halfspace cone needs at least one row");
  return ConeSpec(Kind::Halfspaces, std::move(rows));
}

OrderedSpace::OrderedSpace(std::size_t dim, ConeSpec cone, Vec unit)
    : dim_(dim), cone_(std::move(cone)), unit_(std::move(unit)) {
  if (dim_ == 0) throw DimensionError("space dimension must be positive");
  require_dim(unit_, dim_, "order unit");
  if (cone_.is_orthant()) {
    rows_.assign(dim_, Vec(dim_, 0.0));
    for (std::size_t k = 0; k < dim_; ++k) rows_[k][k] = 1.0;
  } else {
    rows_ = cone_.rows();
    for (const auto& row : rows_) require_dim(row, dim_, "cone row");
  }
  unit_levels_.reserve(rows_.size());
  for (const auto& row : rows_) unit_levels_.push_back(dot(row, unit_));
}

OrderedSpace OrderedSpace::standard(std::size_t dim) {
  return OrderedSpace(dim, ConeSpec::orthant(), Vec(dim, 1.0));
}

bool OrderedSpace::cone_contains(std::span<const double> x) const {
  require_dim(x, dim_, "cone_contains");
  return std::all_of(rows_.begin(), rows_.end(),
                     [&](const Vec& a) { return dot(a, x) >= -kTol; });
}

bool OrderedSpace::interior_contains(std::span<const double> x) const {
  require_dim(x, dim_, "interior_contains");
  return std::all_of(rows_.begin(), rows_.end(),
                     [&](const Vec& a) { return dot(a, x) > kTol; });
}

bool OrderedSpace::leq(std::span<const double> x, std::span<const double> y) const {
  require_dim(x, dim_, "leq");
  require_dim(y, dim_, "leq");
  return cone_contains(sub(y, x));
}

Vec OrderedSpace::unit_ratios(std::span<const double> v) const {
  require_dim(v, dim_, "unit_ratios");
  constexpr double inf = std::numeric_limits<double>::infinity();
  Vec out(rows_.size());
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const double level = dot(rows_[k], v);
    if (unit_levels_[k] > 0.0) {
      out[k] = level / unit_levels_[k];
    } else {
      // Degenerate unit: this row never recovers along the unit line.
      out[k] = level == 0.0 ? 0.0 : (level > 0.0 ? inf : -inf);
    }
  }
  return out;
}

double OrderedSpace::order_norm(std::span<const double> x) const {
  double norm = 0.0;
  for (double r : unit_ratios(x)) norm = std::max(norm, std::abs(r));
  return norm;
}

bool OrderedSpace::nbhd_contains(std::span<const double> center, double delta,
                                 std::span<const double> x) const {
  if (!(delta > 0.0)) throw std::invalid_argument("neighbourhood radius must be positive");
  require_dim(center, dim_, "nbhd_contains");
  require_dim(x, dim_, "nbhd_contains");
  const Vec d = sub(x, center);
  return interior_contains(axpy(d, delta, unit_)) &&
         interior_contains(axpy(scale(-1.0, d), delta, unit_));
}

RayThresholds OrderedSpace::ray_thresholds(std::span<const double> x,
                                           std::span<const double> y) const {
  const Vec ratios = unit_ratios(sub(y, x));
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  return {*lo, *hi};
}

OrderedSpace product(const OrderedSpace& e, const OrderedSpace& f) {
  const std::size_t n = e.dim() + f.dim();
  Vec unit = e.unit();
  unit.insert(unit.end(), f.unit().begin(), f.unit().end());
  if (e.cone().is_orthant() && f.cone().is_orthant()) {
    return OrderedSpace(n, ConeSpec::orthant(), std::move(unit));
  }
  std::vector<Vec> rows;
  rows.reserve(e.rows().size() + f.rows().size());
  for (const auto& a : e.rows()) {
    Vec row(n, 0.0);
    std::copy(a.begin(), a.end(), row.begin());
    rows.push_back(std::move(row));
  }
  for (const auto& b : f.rows()) {
    Vec row(n, 0.0);
    std::copy(b.begin(), b.end(), row.begin() + static_cast<std::ptrdiff_t>(e.dim()));
    rows.push_back(std::move(row));
  }
  return OrderedSpace(n, ConeSpec::halfspaces(std::move(rows)), std::move(unit));
}

std::pair<Vec, Vec> split(const OrderedSpace& e, std::span<const double> xy) {
  if (xy.size() < e.dim()) throw DimensionError("split: vector shorter than first factor");
  const auto mid = xy.begin() + static_cast<std::ptrdiff_t>(e.dim());
  return {Vec(xy.begin(), mid), Vec(mid, xy.end())};
}

namespace {

// Row echelon form in place; returns pivot columns.
std::vector<std::size_t> echelon(std::vector<Vec>& m, std::size_t dim, double tol) {
  double scale_ref = 0.0;
  for (const auto& row : m) scale_ref = std::max(scale_ref, max_abs(row));
  const double eps = tol * std::max(1.0, scale_ref);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < dim && r < m.size(); ++c) {
    std::size_t best = r;
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (std::abs(m[i][c]) > std::abs(m[best][c])) best = i;
    }
    if (std::abs(m[best][c]) <= eps) continue;
    std::swap(m[r], m[best]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r) continue;
      const double factor = m[i][c] / m[r][c];
      if (factor == 0.0) continue;
      for (std::size_t j = c; j < dim; ++j) m[i][j] -= factor * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t numeric_rank(const std::vector<Vec>& rows, std::size_t dim, double tol) {
  std::vector<Vec> m = rows;
  return echelon(m, dim, tol).size();
}

Vec null_vector(const std::vector<Vec>& rows, std::size_t dim, double tol) {
  std::vector<Vec> m = rows;
  const auto pivots = echelon(m, dim, tol);
  if (pivots.size() == dim) return {};
  std::size_t free_col = 0;
  for (std::size_t c = 0, p = 0; c < dim; ++c) {
    if (p < pivots.size() && pivots[p] == c) {
      ++p;
      continue;
    }
    free_col = c;
    break;
  }
  Vec v(dim, 0.0);
  v[free_col] = 1.0;
  // Reduced form: each pivot row reads m[r][p] * v_p + m[r][free] * v_free = 0.
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    v[pivots[r]] = -m[r][free_col] / m[r][pivots[r]];
  }
  const double norm = max_abs(v);
  for (double& x : v) x /= norm;
  return v;
}

ValidationReport validate_space(const OrderedSpace& space, std::size_t samples,
                                unsigned long long seed) {
  ValidationReport report;
  report.unit_interior = space.interior_contains(space.unit());
  if (!report.unit_interior) {
    report.failures.push_back("order unit is not strictly interior to the cone");
  }

  report.lineality_witness = null_vector(space.rows(), space.dim());
  report.pointed = report.lineality_witness.empty();
  if (!report.pointed) {
    report.failures.push_back("cone is not pointed: +-v lies in the cone for a nonzero v");
  }

  report.archimedean_samples = true;
  Sampler sampler(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const Vec x = sampler.box(space.dim(), 5.0);
    const double lambda = space.order_norm(x) + kTol;
    if (!std::isfinite(lambda) ||
        !space.cone_contains(axpy(scale(-1.0, x), lambda, space.unit())) ||
        !space.cone_contains(axpy(x, lambda, space.unit()))) {
      report.archimedean_samples = false;
      report.failures.push_back("sampled vector is not bracketed by +-(norm + tol) * unit");
      break;
    }
  }
  return report;
}

}  // namespace ordunit
