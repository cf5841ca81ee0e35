#pragma once

// Finite-dimensional partially ordered vector spaces with an order unit.
//
// A space is R^n together with a polyhedral cone given by half-space rows
// a_1..a_K (cone = {x : a_k.x >= 0 for all k}) and a distinguished order
// unit u that lies strictly inside the cone. Everything else in the library
// (order norm, neighbourhoods, thresholds along the unit line) is computed
// from these three pieces in closed form.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ordunit {

using Vec = std::vector<double>;

/// Comparison tolerance shared by every cone and order predicate.
inline constexpr double kTol = 1e-9;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void require_dim(std::span<const double> x, std::size_t dim, const char* what);

double dot(std::span<const double> a, std::span<const double> b);
Vec add(std::span<const double> a, std::span<const double> b);
Vec sub(std::span<const double> a, std::span<const double> b);
Vec scale(double s, std::span<const double> a);
/// a + s*b
Vec axpy(std::span<const double> a, double s, std::span<const double> b);
double max_abs(std::span<const double> a);

class ConeSpec {
 public:
  enum class Kind { Orthant, Halfspaces };

  static ConeSpec orthant();
  static ConeSpec halfspaces(std::vector<Vec> rows);

  Kind kind() const { return kind_; }
  bool is_orthant() const { return kind_ == Kind::Orthant; }
  /// Explicit rows; empty for the orthant until materialized by a space.
  const std::vector<Vec>& rows() const { return rows_; }

 private:
  ConeSpec(Kind kind, std::vector<Vec> rows) : kind_(kind), rows_(std::move(rows)) {}
  Kind kind_;
  std::vector<Vec> rows_;
};

struct RayThresholds {
  double lambda_minus;
  double lambda_plus;
};

struct ValidationReport {
  bool unit_interior = false;
  bool pointed = false;
  bool archimedean_samples = false;
  std::vector<std::string> failures;
  /// Nonzero v with +-v in the cone, present when pointedness fails.
  Vec lineality_witness;

  bool ok() const { return failures.empty(); }
};

class OrderedSpace {
 public:
  /// Throws DimensionError if the cone rows or the unit do not have length
  /// dim. Geometric defects (boundary unit, non-pointed cone) do not throw;
  /// they are reported by validate_space().
  OrderedSpace(std::size_t dim, ConeSpec cone, Vec unit);

  /// R^n with the nonnegative orthant and unit (1,...,1).
  static OrderedSpace standard(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const ConeSpec& cone() const { return cone_; }
  const Vec& unit() const { return unit_; }
  /// Half-space rows, materialized for the orthant as well.
  const std::vector<Vec>& rows() const { return rows_; }
  /// a_k . unit for every row.
  const Vec& unit_levels() const { return unit_levels_; }

  bool cone_contains(std::span<const double> x) const;
  bool interior_contains(std::span<const double> x) const;
  bool leq(std::span<const double> x, std::span<const double> y) const;
  double order_norm(std::span<const double> x) const;
  bool nbhd_contains(std::span<const double> center, double delta,
                     std::span<const double> x) const;
  RayThresholds ray_thresholds(std::span<const double> x,
                               std::span<const double> y) const;

  /// Per-row ratios a_k.v / a_k.unit.
  Vec unit_ratios(std::span<const double> v) const;

 private:
  std::size_t dim_;
  ConeSpec cone_;
  Vec unit_;
  std::vector<Vec> rows_;
  Vec unit_levels_;
};

/// E x F with the coordinatewise cone and unit (1_E, 1_F).
OrderedSpace product(const OrderedSpace& e, const OrderedSpace& f);

/// Splits a vector of the product space back into its two components.
std::pair<Vec, Vec> split(const OrderedSpace& e, std::span<const double> xy);

ValidationReport validate_space(const OrderedSpace& space,
                                std::size_t samples = 1024,
                                unsigned long long seed = 1);

/// Numerical rank of a row set (Gaussian elimination with partial pivoting).
std::size_t numeric_rank(const std::vector<Vec>& rows, std::size_t dim,
                         double tol = 1e-10);

/// A unit-length vector in the null space of rows, or empty if full rank.
Vec null_vector(const std::vector<Vec>& rows, std::size_t dim,
                double tol = 1e-10);

}  // namespace ordunit
