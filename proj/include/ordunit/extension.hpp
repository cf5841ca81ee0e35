#pragma once

// Finitely generated A-subspaces and the constructive extension of weakly
// additive, order-preserving functionals.
//
// An A-subspace generated by base points x_1..x_m is the union of the unit
// line L = {t*u} and the shifted lines x_i + L. A functional on it is fixed by
// one value per line plus c = f(u) >= 0. Extending to a new point y picks a
// value between
//
//   p-(y) = max_i (g_i + c * sup{t : x_i + t*u <= y})
//   p+(y) = min_i (g_i + c * inf{t : x_i + t*u >= y})
//
// where the inner sup/inf are the ray thresholds of the space.

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ordunit/functional.hpp"
#include "ordunit/report.hpp"
#include "ordunit/space.hpp"

namespace ordunit {

class ExtensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Representative of x + L orthogonal to the unit, and the removed multiple:
/// x = rep + shift * u.
struct LineCoordinates {
  Vec rep;
  double shift;
};

LineCoordinates line_coordinates(const OrderedSpace& space, std::span<const double> x);

class ASubspace {
 public:
  /// Base points are reduced modulo L; duplicates and points on L collapse.
  ASubspace(OrderedSpace space, const std::vector<Vec>& base_points);

  const OrderedSpace& space() const { return space_; }
  /// Canonical representatives of the shifted lines (L itself excluded).
  const std::vector<Vec>& base_points() const { return reps_; }

  /// 0 for the unit line, i + 1 for base point i, nullopt outside the span.
  std::optional<std::size_t> line_of(std::span<const double> v) const;
  bool contains(std::span<const double> v) const { return line_of(v).has_value(); }

 private:
  OrderedSpace space_;
  std::vector<Vec> reps_;
};

bool span_contains(const ASubspace& subspace, std::span<const double> v);

class PartialFunctional {
 public:
  /// Throws ExtensionError on negative unit_value or when two base points on
  /// the same line carry conflicting values.
  PartialFunctional(OrderedSpace space, const std::vector<Vec>& base_points,
                    const Vec& values, double unit_value);

  const ASubspace& subspace() const { return subspace_; }
  const OrderedSpace& space() const { return subspace_.space(); }
  /// Values at the canonical base representatives.
  const Vec& values() const { return values_; }
  double unit_value() const { return unit_value_; }

  /// Lines including L: index 0 is L (point 0, value 0).
  std::size_t line_count() const { return values_.size() + 1; }
  Vec line_point(std::size_t i) const;
  double line_value(std::size_t i) const;

  /// f(v) for v in the span, nullopt otherwise.
  std::optional<double> value_at(std::span<const double> v) const;

  bool consistent() const { return consistent_; }

 private:
  struct Lines {
    std::vector<Vec> reps;
    Vec values;
  };
  static Lines reduce(const OrderedSpace& space, const std::vector<Vec>& base_points,
                      const Vec& values, double unit_value);
  PartialFunctional(OrderedSpace space, Lines lines, double unit_value);

  ASubspace subspace_;
  Vec values_;
  double unit_value_;
  bool consistent_ = false;
};

PropertyReport check_partial_consistency(const PartialFunctional& pf, double tol = kTol);

struct ExtensionInterval {
  double p_minus;
  double p_plus;
  double midpoint() const { return 0.5 * (p_minus + p_plus); }
};

/// Throws ExtensionError if pf is inconsistent.
ExtensionInterval extension_interval(const PartialFunctional& pf, std::span<const double> y);

struct ExtensionRule {
  enum class Kind { Lower, Upper, Midpoint, Given };
  Kind kind = Kind::Midpoint;
  double value = 0.0;

  static ExtensionRule lower() { return {Kind::Lower, 0.0}; }
  static ExtensionRule upper() { return {Kind::Upper, 0.0}; }
  static ExtensionRule midpoint() { return {Kind::Midpoint, 0.0}; }
  static ExtensionRule given(double p) { return {Kind::Given, p}; }
};

struct ExtensionStep {
  ExtensionInterval interval;
  double chosen;
  PartialFunctional extended;
};

/// One extension step with the full interval and the chosen value.
ExtensionStep extend_step(const PartialFunctional& pf, std::span<const double> y,
                          ExtensionRule rule);

PartialFunctional extend_one(const PartialFunctional& pf, std::span<const double> y,
                             ExtensionRule rule);

/// Folds extend_one over ys in order, skipping points already in the span.
PartialFunctional extend_all(const PartialFunctional& pf, std::span<const Vec> ys,
                             ExtensionRule rule);

enum class ExtensionMode { Lower, Midpoint };

/// Total weakly additive, order-preserving extension x -> p-(x) (lower) or
/// (p-(x) + p+(x)) / 2 (midpoint).
Functional canonical_extension(const PartialFunctional& pf, ExtensionMode mode);

}  // namespace ordunit
