#pragma once

// Pointwise-convergence geometry on weakly additive, order-preserving
// functionals, and sequential compactness over the Choquet family.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "ordunit/capacity.hpp"
#include "ordunit/functional.hpp"
#include "ordunit/report.hpp"
#include "ordunit/space.hpp"

namespace ordunit {

/// A functional regarded as a point of the dual.
class DualPoint {
 public:
  explicit DualPoint(Functional f) : f_(std::move(f)) {}
  const Functional& functional() const { return f_; }
  const OrderedSpace& space() const { return f_.space(); }
  double operator()(std::span<const double> x) const { return f_(x); }

 private:
  Functional f_;
};

struct WeakNeighborhood {
  /// Throws std::invalid_argument on an empty probe list or eps <= 0.
  WeakNeighborhood(DualPoint center, std::vector<Vec> probes, double eps);

  DualPoint center;
  std::vector<Vec> probes;
  double eps;
};

/// |f(x_i) - g(x_i)| < eps at every probe.
bool weak_nbhd_contains(const WeakNeighborhood& nbhd, const DualPoint& g);

/// order_norm(x) / eps: the least gamma with x in the closure of gamma * U(0, eps).
double absorbing_gamma(const OrderedSpace& space, std::span<const double> x, double eps);

class DenseSequence {
 public:
  explicit DenseSequence(std::vector<Vec> points);

  /// Vectors with coordinates k / 2^j, |k| <= 2^(j+1), listed level by level
  /// (j = 0..max_level) without repeats, lexicographic within a level,
  /// truncated to `count` points.
  static DenseSequence dyadic(std::size_t dim, std::size_t count, std::size_t max_level = 6);

  const std::vector<Vec>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const Vec& operator[](std::size_t i) const { return points_[i]; }

 private:
  std::vector<Vec> points_;
};

inline constexpr std::size_t kDefaultTruncation = 64;

/// sum_{k=1..m} 2^-k min(1, |f(x_k) - g(x_k)|).
double weak_metric(const DualPoint& f, const DualPoint& g, const DenseSequence& seq,
                   std::size_t truncation = kDefaultTruncation);

/// Weak additivity, order preservation and f(unit) = 1 on seeded samples.
CheckSuite verify_in_EO(const DualPoint& f, std::size_t samples = kDefaultSamples,
                        std::uint64_t seed = 1);

class SequenceTooShort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CompactnessOptions {
  std::size_t min_length = 2;
  /// Fewest members the final tail may hold. A lone survivor agrees with
  /// itself trivially, so it is not taken as evidence of convergence.
  std::size_t min_tail = 2;
  /// Coordinatewise spread of the final tail.
  double tol = 1e-6;
  std::size_t truncation = kDefaultTruncation;
  /// Weak-metric bound the tail must meet.
  double metric_tol = 1e-4;
  std::size_t membership_samples = 2048;
  std::uint64_t seed = 1;
};

struct SubsequenceLimit {
  /// Increasing indices into the input sequence.
  std::vector<std::size_t> indices;
  /// Position in `indices` where the final tail (all within tol) starts.
  std::size_t tail_start = 0;
  Capacity limit_capacity;
  DualPoint limit;
  /// Weak-metric distance of each subsequence member to the limit.
  std::vector<double> distances;
  /// Largest coordinate deviation of the tail from the limit capacity.
  double tail_spread = 0.0;
  CheckSuite report;
};

/// Bolzano-Weierstrass extraction by nested halving over the free capacity
/// coordinates (subsets other than empty and full). Each round halves every
/// coordinate box and keeps the half holding more surviving indices (ties go
/// to the half containing the earliest survivor), then appends the next
/// surviving index. Stops once the survivors agree within tol; those
/// survivors form the tail, and its last member represents the limit.
///
/// Throws SequenceTooShort if fewer than min_length capacities are given or
/// the survivors run out (or the tail is shorter than min_tail) before
/// reaching tol.
SubsequenceLimit subsequence_limit(std::span<const Capacity> caps, const OrderedSpace& space,
                                   const CompactnessOptions& options = {});

}  // namespace ordunit
