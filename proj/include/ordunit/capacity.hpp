#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "ordunit/space.hpp"

namespace ordunit {

using SubsetMask = std::uint32_t;

/// Set function on {1..n}, stored densely by subset bitmask (bit i-1 holds
/// element i). Construction enforces v(empty) = 0 and nonnegative values;
/// monotonicity is a queryable property so that non-monotone set functions
/// can still be evaluated and falsified.
class Capacity {
 public:
  static constexpr std::size_t kMaxGround = 16;

  Capacity(std::size_t ground_size, Vec values);

  /// v(S) = |S| / n.
  static Capacity uniform(std::size_t ground_size);
  /// v(S) = sum of weights over S.
  static Capacity additive(std::span<const double> weights);

  std::size_t ground_size() const { return n_; }
  SubsetMask full_mask() const { return static_cast<SubsetMask>((1u << n_) - 1u); }
  const Vec& values() const { return values_; }
  double operator()(SubsetMask s) const { return values_.at(s); }
  double total() const { return values_[full_mask()]; }

  bool is_monotone(double tol = kTol) const;
  /// A pair S subset of T with v(S) > v(T) + tol, if any.
  std::optional<std::pair<SubsetMask, SubsetMask>> monotonicity_violation(
      double tol = kTol) const;

 private:
  std::size_t n_;
  Vec values_;
};

class Sampler;

/// Random monotone capacity with v(full) = 1: values grow along every
/// single-element extension by a random nonnegative increment.
Capacity random_monotone_capacity(std::size_t ground_size, Sampler& sampler);

/// Choquet integral by the ascending sorted sum; ties are broken by index.
double choquet(const Capacity& v, std::span<const double> x);

/// Max-plus (idempotent) aggregation max_i (weights_i + x_i).
double maxplus(std::span<const double> weights, std::span<const double> x);

/// The planar functional 1/2 (x1 + x2 + sqrt|x2 - x1|).
double sqrt_gap(std::span<const double> x);

}  // namespace ordunit
