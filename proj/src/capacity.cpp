#include "ordunit/capacity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ordunit/sampling.hpp"

namespace ordunit {

Capacity::Capacity(std::size_t ground_size, Vec values)
    : n_(ground_size), values_(std::move(values)) {
  if (n_ == 0 || n_ > kMaxGround) {
    throw std::invalid_argument("capacity ground size must be in 1..16");
  }
  if (values_.size() != (std::size_t{1} << n_)) {
    std::ostringstream msg;
    msg << "capacity on " << n_ << " points needs " << (std::size_t{1} << n_)
        << " values, got " << values_.size();
    throw DimensionError(msg.str());
  }
  if (values_[0] != 0.0) throw std::invalid_argument("capacity of the empty set must be 0");
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("capacity values must be finite and nonnegative");
    }
  }
}

Capacity Capacity::uniform(std::size_t ground_size) {
  Vec values(std::size_t{1} << ground_size);
  for (std::size_t s = 0; s < values.size(); ++s) {
    values[s] = static_cast<double>(std::popcount(s)) / static_cast<double>(ground_size);
  }
  return Capacity(ground_size, std::move(values));
}

Capacity Capacity::additive(std::span<const double> weights) {
  const std::size_t n = weights.size();
  Vec values(std::size_t{1} << n, 0.0);
  for (std::size_t s = 1; s < values.size(); ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      if (s & (std::size_t{1} << i)) values[s] += weights[i];
    }
  }
  return Capacity(n, std::move(values));
}

std::optional<std::pair<SubsetMask, SubsetMask>> Capacity::monotonicity_violation(
    double tol) const {
  // Checking single-element extensions S -> S + {i} suffices by transitivity.
  for (SubsetMask s = 0; s <= full_mask(); ++s) {
    for (std::size_t i = 0; i < n_; ++i) {
      const SubsetMask bit = SubsetMask{1} << i;
      if (s & bit) continue;
      if (values_[s] > values_[s | bit] + tol) return std::make_pair(s, s | bit);
    }
  }
  return std::nullopt;
}

bool Capacity::is_monotone(double tol) const {
  return !monotonicity_violation(tol).has_value();
}

Capacity random_monotone_capacity(std::size_t ground_size, Sampler& sampler) {
  const std::size_t size = std::size_t{1} << ground_size;
  Vec values(size, 0.0);
  for (std::size_t s = 1; s < size; ++s) {
    double floor = 0.0;
    for (std::size_t i = 0; i < ground_size; ++i) {
      if (s & (std::size_t{1} << i)) floor = std::max(floor, values[s & ~(std::size_t{1} << i)]);
    }
    values[s] = floor + sampler.uniform();
  }
  const double total = values[size - 1];
  for (double& v : values) v /= total;
  values[size - 1] = 1.0;
  return Capacity(ground_size, std::move(values));
}

double choquet(const Capacity& v, std::span<const double> x) {
  const std::size_t n = v.ground_size();
  require_dim(x, n, "choquet");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  // level = indices of the n - i largest coordinates, shrinking as i grows.
  SubsetMask level = v.full_mask();
  double value = x[order[0]] * v(level);
  for (std::size_t i = 1; i < n; ++i) {
    level &= ~(SubsetMask{1} << order[i - 1]);
    value += (x[order[i]] - x[order[i - 1]]) * v(level);
  }
  return value;
}

double maxplus(std::span<const double> weights, std::span<const double> x) {
  if (weights.empty()) throw std::invalid_argument("max-plus weights must be nonempty");
  require_dim(x, weights.size(), "maxplus");
  double best = weights[0] + x[0];
  for (std::size_t i = 1; i < x.size(); ++i) best = std::max(best, weights[i] + x[i]);
  return best;
}

double sqrt_gap(std::span<const double> x) {
  require_dim(x, 2, "sqrt_gap");
  return 0.5 * (x[0] + x[1] + std::sqrt(std::abs(x[1] - x[0])));
}

}  // namespace ordunit
