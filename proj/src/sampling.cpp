#include "ordunit/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace ordunit {

double Sampler::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Sampler::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::size_t Sampler::index(std::size_t n) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

Vec Sampler::box(std::size_t dim, double radius) {
  Vec x(dim);
  for (double& v : x) v = uniform(-radius, radius);
  return x;
}

Vec Sampler::cone_point(const OrderedSpace& space, double radius) {
  const Vec v = box(space.dim(), radius);
  const Vec ratios = space.unit_ratios(v);
  // Smallest shift along the unit that lands in the cone.
  const double lift = -*std::min_element(ratios.begin(), ratios.end());
  const double extra = uniform() < 0.25 ? 0.0 : uniform(0.0, radius);
  return axpy(v, lift + extra, space.unit());
}

Vec Sampler::ball_point(const OrderedSpace& space, std::span<const double> center,
                        double radius) {
  const Vec d = box(space.dim(), 1.0);
  const double n = space.order_norm(d);
  if (n == 0.0) return Vec(center.begin(), center.end());
  return axpy(center, radius * uniform() / n, d);
}

OrderedPair Sampler::comparable_pair(const OrderedSpace& space, double radius) {
  Vec x = box(space.dim(), radius);
  if (uniform() < 0.05) return {x, x};
  const double magnitude = std::pow(10.0, uniform(-3.0, 0.0));
  Vec y = axpy(x, magnitude, cone_point(space, radius));
  return {std::move(x), std::move(y)};
}

ShiftSample Sampler::shift_sample(const OrderedSpace& space, double radius) {
  Vec x = box(space.dim(), radius);
  return {std::move(x), uniform(-radius, radius)};
}

std::vector<ShiftSample> Sampler::shift_samples(const OrderedSpace& space,
                                                std::size_t count, double radius) {
  std::vector<ShiftSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(shift_sample(space, radius));
  return out;
}

std::vector<OrderedPair> Sampler::comparable_pairs(const OrderedSpace& space,
                                                   std::size_t count, double radius) {
  std::vector<OrderedPair> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(comparable_pair(space, radius));
  return out;
}

std::vector<std::pair<Vec, Vec>> Sampler::arbitrary_pairs(const OrderedSpace& space,
                                                          std::size_t count,
                                                          double radius) {
  std::vector<std::pair<Vec, Vec>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Vec x = box(space.dim(), radius);
    // Mix near pairs with far pairs.
    Vec y = uniform() < 0.5 ? box(space.dim(), radius)
                            : axpy(x, std::pow(10.0, uniform(-4.0, 0.0)),
                                   box(space.dim(), 1.0));
    out.emplace_back(std::move(x), std::move(y));
  }
  return out;
}

std::vector<Vec> Sampler::cone_points(const OrderedSpace& space, std::size_t count,
                                      double radius) {
  std::vector<Vec> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(cone_point(space, radius));
  return out;
}

}  // namespace ordunit
