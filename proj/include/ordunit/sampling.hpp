#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "ordunit/space.hpp"

namespace ordunit {

inline constexpr std::size_t kDefaultSamples = std::size_t{1} << 14;

struct ShiftSample {
  Vec x;
  double lambda;
};

struct OrderedPair {
  Vec lo;
  Vec hi;
};

/// Seeded generator behind every sampling-based check. Uniform draws are
/// built directly from the 64-bit engine output so sample streams are
/// identical across standard library implementations.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi);
  std::size_t index(std::size_t n);

  /// Coordinates uniform in [-radius, radius].
  Vec box(std::size_t dim, double radius);
  /// A point of the cone: boundary points appear with positive probability.
  Vec cone_point(const OrderedSpace& space, double radius);
  /// x with order_norm(x - center) < radius (strict).
  Vec ball_point(const OrderedSpace& space, std::span<const double> center,
                 double radius);
  /// (x, y) with x <= y in the space order.
  OrderedPair comparable_pair(const OrderedSpace& space, double radius);
  ShiftSample shift_sample(const OrderedSpace& space, double radius);

  std::vector<ShiftSample> shift_samples(const OrderedSpace& space,
                                         std::size_t count,
                                         double radius = 3.0);
  std::vector<OrderedPair> comparable_pairs(const OrderedSpace& space,
                                            std::size_t count,
                                            double radius = 3.0);
  std::vector<std::pair<Vec, Vec>> arbitrary_pairs(const OrderedSpace& space,
                                                   std::size_t count,
                                                   double radius = 3.0);
  std::vector<Vec> cone_points(const OrderedSpace& space, std::size_t count,
                               double radius = 3.0);

 private:
  std::mt19937_64 engine_;
};

}  // namespace ordunit
