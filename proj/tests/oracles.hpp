#pragma once

// Independent reference computations used to freeze expected values. None of
// these call into the closed-form paths they check.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "ordunit/capacity.hpp"

namespace oracle {

using Vec = std::vector<double>;

// Exact half-space membership, no tolerance.
inline bool in_cone(const std::vector<Vec>& rows, std::span<const double> x) {
  for (const auto& a : rows) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += a[i] * x[i];
    if (s < 0.0) return false;
  }
  return true;
}

inline Vec shifted(std::span<const double> x, double t, std::span<const double> u) {
  Vec out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += t * u[i];
  return out;
}

// inf{t : x + t*u - y in cone}, bisection over [-range, range].
inline double ray_inf(const std::vector<Vec>& rows, std::span<const double> u,
                      std::span<const double> x, std::span<const double> y,
                      double range = 1e3) {
  auto member = [&](double t) {
    Vec d = shifted(x, t, u);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= y[i];
    return in_cone(rows, d);
  };
  double lo = -range, hi = range;
  for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (member(mid) ? hi : lo) = mid;
  }
  return hi;
}

// sup{t : y - x - t*u in cone}.
inline double ray_sup(const std::vector<Vec>& rows, std::span<const double> u,
                      std::span<const double> x, std::span<const double> y,
                      double range = 1e3) {
  auto member = [&](double t) {
    Vec d(y.begin(), y.end());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= x[i] + t * u[i];
    return in_cone(rows, d);
  };
  double lo = -range, hi = range;
  for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (member(mid) ? lo : hi) = mid;
  }
  return lo;
}

// inf{lambda >= 0 : -lambda*u <= x <= lambda*u} by bisection on membership.
inline double order_norm(const std::vector<Vec>& rows, std::span<const double> u,
                         std::span<const double> x) {
  auto bracketed = [&](double lambda) {
    Vec up(x.size()), down(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      up[i] = lambda * u[i] - x[i];
      down[i] = lambda * u[i] + x[i];
    }
    return in_cone(rows, up) && in_cone(rows, down);
  };
  double hi = 1.0;
  while (!bracketed(hi)) hi *= 2.0;
  double lo = 0.0;
  if (bracketed(lo)) return 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (bracketed(mid) ? hi : lo) = mid;
  }
  return hi;
}

// Layer-cake Choquet integral: min(x) v(full) plus the integral over distinct
// thresholds of v({x >= next threshold}).
inline double choquet_layer_cake(const ordunit::Capacity& v, std::span<const double> x) {
  Vec levels(x.begin(), x.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  double value = levels.front() * v.total();
  for (std::size_t j = 1; j < levels.size(); ++j) {
    ordunit::SubsetMask above = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] >= levels[j]) above |= ordunit::SubsetMask{1} << i;
    }
    value += (levels[j] - levels[j - 1]) * v(above);
  }
  return value;
}

// The planar clamp written case by case.
inline Vec clamp(double x1, double x2) {
  if (x2 <= x1 - 1.0) return {x1, x1 - 1.0};
  if (x1 - 1.0 < x2 && x2 < x1 + 1.0) return {x1, x2};
  return {x1, x1 + 1.0};
}

}  // namespace oracle
