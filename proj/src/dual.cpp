#include "ordunit/dual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ordunit/sampling.hpp"

namespace ordunit {

WeakNeighborhood::WeakNeighborhood(DualPoint center_, std::vector<Vec> probes_, double eps_)
    : center(std::move(center_)), probes(std::move(probes_)), eps(eps_) {
  if (probes.empty()) throw std::invalid_argument("weak neighbourhood needs at least one probe");
  if (!(eps > 0.0)) throw std::invalid_argument("weak neighbourhood radius must be positive");
  for (const auto& p : probes) require_dim(p, center.space().dim(), "probe");
}

bool weak_nbhd_contains(const WeakNeighborhood& nbhd, const DualPoint& g) {
  if (g.space().dim() != nbhd.center.space().dim()) {
    throw DimensionError("weak_nbhd_contains: functionals live on different spaces");
  }
  return std::all_of(nbhd.probes.begin(), nbhd.probes.end(), [&](const Vec& x) {
    return std::abs(nbhd.center(x) - g(x)) < nbhd.eps;
  });
}

double absorbing_gamma(const OrderedSpace& space, std::span<const double> x, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("absorbing_gamma: eps must be positive");
  return space.order_norm(x) / eps;
}

DenseSequence::DenseSequence(std::vector<Vec> points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("dense sequence must be nonempty");
  for (const auto& p : points_) require_dim(p, points_.front().size(), "dense sequence point");
}

DenseSequence DenseSequence::dyadic(std::size_t dim, std::size_t count, std::size_t max_level) {
  if (dim == 0 || count == 0) throw std::invalid_argument("dyadic sequence needs dim, count > 0");
  std::vector<Vec> points;
  for (std::size_t level = 0; level <= max_level && points.size() < count; ++level) {
    const long long reach = 2LL << level;  // |k| <= 2^(level+1)
    const double denom = std::ldexp(1.0, static_cast<int>(level));
    std::vector<long long> k(dim, -reach);
    while (points.size() < count) {
      const bool repeat =
          level > 0 && std::all_of(k.begin(), k.end(), [](long long v) { return v % 2 == 0; });
      if (!repeat) {
        Vec p(dim);
        for (std::size_t d = 0; d < dim; ++d) p[d] = static_cast<double>(k[d]) / denom;
        points.push_back(std::move(p));
      }
      // Odometer increment, last coordinate fastest.
      std::size_t d = dim;
      while (d > 0 && k[d - 1] == reach) {
        k[d - 1] = -reach;
        --d;
      }
      if (d == 0) break;
      ++k[d - 1];
    }
  }
  return DenseSequence(std::move(points));
}

double weak_metric(const DualPoint& f, const DualPoint& g, const DenseSequence& seq,
                   std::size_t truncation) {
  if (truncation > seq.size()) {
    throw std::invalid_argument("weak_metric: truncation exceeds the dense sequence length");
  }
  double d = 0.0;
  double weight = 0.5;
  for (std::size_t k = 0; k < truncation; ++k) {
    d += weight * std::min(1.0, std::abs(f(seq[k]) - g(seq[k])));
    weight *= 0.5;
  }
  return d;
}

CheckSuite verify_in_EO(const DualPoint& f, std::size_t samples, std::uint64_t seed) {
  Sampler sampler(seed);
  const auto& space = f.space();
  CheckSuite suite{"EO_membership", {}};
  suite.parts.push_back(
      check_weak_additivity(f.functional(), sampler.shift_samples(space, samples)));
  suite.parts.push_back(
      check_order_preserving(f.functional(), sampler.comparable_pairs(space, samples)));
  suite.parts.push_back(check_normed(f.functional()));
  return suite;
}

namespace {

std::vector<SubsetMask> free_subsets(std::size_t n) {
  std::vector<SubsetMask> out;
  const SubsetMask full = static_cast<SubsetMask>((1u << n) - 1u);
  for (SubsetMask s = 1; s < full; ++s) out.push_back(s);
  return out;
}

}  // namespace

SubsequenceLimit subsequence_limit(std::span<const Capacity> caps, const OrderedSpace& space,
                                   const CompactnessOptions& options) {
  if (caps.size() < std::max<std::size_t>(1, options.min_length)) {
    std::ostringstream msg;
    msg << "sequence has " << caps.size() << " capacities; at least "
        << std::max<std::size_t>(1, options.min_length) << " required";
    throw SequenceTooShort(msg.str());
  }
  const std::size_t n = caps.front().ground_size();
  for (const auto& v : caps) {
    if (v.ground_size() != n) throw DimensionError("capacities must share a ground size");
    if (std::abs(v.total() - 1.0) > kTol) {
      throw std::invalid_argument("subsequence_limit expects normalized capacities, v(full) = 1");
    }
  }
  if (space.dim() != n) throw DimensionError("space dimension must equal the ground size");

  const auto coords = free_subsets(n);
  auto spread_of = [&](const std::vector<std::size_t>& ids) {
    double spread = 0.0;
    for (SubsetMask s : coords) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (std::size_t i : ids) {
        lo = std::min(lo, caps[i](s));
        hi = std::max(hi, caps[i](s));
      }
      spread = std::max(spread, hi - lo);
    }
    return spread;
  };

  std::vector<std::size_t> survivors(caps.size());
  for (std::size_t i = 0; i < caps.size(); ++i) survivors[i] = i;
  std::vector<double> box_lo(coords.size()), box_hi(coords.size());
  for (std::size_t c = 0; c < coords.size(); ++c) {
    box_lo[c] = std::numeric_limits<double>::infinity();
    box_hi[c] = -box_lo[c];
    for (const auto& v : caps) {
      box_lo[c] = std::min(box_lo[c], v(coords[c]));
      box_hi[c] = std::max(box_hi[c], v(coords[c]));
    }
  }

  std::vector<std::size_t> picks;
  while (spread_of(survivors) > options.tol) {
    for (std::size_t c = 0; c < coords.size(); ++c) {
      const double mid = 0.5 * (box_lo[c] + box_hi[c]);
      std::vector<std::size_t> lower, upper;
      for (std::size_t i : survivors) {
        const double v = caps[i](coords[c]);
        if (v <= mid) lower.push_back(i);
        if (v >= mid) upper.push_back(i);
      }
      bool take_lower = lower.size() > upper.size();
      if (lower.size() == upper.size()) {
        take_lower = !lower.empty() && (upper.empty() || lower.front() <= upper.front());
      }
      if (take_lower) {
        box_hi[c] = mid;
        survivors = std::move(lower);
      } else {
        box_lo[c] = mid;
        survivors = std::move(upper);
      }
    }
    const std::size_t floor_index = picks.empty() ? 0 : picks.back() + 1;
    auto next = std::lower_bound(survivors.begin(), survivors.end(), floor_index);
    if (next == survivors.end()) {
      std::ostringstream msg;
      msg << "sequence too short: survivors exhausted after " << picks.size()
          << " halving rounds with spread " << spread_of(survivors) << " > tol " << options.tol;
      throw SequenceTooShort(msg.str());
    }
    picks.push_back(*next);
  }

  SubsequenceLimit out{{}, 0, caps.front(), DualPoint(Functional::choquet(space, caps.front())),
                       {}, 0.0, CheckSuite{"subsequence_limit", {}}};
  out.indices = picks;
  std::vector<std::size_t> tail;
  if (picks.empty()) {
    tail = survivors;
  } else {
    out.tail_start = picks.size() - 1;
    tail.push_back(picks.back());
    for (std::size_t i : survivors) {
      if (i > picks.back()) {
        tail.push_back(i);
        out.indices.push_back(i);
      }
    }
  }
  if (picks.empty()) out.indices = tail;
  if (tail.size() < options.min_tail) {
    std::ostringstream msg;
    msg << "sequence too short: the final tail holds " << tail.size() << " member(s), fewer than "
        << options.min_tail;
    throw SequenceTooShort(msg.str());
  }

  // The deepest extracted member stands in for the limit; every tail member
  // lies within tol of it coordinatewise.
  const Vec& last = caps[tail.back()].values();
  out.limit_capacity = caps[tail.back()];
  out.limit = DualPoint(Functional::choquet(space, out.limit_capacity));
  for (std::size_t i : tail) {
    out.tail_spread = std::max(out.tail_spread, max_abs(sub(caps[i].values(), last)));
  }

  const DenseSequence probes = DenseSequence::dyadic(n, options.truncation);
  for (std::size_t i : out.indices) {
    out.distances.push_back(
        weak_metric(DualPoint(Functional::choquet(space, caps[i])), out.limit, probes,
                    options.truncation));
  }

  // (a) the limit stays a normalized capacity.
  {
    const auto violation = out.limit_capacity.monotonicity_violation();
    const double total_defect = std::abs(out.limit_capacity.total() - 1.0);
    if (violation || total_defect > kTol) {
      Witness w;
      w.add("limit_capacity", out.limit_capacity.values());
      if (violation) {
        w.add("subset", {static_cast<double>(violation->first)})
            .add("superset", {static_cast<double>(violation->second)});
      }
      w.note = "limit capacity is not monotone with v(full) = 1";
      out.report.parts.push_back(
          PropertyReport::failed("limit_capacity", 1, total_defect, std::move(w)));
    } else {
      out.report.parts.push_back(PropertyReport::passed("limit_capacity", 1, total_defect));
    }
  }
  // (b) the limit functional belongs to E^O.
  for (auto& part : verify_in_EO(out.limit, options.membership_samples, options.seed).parts) {
    out.report.parts.push_back(std::move(part));
  }
  // (c) the tail is weak-metric close to the limit.
  {
    double worst = 0.0;
    std::size_t worst_at = out.tail_start;
    for (std::size_t k = out.tail_start; k < out.distances.size(); ++k) {
      if (out.distances[k] > worst) {
        worst = out.distances[k];
        worst_at = k;
      }
    }
    const std::size_t tail_len = out.distances.size() - out.tail_start;
    if (worst <= options.metric_tol) {
      out.report.parts.push_back(PropertyReport::passed("tail_weak_metric", tail_len, worst));
    } else {
      Witness w;
      w.add("index", {static_cast<double>(out.indices[worst_at])})
          .add("distance", {worst});
      w.note = "tail member is farther than metric_tol from the limit";
      out.report.parts.push_back(
          PropertyReport::failed("tail_weak_metric", tail_len, worst, std::move(w)));
    }
  }
  return out;
}

}  // namespace ordunit
