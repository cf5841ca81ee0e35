#include "doctest.h"

#include <cmath>
#include <set>

#include "ordunit/dual.hpp"
#include "ordunit/sampling.hpp"

using namespace ordunit;

namespace {

const OrderedSpace kPlane = OrderedSpace::standard(2);

DualPoint chq(double v1, double v2) {
  return DualPoint(Functional::choquet(kPlane, Capacity(2, {0, v1, v2, 1})));
}

}  // namespace

TEST_CASE("weak neighbourhoods") {
  const auto f = chq(0.3, 0.6);
  // At (1, 0) the Choquet value is v({1}).
  const auto g = chq(0.6, 0.6);
  const std::vector<Vec> probes{{1, 0}};
  CHECK(weak_nbhd_contains(WeakNeighborhood(f, probes, 0.2), f));
  CHECK_FALSE(weak_nbhd_contains(WeakNeighborhood(f, probes, 0.2), g));
  CHECK(weak_nbhd_contains(WeakNeighborhood(f, probes, 0.5), g));
  CHECK_THROWS_AS(WeakNeighborhood(f, {}, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(WeakNeighborhood(f, probes, 0.0), std::invalid_argument);
}

TEST_CASE("absorbing constant") {
  CHECK(absorbing_gamma(kPlane, Vec{4, -1}, 2.0) == doctest::Approx(2.0));
  CHECK(absorbing_gamma(kPlane, Vec{0, 0}, 1.0) == 0.0);
  CHECK(absorbing_gamma(kPlane, Vec{1, 0.5}, 1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(absorbing_gamma(kPlane, Vec{1, 1}, -1.0), std::invalid_argument);

  // |f(x)| <= ||x|| f(1) for members of E^O.
  Sampler s(7);
  const auto e = OrderedSpace::standard(3);
  for (int rep = 0; rep < 10; ++rep) {
    const DualPoint f(Functional::choquet(e, random_monotone_capacity(3, s)));
    for (int i = 0; i < 200; ++i) {
      const Vec x = s.box(3, 4.0);
      CHECK(std::abs(f(x)) <= absorbing_gamma(e, x, 1.0) + 1e-12);
    }
  }
}

TEST_CASE("dyadic dense sequence") {
  const auto seq = DenseSequence::dyadic(2, 64);
  CHECK(seq.size() == 64);
  CHECK(seq[0] == Vec{-2, -2});
  std::set<Vec> seen(seq.points().begin(), seq.points().end());
  CHECK(seen.size() == seq.size());
  // Level 0 has 5^2 integer points, then level 1 starts with half-integers.
  CHECK(seq[25] == Vec{-2, -1.5});
  for (const auto& p : seq.points()) {
    for (double c : p) CHECK(std::abs(c) <= 2.0);
  }
  CHECK_THROWS_AS(DenseSequence({}), std::invalid_argument);
}

TEST_CASE("weak metric") {
  const auto f = chq(0.3, 0.6);
  const auto seq = DenseSequence::dyadic(2, 8);
  CHECK(weak_metric(f, f, seq, 8) == 0.0);

  const DenseSequence single({{1, 0}, {0, 0}, {-1, -1}, {2, 2}});
  CHECK(weak_metric(f, chq(0.7, 0.6), single, 4) == doctest::Approx(0.2));

  const DualPoint a(Functional::linear(kPlane, {0.5, 0.5}));
  const DualPoint b(Functional::custom(kPlane, "far", [](std::span<const double> x) {
    return 0.5 * (x[0] + x[1]) + 3.0;
  }));
  CHECK(weak_metric(a, b, single, 4) == doctest::Approx(0.9375));
  CHECK_THROWS_AS(weak_metric(a, b, single, 5), std::invalid_argument);
}

TEST_CASE("weak metric axioms") {
  Sampler s(17);
  const auto e = OrderedSpace::standard(3);
  const auto seq = DenseSequence::dyadic(3, 64);
  for (int rep = 0; rep < 50; ++rep) {
    const DualPoint f(Functional::choquet(e, random_monotone_capacity(3, s)));
    const DualPoint g(Functional::choquet(e, random_monotone_capacity(3, s)));
    const DualPoint h(Functional::maxplus(e, {0, -s.uniform(), -s.uniform()}));
    CHECK(weak_metric(f, g, seq) == weak_metric(g, f, seq));
    CHECK(weak_metric(f, f, seq) == 0.0);
    CHECK(weak_metric(f, h, seq) <= weak_metric(f, g, seq) + weak_metric(g, h, seq) + 1e-15);
  }
}

TEST_CASE("weak metric convergence is probewise convergence") {
  const auto e = OrderedSpace::standard(2);
  const auto seq = DenseSequence::dyadic(2, 64);
  const auto limit = chq(0.4, 0.5);
  double previous = 1.0;
  for (int k = 1; k <= 30; ++k) {
    const double t = std::ldexp(1.0, -k);
    const auto fk = chq(0.4 + t * 0.5, 0.5 - t * 0.3);
    const double d = weak_metric(fk, limit, seq);
    double worst_probe = 0.0;
    for (const auto& x : seq.points()) worst_probe = std::max(worst_probe, std::abs(fk(x) - limit(x)));
    CHECK(d < previous);
    CHECK(d <= worst_probe);
    previous = d;
  }
  CHECK(previous < 1e-8);
}

TEST_CASE("membership in the normalized dual") {
  CHECK(verify_in_EO(chq(0.3, 0.6), 2048).pass());
  const auto sqrt_gap = verify_in_EO(DualPoint(Functional::sqrt_gap(kPlane)), 2048);
  CHECK_FALSE(sqrt_gap.pass());
  REQUIRE(sqrt_gap.first_failure());
  CHECK(sqrt_gap.first_failure()->property == "order_preserving");
  CHECK(verify_in_EO(DualPoint(Functional::maxplus(kPlane, {0, -0.7})), 2048).pass());
  CHECK_FALSE(verify_in_EO(DualPoint(Functional::maxplus(kPlane, {-0.1, -0.7})), 2048).pass());
}

TEST_CASE("subsequence limit on an oscillating sequence") {
  std::vector<Capacity> caps;
  for (int k = 0; k < 20; ++k) caps.emplace_back(2, Vec{0, 0.5 + (k % 2 == 0 ? 0.1 : -0.1), 0.7, 1});
  const auto r = subsequence_limit(caps, kPlane);
  CHECK(r.report.pass());
  REQUIRE_FALSE(r.indices.empty());
  for (std::size_t i : r.indices) CHECK(i % 2 == 0);
  for (std::size_t i = 1; i < r.indices.size(); ++i) CHECK(r.indices[i] > r.indices[i - 1]);
  CHECK(r.limit_capacity(0b01) == doctest::Approx(0.6));
}

TEST_CASE("subsequence limit on a constant sequence") {
  const std::vector<Capacity> caps(5, Capacity(2, {0, 0.2, 0.9, 1}));
  const auto r = subsequence_limit(caps, kPlane);
  CHECK(r.report.pass());
  CHECK(r.indices == std::vector<std::size_t>{0, 1, 2, 3, 4});
  CHECK(r.limit_capacity.values() == caps.front().values());
}

TEST_CASE("subsequence limit on a convergent sequence") {
  std::vector<Capacity> caps;
  for (int k = 0; k < 60; ++k) {
    const double t = std::ldexp(1.0, -k / 2);
    caps.emplace_back(2, Vec{0, 0.5 + 0.4 * t * (k % 2 ? 1 : -1), 0.5 - 0.3 * t, 1});
  }
  const auto r = subsequence_limit(caps, kPlane);
  CHECK(r.report.pass());
  CHECK(r.limit_capacity(0b01) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(r.limit_capacity(0b10) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(r.tail_spread <= 1e-6);
}

TEST_CASE("subsequence limit input errors") {
  const std::vector<Capacity> one{Capacity(2, {0, 0.2, 0.9, 1})};
  CHECK_THROWS_AS(subsequence_limit(one, kPlane), SequenceTooShort);

  Sampler s(3);
  std::vector<Capacity> noise;
  for (int k = 0; k < 10; ++k) noise.push_back(random_monotone_capacity(2, s));
  CHECK_THROWS_AS(subsequence_limit(noise, kPlane), SequenceTooShort);

  // Two distinct members leave a lone survivor, which is not a tail.
  const std::vector<Capacity> apart{Capacity(2, {0, 0.1, 0.1, 1}), Capacity(2, {0, 0.9, 0.9, 1})};
  CHECK_THROWS_AS(subsequence_limit(apart, kPlane), SequenceTooShort);
  CompactnessOptions lone;
  lone.min_tail = 1;
  CHECK_NOTHROW(subsequence_limit(apart, kPlane, lone));

  const std::vector<Capacity> unnormalized(3, Capacity(2, {0, 0.2, 0.9, 2}));
  CHECK_THROWS_AS(subsequence_limit(unnormalized, kPlane), std::invalid_argument);
}
