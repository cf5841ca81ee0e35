#include "doctest.h"

#include <algorithm>

#include "oracles.hpp"
#include "ordunit/extension.hpp"
#include "ordunit/sampling.hpp"

using namespace ordunit;

namespace {

const OrderedSpace kPlane = OrderedSpace::standard(2);

oracle::Vec oracle_interval(const PartialFunctional& pf, const Vec& y) {
  const auto& e = pf.space();
  double lo = -1e300, hi = 1e300;
  for (std::size_t i = 0; i < pf.line_count(); ++i) {
    const Vec x = pf.line_point(i);
    const double g = pf.line_value(i);
    hi = std::min(hi, g + pf.unit_value() * oracle::ray_inf(e.rows(), e.unit(), x, y));
    lo = std::max(lo, g + pf.unit_value() * oracle::ray_sup(e.rows(), e.unit(), x, y));
  }
  return {lo, hi};
}

}  // namespace

TEST_CASE("span membership") {
  const ASubspace a(kPlane, {{1, 0}});
  CHECK(span_contains(a, Vec{3, 2}));
  CHECK(span_contains(a, Vec{5, 5}));
  CHECK_FALSE(span_contains(a, Vec{1, 2}));
  CHECK(a.line_of(Vec{5, 5}) == std::size_t{0});
  CHECK(a.line_of(Vec{3, 2}) == std::size_t{1});

  const ASubspace dup(kPlane, {{1, 0}, {2, 1}, {4, 4}});
  CHECK(dup.base_points().size() == 1);
}

TEST_CASE("partial functional construction") {
  CHECK_THROWS_AS(PartialFunctional(kPlane, {}, {}, -1.0), ExtensionError);
  CHECK_THROWS_AS(PartialFunctional(kPlane, {{1, 0}}, {}, 1.0), ExtensionError);
  // (2,1) = (1,0) + 1*unit, so its value is forced to 0.5 + 1.
  CHECK_THROWS_AS(PartialFunctional(kPlane, {{1, 0}, {2, 1}}, {0.5, 0.7}, 1.0), ExtensionError);
  CHECK_NOTHROW(PartialFunctional(kPlane, {{1, 0}, {2, 1}}, {0.5, 1.5}, 1.0));
  CHECK_THROWS_AS(PartialFunctional(kPlane, {{2, 2}}, {1.0}, 1.0), ExtensionError);

  const PartialFunctional pf(kPlane, {{1, 0}}, {0.5}, 1.0);
  CHECK(pf.value_at(Vec{3, 2}).value() == doctest::Approx(2.5));
  CHECK(pf.value_at(Vec{-1, -1}).value() == doctest::Approx(-1.0));
  CHECK_FALSE(pf.value_at(Vec{1, 2}).has_value());
}

TEST_CASE("partial consistency") {
  CHECK(check_partial_consistency(PartialFunctional(kPlane, {{1, 0}}, {0.5}, 1.0)).pass);
  const auto r = check_partial_consistency(PartialFunctional(kPlane, {{1, 0}}, {2.0}, 1.0));
  CHECK_FALSE(r.pass);
  REQUIRE(r.witness);
  CHECK(r.witness->find("threshold") != nullptr);
  CHECK(check_partial_consistency(PartialFunctional(kPlane, {}, {}, 0.0)).pass);
  CHECK(check_partial_consistency(PartialFunctional(kPlane, {}, {}, 3.0)).pass);
}

TEST_CASE("extension interval examples") {
  const PartialFunctional empty(kPlane, {}, {}, 1.0);
  auto iv = extension_interval(empty, Vec{1, 0});
  CHECK(iv.p_minus == doctest::Approx(0.0));
  CHECK(iv.p_plus == doctest::Approx(1.0));
  iv = extension_interval(empty, Vec{2, 2});
  CHECK(iv.p_minus == doctest::Approx(2.0));
  CHECK(iv.p_plus == doctest::Approx(2.0));

  const PartialFunctional one(kPlane, {{1, 0}}, {0.5}, 1.0);
  iv = extension_interval(one, Vec{0, 1});
  CHECK(iv.p_minus == doctest::Approx(0.0));
  CHECK(iv.p_plus == doctest::Approx(1.0));

  CHECK_THROWS_AS(extension_interval(PartialFunctional(kPlane, {{1, 0}}, {2.0}, 1.0), Vec{0, 1}),
                  ExtensionError);
}

TEST_CASE("extension interval matches the bisection oracle") {
  Sampler s(31);
  const OrderedSpace h(3, ConeSpec::halfspaces({{1, 0, 0}, {1, 1, 0}, {0, 1, 1}}), {1, 1, 1});
  for (int rep = 0; rep < 60; ++rep) {
    const bool orthant = rep % 2 == 0;
    const OrderedSpace& e = orthant ? OrderedSpace::standard(3) : h;
    const double c = s.uniform(0.2, 2.0);
    Functional truth = orthant
                           ? Functional::choquet(e, random_monotone_capacity(3, s))
                           : Functional::linear(e, add(scale(s.uniform(), e.rows()[0]),
                                                       scale(s.uniform(), e.rows()[2])));
    std::vector<Vec> base;
    Vec values;
    for (int i = 0; i < 4; ++i) {
      base.push_back(s.box(3, 2.0));
      values.push_back(c * truth(base.back()) / truth.unit_value());
    }
    const PartialFunctional pf(e, base, values, c);
    REQUIRE(pf.consistent());
    for (int k = 0; k < 5; ++k) {
      const Vec y = s.box(3, 2.0);
      const auto iv = extension_interval(pf, y);
      const auto expected = oracle_interval(pf, y);
      CHECK(iv.p_minus == doctest::Approx(expected[0]).epsilon(1e-9));
      CHECK(iv.p_plus == doctest::Approx(expected[1]).epsilon(1e-9));
      CHECK(iv.p_minus <= iv.p_plus + 1e-12);
      const double t = c * truth(y) / truth.unit_value();
      CHECK(iv.p_minus <= t + 1e-9);
      CHECK(t <= iv.p_plus + 1e-9);
    }
  }
}

TEST_CASE("extend_one") {
  const PartialFunctional empty(kPlane, {}, {}, 1.0);
  const auto step = extend_step(empty, Vec{1, 0}, ExtensionRule::midpoint());
  CHECK(step.chosen == doctest::Approx(0.5));
  CHECK(step.extended.value_at(Vec{1, 0}).value() == doctest::Approx(0.5));

  const auto lower = extend_one(empty, Vec{1, 0}, ExtensionRule::given(0.0));
  CHECK(lower.value_at(Vec{1, 0}).value() == doctest::Approx(0.0));
  CHECK(check_partial_consistency(lower).pass);

  CHECK(extend_one(empty, Vec{1, 0}, ExtensionRule::upper()).value_at(Vec{1, 0}).value() ==
        doctest::Approx(1.0));
  CHECK_THROWS_AS(extend_one(empty, Vec{3, 3}, ExtensionRule::midpoint()), ExtensionError);
  CHECK_THROWS_AS(extend_one(empty, Vec{1, 0}, ExtensionRule::given(1.5)), ExtensionError);
}

TEST_CASE("extend_all over a grid stays consistent") {
  std::vector<Vec> grid;
  for (double a = -1; a <= 1; a += 0.5)
    for (double b = -1; b <= 1; b += 0.5) grid.push_back({a, b});
  for (auto rule : {ExtensionRule::lower(), ExtensionRule::upper(), ExtensionRule::midpoint()}) {
    const auto pf = extend_all(PartialFunctional(kPlane, {{1, 0}}, {0.5}, 1.0), grid, rule);
    CHECK(check_partial_consistency(pf).pass);
    for (const auto& y : grid) CHECK(pf.value_at(y).has_value());
  }
  const PartialFunctional pf(kPlane, {{1, 0}}, {0.5}, 1.0);
  const auto same = extend_all(pf, {}, ExtensionRule::midpoint());
  CHECK(same.values() == pf.values());
}

TEST_CASE("extend_all depends on the order of the targets") {
  const auto e = OrderedSpace::standard(3);
  const PartialFunctional empty(e, {}, {}, 1.0);
  const Vec a{0, 0, 1}, b{0, 1, 1};
  const std::vector<Vec> ab{a, b}, ba{b, a};
  const auto first = extend_all(empty, ab, ExtensionRule::midpoint());
  const auto second = extend_all(empty, ba, ExtensionRule::midpoint());
  CHECK(first.value_at(a).value() == doctest::Approx(0.5));
  CHECK(first.value_at(b).value() == doctest::Approx(0.75));
  CHECK(second.value_at(b).value() == doctest::Approx(0.5));
  CHECK(second.value_at(a).value() == doctest::Approx(0.25));
  CHECK(check_partial_consistency(first).pass);
  CHECK(check_partial_consistency(second).pass);
}

TEST_CASE("canonical extension") {
  const PartialFunctional empty(kPlane, {}, {}, 1.0);
  const auto lower = canonical_extension(empty, ExtensionMode::Lower);
  const auto mid = canonical_extension(empty, ExtensionMode::Midpoint);
  CHECK(lower(Vec{1, 0}) == doctest::Approx(0.0));
  CHECK(mid(Vec{1, 0}) == doctest::Approx(0.5));
  for (double t : {-3.0, -0.5, 0.0, 2.0, 7.25}) {
    CHECK(lower(Vec{t, t}) == doctest::Approx(t));
    CHECK(mid(Vec{t, t}) == doctest::Approx(t));
  }

  Sampler s(41);
  const PartialFunctional pf(kPlane, {{1, 0}, {-1, 2}}, {0.6, 1.2}, 1.0);
  REQUIRE(pf.consistent());
  for (auto mode : {ExtensionMode::Lower, ExtensionMode::Midpoint}) {
    const auto f = canonical_extension(pf, mode);
    CHECK(f(Vec{1, 0}) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(f(Vec{-1, 2}) == doctest::Approx(1.2).epsilon(1e-12));
    CHECK(check_weak_additivity(f, s.shift_samples(kPlane, 2048)).pass);
    CHECK(check_order_preserving(f, s.comparable_pairs(kPlane, 2048)).pass);
    CHECK(check_order_preserving(f, grid_comparable_pairs(kPlane, -2, 2, 0.5)).pass);
  }
}
