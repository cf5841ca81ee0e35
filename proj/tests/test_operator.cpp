#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "ordunit/operator.hpp"
#include "ordunit/sampling.hpp"

using namespace ordunit;

namespace {

const OrderedSpace kPlane = OrderedSpace::standard(2);

Operator scaled_identity(double s) {
  return Operator::linear_positive(kPlane, kPlane, {{s, 0}, {0, s}});
}

}  // namespace

TEST_CASE("clamp matches its piecewise definition on a grid") {
  const auto t = Operator::clamp();
  for (int i = 0; i <= 40; ++i) {
    for (int j = 0; j <= 40; ++j) {
      const Vec x{-5.0 + 0.25 * i, -5.0 + 0.25 * j};
      const Vec got = t(x);
      const Vec want = oracle::clamp(x[0], x[1]);
      CHECK(got[0] == want[0]);
      CHECK(got[1] == want[1]);
    }
  }
  CHECK(t(Vec{2, 4}) == Vec{2, 3});
  CHECK(t(Vec{0, 0}) == Vec{0, 0});
  CHECK(t(Vec{5, 3}) == Vec{5, 4});
}

TEST_CASE("zero maps to zero") {
  Sampler s(1);
  const Vec zero{0, 0};
  CHECK(Operator::clamp()(zero) == zero);
  CHECK(scaled_identity(3)(zero) == zero);
  CHECK(Operator::stack({Functional::choquet(kPlane, Capacity::uniform(2)),
                         Functional::maxplus(kPlane, {0, -1})})(zero) == zero);
}

TEST_CASE("operator checkers") {
  Sampler s(2);
  const auto shifts = s.shift_samples(kPlane, 10000);
  const auto pairs = s.comparable_pairs(kPlane, 10000);
  const auto clamp = Operator::clamp();
  CHECK(check_weakly_additive_op(clamp, shifts).pass);
  CHECK(check_order_preserving_op(clamp, pairs).pass);

  const auto lin = Operator::linear_positive(kPlane, kPlane, {{0.5, 0.5}, {0.2, 0.8}});
  CHECK(lin.maps_cone());
  CHECK(check_weakly_additive_op(lin, shifts).pass);
  CHECK(check_order_preserving_op(lin, pairs).pass);

  const auto stack = Operator::stack({Functional::choquet(kPlane, random_monotone_capacity(2, s)),
                                      Functional::choquet(kPlane, random_monotone_capacity(2, s))});
  CHECK(check_order_preserving_op(stack, pairs).pass);
  CHECK(check_weakly_additive_op(stack, shifts).pass);

  const auto square = Operator::custom(kPlane, kPlane, "square",
                                       [](std::span<const double> x) { return Vec{x[0] * x[0], x[1]}; });
  const auto r = check_weakly_additive_op(square, shifts);
  CHECK_FALSE(r.pass);
  CHECK(r.witness.has_value());

  const auto neg = Operator::linear_positive(kPlane, kPlane, {{1, -1}, {0, 1}});
  CHECK_FALSE(neg.maps_cone());
  CHECK_FALSE(check_order_preserving_op(neg, pairs).pass);
}

TEST_CASE("unit image and modulus") {
  CHECK(unit_image_interior(Operator::clamp()));
  CHECK_FALSE(unit_image_interior(Operator::linear_positive(kPlane, kPlane, {{1, 0}, {0, 0}})));
  CHECK(unit_image_interior(Operator::linear_positive(kPlane, kPlane, {{1, 2}, {3, 4}})));
  CHECK(operator_modulus(Operator::clamp()) == doctest::Approx(1.0));
  CHECK(operator_modulus(scaled_identity(2)) == doctest::Approx(2.0));
  CHECK(operator_modulus(scaled_identity(0)) == 0.0);
}

TEST_CASE("automatic continuity and boundedness") {
  Sampler s(3);
  const auto pairs = s.arbitrary_pairs(kPlane, 10000);
  CHECK(operator_lipschitz_defect(Operator::clamp(), pairs) <= 1e-9);
  CHECK(operator_lipschitz_defect(scaled_identity(2.5), pairs) <= 1e-9);

  const auto e3 = OrderedSpace::standard(3);
  const auto stack = Operator::stack({Functional::choquet(e3, random_monotone_capacity(3, s)),
                                      Functional::maxplus(e3, {0, -1, -2})});
  CHECK(operator_lipschitz_defect(stack, s.arbitrary_pairs(e3, 5000)) <= 1e-9);

  const auto t = Operator::clamp();
  for (double r : {1.0, 2.0, 5.0}) {
    double sup = 0.0;
    for (int i = 0; i < 2000; ++i) {
      sup = std::max(sup, kPlane.order_norm(t(s.ball_point(kPlane, Vec{0, 0}, r))));
    }
    CHECK(sup <= r * operator_modulus(t) + 1e-9);
  }
}

TEST_CASE("equicontinuity") {
  Sampler s(4);
  std::vector<Operator> stacks;
  for (int i = 0; i < 10; ++i) {
    stacks.push_back(Operator::stack({Functional::choquet(kPlane, random_monotone_capacity(2, s)),
                                      Functional::choquet(kPlane, random_monotone_capacity(2, s))}));
  }
  const auto m = equicontinuity_modulus(OperatorFamily(stacks));
  CHECK(m.bounded);
  CHECK(m.delta(0.3) == doctest::Approx(0.3));

  const auto single = equicontinuity_modulus(OperatorFamily({scaled_identity(2)}));
  CHECK(single.delta(0.5) == doctest::Approx(0.25));

  std::vector<Operator> growing;
  for (int n = 1; n <= 20; ++n) growing.push_back(scaled_identity(std::pow(10.0, n)));
  const auto unbounded = equicontinuity_modulus(OperatorFamily(growing));
  CHECK_FALSE(unbounded.bounded);
  CHECK_THROWS_AS(unbounded.delta(1.0), std::domain_error);

  CHECK_THROWS_AS(OperatorFamily({}), std::invalid_argument);
}

TEST_CASE("pointwise limits") {
  const std::vector<Vec> probes{{1, 0}, {0, 1}, {2, -1}, {0.5, 0.25}};
  std::vector<Operator> seq;
  for (int k = 0; k <= 9; ++k) seq.push_back(scaled_identity(1.0 + std::pow(10.0, -k)));
  const auto lim = pointwise_limit(seq, probes);
  CHECK(lim.report.pass());
  for (const auto& p : probes) {
    const Vec v = lim.limit(p);
    CHECK(v[0] == doctest::Approx(p[0]).epsilon(1e-6));
    CHECK(v[1] == doctest::Approx(p[1]).epsilon(1e-6));
  }

  // Choquet stacks with capacities converging to v*.
  const Capacity star(2, {0, 0.5, 0.5, 1});
  std::vector<Operator> chq;
  for (int k = 1; k <= 40; ++k) {
    const double t = std::ldexp(1.0, -k);
    const Capacity vk(2, {0, 0.5 + 0.3 * t, 0.5 - 0.2 * t, 1});
    chq.push_back(Operator::stack({Functional::choquet(kPlane, vk)}));
  }
  const auto chq_lim = pointwise_limit(chq, probes);
  CHECK(chq_lim.report.pass());
  for (const auto& p : probes) CHECK(chq_lim.limit(p)[0] == doctest::Approx(choquet(star, p)).epsilon(1e-9));

  std::vector<Operator> diverging;
  for (int n = 1; n <= 5; ++n) diverging.push_back(scaled_identity(n));
  CHECK_THROWS_AS(pointwise_limit(diverging, probes), DivergenceError);
}

TEST_CASE("graph check") {
  Sampler s(5);
  std::vector<Vec> points;
  for (int i = 0; i < 100; ++i) points.push_back(s.box(2, 3));
  const Vec lambdas{-2, -1, 0, 1, 2};
  CHECK(graph_check(Operator::clamp(), points, lambdas).pass);
  CHECK(graph_check(scaled_identity(3), points, lambdas).pass);
  const auto square = Operator::custom(kPlane, kPlane, "square",
                                       [](std::span<const double> x) { return Vec{x[0] * x[0], x[1]}; });
  CHECK_FALSE(graph_check(square, points, lambdas).pass);
}

TEST_CASE("clamp image oracle agrees with forward sampling") {
  const auto t = Operator::clamp();
  const auto image = default_image_oracle(t);
  for (int i = -20; i <= 20; ++i) {
    for (int j = -20; j <= 20; ++j) {
      const Vec x{0.25 * i, 0.25 * j};
      CHECK(image(t(x)));
      // y in D is its own preimage; y outside D never appears as an image.
      const bool in_band = std::abs(x[1] - x[0]) <= 1.0;
      CHECK(image(x) == in_band);
      CHECK((t(x) == x) == in_band);
    }
  }
}

TEST_CASE("openness") {
  const auto t = Operator::clamp();
  const auto image = default_image_oracle(t);
  const auto at_zero = openness_check(t, Vec{0, 0}, 0.25, 0.25, image);
  CHECK(at_zero.pass);
  CHECK(at_zero.targets_tested > 0);

  const auto at_24 = openness_check(t, Vec{2, 4}, 1.0, 0.1, image);
  CHECK_FALSE(at_24.pass);
  REQUIRE(at_24.counterexample);
  const Vec& y = *at_24.counterexample;
  CHECK(kPlane.order_norm(sub(y, Vec{2, 3})) < 0.1);
  CHECK(std::abs(y[1] - y[0] - 1.0) > 1e-9);

  const auto id = Operator::identity(kPlane);
  CHECK(openness_check(id, Vec{3, -1}, 0.5, 0.5, default_image_oracle(id)).pass);
  CHECK_THROWS_AS(openness_check(t, Vec{0, 0}, 0.0, 0.25, image), std::invalid_argument);
}

TEST_CASE("open ball image") {
  const auto id = Operator::identity(kPlane).declare_onto();
  CHECK(open_ball_image_check(id, 0.5, 200, default_image_oracle(id)).pass);

  const auto diag = Operator::linear_positive(kPlane, kPlane, {{1, 0}, {0, 1}}).declare_onto();
  CHECK(open_ball_image_check(diag, 1.0, 200, default_image_oracle(diag)).pass);

  const auto clamp = Operator::clamp().declare_onto();
  const auto r = open_ball_image_check(clamp, 3.0, 400, default_image_oracle(clamp));
  CHECK_FALSE(r.pass);
  REQUIRE(r.witness);
  const Vec* y = r.witness->find("y");
  REQUIRE(y != nullptr);
  CHECK(std::abs((*y)[1] - (*y)[0]) > 1.0);

  CHECK_THROWS_AS(open_ball_image_check(Operator::clamp(), 1.0, 10, default_image_oracle(clamp)),
                  std::invalid_argument);
}
