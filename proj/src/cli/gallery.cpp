// Built-in fixtures with their expected verdicts. A section passes when the
// observed verdict matches the expected one, so an expected violation that is
// reproduced counts as a pass. The seed only changes which samples are drawn.

#include <algorithm>
#include <cmath>
#include <functional>

#include "common.hpp"
#include "ordunit/cli.hpp"
#include "ordunit/dual.hpp"
#include "ordunit/extension.hpp"
#include "ordunit/functional.hpp"
#include "ordunit/operator.hpp"
#include "ordunit/sampling.hpp"

namespace ordunit::cli {

using io::json;
using detail::expect;
using detail::value_check;

namespace {

const OrderedSpace kPlane = OrderedSpace::standard(2);

bool same_point(const Vec* v, const Vec& want) {
  return v != nullptr && v->size() == want.size() &&
         max_abs(sub(*v, want)) <= 1e-15;
}

void sqrt_gap_items(Report& r, Sampler& s, std::size_t samples) {
  const auto f = Functional::sqrt_gap(kPlane);
  const Vec half{0.5, 0.5}, quarter{0.25, 0.5};
  r.sections.push_back(expect("sqrt_gap.values", true,
                              {value_check("f(1/2,1/2)", f(half), 0.5, 1e-12),
                               value_check("f(1/4,1/2)", f(quarter), 0.625, 1e-12)}));
  r.sections.push_back(expect("sqrt_gap.weak_additivity", true,
                              {check_weak_additivity(f, s.shift_samples(kPlane, samples))}));
  r.sections.push_back(expect("sqrt_gap.positive", true,
                              {check_positive(f, s.cone_points(kPlane, samples))}));

  std::vector<OrderedPair> pairs{{quarter, half}};
  for (auto& p : s.comparable_pairs(kPlane, samples)) pairs.push_back(std::move(p));
  auto op = check_order_preserving(f, pairs);
  const bool exact = op.witness && same_point(op.witness->find("x"), quarter) &&
                     same_point(op.witness->find("y"), half);
  r.sections.push_back(expect("sqrt_gap.order_preserving", false, {std::move(op)},
                              json{{"witness_pair", {io::vector(quarter), io::vector(half)}}},
                              exact));
}

void choquet_items(Report& r, const RunConfig& c) {
  const auto f = Functional::choquet(kPlane, Capacity(2, {0, 0.3, 0.6, 1}));
  const Vec x{1, 2};
  auto suite = verify_in_EO(DualPoint(f), std::min<std::size_t>(c.samples, 4096), c.seed);
  suite.parts.push_back(value_check("f(1,2)", f(x), 1.6, 1e-12));
  r.sections.push_back(expect("choquet.membership", true, std::move(suite.parts)));
}

void clamp_items(Report& r, Sampler& s, const RunConfig& c) {
  const auto t = Operator::clamp();
  std::vector<PropertyReport> values;
  const std::vector<std::pair<Vec, Vec>> table{{{2, 4}, {2, 3}}, {{0, 0}, {0, 0}}, {{5, 3}, {5, 4}}};
  double worst = 0.0;
  for (const auto& [x, want] : table) worst = std::max(worst, max_abs(sub(t(x), want)));
  values.push_back(value_check("apply_table", worst, 0.0, 0.0));
  r.sections.push_back(expect("clamp.apply", true, std::move(values)));

  r.sections.push_back(expect("clamp.weak_additivity", true,
                              {check_weakly_additive_op(t, s.shift_samples(kPlane, c.samples))}));
  r.sections.push_back(expect("clamp.order_preserving", true,
                              {check_order_preserving_op(t, s.comparable_pairs(kPlane, c.samples))}));
  std::vector<Vec> points;
  for (int i = 0; i < 256; ++i) points.push_back(s.box(2, 4.0));
  const Vec lambdas{-2, -1, 0, 1, 2};
  r.sections.push_back(expect("clamp.graph", true, {graph_check(t, points, lambdas)}));

  r.sections.push_back(expect(
      "clamp.continuity", true,
      {value_check("lipschitz_defect_nonpositive",
                   std::max(0.0, operator_lipschitz_defect(t, s.arbitrary_pairs(kPlane, c.samples))),
                   0.0, kTol)},
      json{{"modulus", operator_modulus(t)}}));

  SearchOptions opts;
  opts.seed = c.seed;
  const auto image = default_image_oracle(t);
  const Vec origin{0, 0}, corner{2, 4};
  const auto at_origin = openness_check(t, origin, 0.25, 0.25, image, opts);
  r.sections.push_back(expect("clamp.openness_at_origin", true,
                              {detail::openness_report(at_origin, t)},
                              detail::verdict_payload(at_origin)));

  const auto at_corner = openness_check(t, corner, 1.0, 0.1, image, opts);
  bool located = false;
  if (at_corner.counterexample) {
    const Vec& y = *at_corner.counterexample;
    located = kPlane.order_norm(sub(y, Vec{2, 3})) < 0.1 && std::abs(y[1] - y[0] - 1.0) > kTol;
  }
  r.sections.push_back(expect("clamp.openness_at_(2,4)", false,
                              {detail::openness_report(at_corner, t)},
                              detail::verdict_payload(at_corner), located));

  const auto onto = t.declare_onto();
  r.sections.push_back(expect("clamp.declared_onto", false,
                              {open_ball_image_check(onto, 3.0, 256, image, opts)}));
}

// Bands {(x1, x1 + a)} of R^2, classified by membership of the offset a.
struct Band {
  std::string name;
  std::function<bool(double)> offset_in;
};

bool band_contains(const Band& b, std::span<const double> x) { return b.offset_in(x[1] - x[0]); }

// Coarse dyadic values keep x1 + a - x1 == a exact at the band edges.
double dyadic(double v) { return std::round(v * 1024.0) / 1024.0; }

PropertyReport a_subspace_check(const Band& b, Sampler& s, const std::vector<Vec>& members) {
  std::size_t n = 0;
  for (const auto& x : members) {
    for (int k = 0; k < 8; ++k) {
      const Vec moved = axpy(x, dyadic(s.uniform(-10, 10)), kPlane.unit());
      ++n;
      if (!band_contains(b, moved)) {
        Witness w;
        w.add("x", x).add("x + t*unit", moved);
        w.note = "shift along the unit leaves the set";
        return PropertyReport::failed("unit_shift_invariant", n, 1.0, std::move(w));
      }
    }
  }
  return PropertyReport::passed("unit_shift_invariant", n, 0.0);
}

// Every sampled member has a neighbourhood U(x, r) inside the set for some
// r = 2^-k, judged on sampled ball points.
PropertyReport open_check(const Band& b, Sampler& s, const std::vector<Vec>& members) {
  std::size_t n = 0;
  for (const auto& x : members) {
    bool found = false;
    for (int k = 1; k <= 30 && !found; ++k) {
      const double r = std::ldexp(1.0, -k);
      bool inside = true;
      for (int i = 0; i < 32 && inside; ++i) {
        ++n;
        inside = band_contains(b, s.ball_point(kPlane, x, r));
      }
      found = inside;
    }
    if (!found) {
      Witness w;
      w.add("x", x);
      w.note = "no sampled neighbourhood of x down to radius 2^-30 stays in the set";
      return PropertyReport::failed("open", n, 1.0, std::move(w));
    }
  }
  return PropertyReport::passed("open", n, 0.0);
}

// Members approaching the edges a = +-1 from inside; their limits must stay
// in the set, and sampled outside points must keep a neighbourhood outside.
PropertyReport closed_check(const Band& b, Sampler& s) {
  std::size_t n = 0;
  for (int rep = 0; rep < 64; ++rep) {
    const double x1 = dyadic(s.uniform(-5, 5));
    const double side = rep % 2 ? 1.0 : -1.0;
    bool members = true;
    for (int k = 1; k <= 40; ++k) members = members && b.offset_in(side * (1.0 - std::ldexp(1.0, -k)));
    if (!members) continue;
    const Vec limit{x1, x1 + side};
    ++n;
    if (!band_contains(b, limit)) {
      Witness w;
      w.add("limit", limit).add("approach", {x1, x1 + side * (1.0 - std::ldexp(1.0, -20))});
      w.note = "members of the set converge to a point outside it";
      return PropertyReport::failed("closed", n, 1.0, std::move(w));
    }
    const double out_a = side * (1.0 + s.uniform(0.01, 2.0));
    const Vec outside{x1, x1 + out_a};
    const double r = 0.5 * (std::abs(out_a) - 1.0);
    for (int i = 0; i < 32; ++i) {
      ++n;
      const Vec z = s.ball_point(kPlane, outside, r);
      if (band_contains(b, z)) {
        Witness w;
        w.add("outside", outside).add("z", z);
        w.note = "complement point without a neighbourhood disjoint from the set";
        return PropertyReport::failed("closed", n, 1.0, std::move(w));
      }
    }
  }
  return PropertyReport::passed("closed", n, 0.0);
}

std::vector<Vec> band_members(Sampler& s, bool include_edges) {
  std::vector<Vec> out;
  for (int i = 0; i < 64; ++i) {
    const double x1 = dyadic(s.uniform(-5, 5));
    double a = s.uniform(-1, 1);
    if (include_edges && i % 4 == 0) a = i % 8 == 0 ? 1.0 : -1.0;
    out.push_back({x1, x1 + a});
  }
  return out;
}

void subspace_items(Report& r, Sampler& s) {
  const Band open_band{"B", [](double a) { return -1.0 < a && a < 1.0; }};
  const Band closed_band{"D", [](double a) { return -1.0 <= a && a <= 1.0; }};

  const auto b_members = band_members(s, false);
  r.sections.push_back(expect("subspace.B.open", true,
                              {a_subspace_check(open_band, s, b_members), open_check(open_band, s, b_members)}));
  r.sections.push_back(expect("subspace.B.closed", false, {closed_check(open_band, s)}));

  const auto d_members = band_members(s, true);
  r.sections.push_back(expect("subspace.D.closed", true,
                              {a_subspace_check(closed_band, s, d_members), closed_check(closed_band, s)}));
  r.sections.push_back(expect("subspace.D.open", false, {open_check(closed_band, s, d_members)}));

  // C: rational offsets. Approximate sampled points by points of C with
  // dyadic offsets round(a 2^j) / 2^j and track the worst order-norm distance.
  constexpr double kDensityTol = 1e-6;
  std::vector<Vec> points;
  for (int i = 0; i < 256; ++i) points.push_back(s.box(2, 5.0));
  json distances = json::array();
  double previous = std::numeric_limits<double>::infinity();
  bool nonincreasing = true;
  double last = 0.0;
  for (int j = 0; j <= 24; ++j) {
    const double scale_j = std::ldexp(1.0, j);
    double worst = 0.0;
    for (const auto& x : points) {
      const double a = x[1] - x[0];
      const Vec approx{x[0], x[0] + std::round(a * scale_j) / scale_j};
      worst = std::max(worst, kPlane.order_norm(sub(x, approx)));
    }
    distances.push_back(worst);
    nonincreasing = nonincreasing && worst <= previous;
    previous = worst;
    last = worst;
  }
  std::vector<PropertyReport> dense;
  dense.push_back(value_check("approximation_distance_below_tol", std::max(0.0, last - kDensityTol), 0.0, 0.0));
  if (nonincreasing) {
    dense.push_back(PropertyReport::passed("distance_nonincreasing", distances.size(), 0.0));
  } else {
    Witness w;
    w.note = "approximation distance grew when refining the offsets";
    dense.push_back(PropertyReport::failed("distance_nonincreasing", distances.size(), 1.0, std::move(w)));
  }
  r.sections.push_back(expect("subspace.C.dense", true, std::move(dense),
                              json{{"levels", "offsets k / 2^j, j = 0..24"}, {"worst_distance", distances}}));
}

void extension_items(Report& r, Sampler& s, const RunConfig& c) {
  const PartialFunctional empty(kPlane, {}, {}, 1.0);
  const Vec y{1, 0};
  const auto iv = extension_interval(empty, y);
  const auto step = extend_step(empty, y, ExtensionRule::midpoint());
  r.sections.push_back(expect("extension.interval", true,
                              {value_check("p_minus", iv.p_minus, 0.0, 1e-12),
                               value_check("p_plus", iv.p_plus, 1.0, 1e-12),
                               value_check("midpoint_value", step.chosen, 0.5, 1e-12)},
                              json{{"target", io::vector(y)}, {"interval", {iv.p_minus, iv.p_plus}}}));

  const auto e3 = OrderedSpace::standard(3);
  const PartialFunctional empty3(e3, {}, {}, 1.0);
  const Vec a{0, 0, 1}, b{0, 1, 1};
  const std::vector<Vec> ab{a, b}, ba{b, a};
  const auto first = extend_all(empty3, ab, ExtensionRule::midpoint());
  const auto second = extend_all(empty3, ba, ExtensionRule::midpoint());
  const double fa = *first.value_at(a), fb = *first.value_at(b);
  const double sa = *second.value_at(a), sb = *second.value_at(b);
  r.sections.push_back(expect(
      "extension.order_dependence", true,
      {check_partial_consistency(first), check_partial_consistency(second),
       value_check("values_differ", std::abs(fa - sa) > 1e-9 ? 1.0 : 0.0, 1.0, 0.0)},
      json{{"order_ab", {fa, fb}}, {"order_ba", {sa, sb}}}));

  const PartialFunctional pf(kPlane, {{1, 0}, {-1, 2}}, {0.6, 1.2}, 1.0);
  std::vector<PropertyReport> checks;
  for (auto mode : {ExtensionMode::Lower, ExtensionMode::Midpoint}) {
    const auto f = canonical_extension(pf, mode);
    checks.push_back(check_weak_additivity(f, s.shift_samples(kPlane, std::min<std::size_t>(c.samples, 2048))));
    checks.push_back(check_order_preserving(f, s.comparable_pairs(kPlane, std::min<std::size_t>(c.samples, 2048))));
    checks.push_back(value_check("reproduces_base", std::max(std::abs(f(Vec{1, 0}) - 0.6),
                                                             std::abs(f(Vec{-1, 2}) - 1.2)),
                                 0.0, 1e-12));
  }
  r.sections.push_back(expect("extension.canonical", true, std::move(checks)));
}

void banach_steinhaus_items(Report& r, Sampler& s) {
  std::vector<Operator> stacks;
  for (int i = 0; i < 10; ++i) {
    stacks.push_back(Operator::stack({Functional::choquet(kPlane, random_monotone_capacity(2, s)),
                                      Functional::choquet(kPlane, random_monotone_capacity(2, s))}));
  }
  const auto m = equicontinuity_modulus(OperatorFamily(stacks));
  const double eps = 0.1;
  const double delta = m.delta(eps);
  double worst = 0.0;
  std::size_t n = 0;
  for (int i = 0; i < 512; ++i) {
    const Vec x = s.box(2, 3.0);
    const Vec y = s.ball_point(kPlane, x, delta);
    for (const auto& t : stacks) {
      ++n;
      worst = std::max(worst, kPlane.order_norm(sub(t(x), t(y))) - eps);
    }
  }
  std::vector<PropertyReport> checks{value_check("delta(0.1)", delta, eps, 1e-12)};
  if (worst < kTol) {
    checks.push_back(PropertyReport::passed("equicontinuous_on_samples", n, worst));
  } else {
    Witness w;
    w.note = "a sampled pair within delta moved by at least eps";
    checks.push_back(PropertyReport::failed("equicontinuous_on_samples", n, worst, std::move(w)));
  }
  r.sections.push_back(expect("equicontinuity.choquet_stacks", true, std::move(checks),
                              json{{"orbit_bound", m.orbit_bound}}));

  std::vector<Operator> growing;
  for (int k = 1; k <= 12; ++k) {
    const double n_k = std::pow(10.0, k);
    growing.push_back(Operator::linear_positive(kPlane, kPlane, {{n_k, 0}, {0, n_k}}));
  }
  const auto g = equicontinuity_modulus(OperatorFamily(growing));
  PropertyReport bounded = PropertyReport::passed("bounded_orbit", growing.size(), g.orbit_bound);
  if (!g.bounded) {
    Witness w;
    w.add("orbit_bound", {g.orbit_bound}).add("cap", {g.cap});
    w.note = "||T_n(1)|| exceeds the cap: no uniform modulus";
    bounded = PropertyReport::failed("bounded_orbit", growing.size(), g.orbit_bound, std::move(w));
  }
  r.sections.push_back(expect("equicontinuity.scaled_identities", false, {std::move(bounded)}));
}

void compactness_items(Report& r, const RunConfig& c) {
  std::vector<Capacity> caps;
  for (int k = 0; k < 20; ++k) caps.emplace_back(2, Vec{0, k % 2 == 0 ? 0.6 : 0.4, 0.7, 1});
  CompactnessOptions opts;
  opts.seed = c.seed;
  opts.membership_samples = std::min<std::size_t>(c.samples, 2048);
  const auto lim = subsequence_limit(caps, kPlane, opts);
  const bool even = std::all_of(lim.indices.begin(), lim.indices.end(), [](std::size_t i) { return i % 2 == 0; });
  auto parts = lim.report.parts;
  parts.push_back(value_check("limit_v({1})", lim.limit_capacity(0b01), 0.6, 1e-12));
  r.sections.push_back(expect("compactness.oscillating", true, std::move(parts),
                              json{{"indices", lim.indices}}, even));
}

}  // namespace

Report run_gallery(const RunConfig& c) {
  Report r;
  r.command = "gallery";
  r.config = json{{"seed", c.seed}, {"samples", c.samples}};
  Sampler s(c.seed);
  sqrt_gap_items(r, s, c.samples);
  choquet_items(r, c);
  clamp_items(r, s, c);
  subspace_items(r, s);
  extension_items(r, s, c);
  banach_steinhaus_items(r, s);
  compactness_items(r, c);
  return r;
}

}  // namespace ordunit::cli
