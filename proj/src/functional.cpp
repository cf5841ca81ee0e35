#include "ordunit/functional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ordunit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive_unit(const OrderedSpace& space, const char* kind) {
  for (double u : space.unit()) {
    if (!(u > 0.0)) {
      throw std::invalid_argument(std::string(kind) +
                                  " functional needs an order unit with positive coordinates");
    }
  }
}

}  // namespace

Functional::Functional(OrderedSpace space, Kind kind)
    : space_(std::move(space)), kind_(std::move(kind)) {
  unit_value_ = evaluate(space_.unit());
}

Functional Functional::linear(OrderedSpace space, Vec weights) {
  require_dim(weights, space.dim(), "linear weights");
  return Functional(std::move(space), Linear{std::move(weights)});
}

Functional Functional::sqrt_gap(OrderedSpace space) {
  if (space.dim() != 2) throw DimensionError("sqrt_gap functional lives on R^2");
  return Functional(std::move(space), SqrtGap{});
}

Functional Functional::choquet(OrderedSpace space, Capacity capacity) {
  if (capacity.ground_size() != space.dim()) {
    throw DimensionError("capacity ground size must equal the space dimension");
  }
  require_positive_unit(space, "choquet");
  return Functional(std::move(space), Choquet{std::move(capacity)});
}

Functional Functional::maxplus(OrderedSpace space, Vec weights) {
  if (weights.empty()) throw std::invalid_argument("max-plus weights must be nonempty");
  require_dim(weights, space.dim(), "max-plus weights");
  require_positive_unit(space, "max-plus");
  return Functional(std::move(space), MaxPlus{std::move(weights)});
}

Functional Functional::extended(OrderedSpace space, std::shared_ptr<const TotalExtension> rule) {
  if (!rule) throw std::invalid_argument("extended functional needs a rule");
  return Functional(std::move(space), Extended{std::move(rule)});
}

Functional Functional::custom(OrderedSpace space, std::string name,
                              std::function<double(std::span<const double>)> eval) {
  if (!eval) throw std::invalid_argument("custom functional needs an evaluation hook");
  return Functional(std::move(space), Custom{std::move(name), std::move(eval)});
}

Vec Functional::in_unit_coordinates(std::span<const double> x) const {
  Vec y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] / space_.unit()[i];
  return y;
}

double Functional::evaluate(std::span<const double> x) const {
  require_dim(x, space_.dim(), "evaluate");
  return std::visit(
      overloaded{
          [&](const Linear& k) { return dot(k.weights, x); },
          [&](const SqrtGap&) { return ordunit::sqrt_gap(x); },
          [&](const Choquet& k) { return ordunit::choquet(k.capacity, in_unit_coordinates(x)); },
          [&](const MaxPlus& k) { return ordunit::maxplus(k.weights, in_unit_coordinates(x)); },
          [&](const Extended& k) { return k.rule->evaluate(x); },
          [&](const Custom& k) { return k.eval(x); },
      },
      kind_);
}

std::string Functional::kind_name() const {
  return std::visit(overloaded{
                        [](const Linear&) { return std::string("linear"); },
                        [](const SqrtGap&) { return std::string("sqrt_gap"); },
                        [](const Choquet&) { return std::string("choquet"); },
                        [](const MaxPlus&) { return std::string("maxplus"); },
                        [](const Extended&) { return std::string("extended"); },
                        [](const Custom& k) { return "custom:" + k.name; },
                    },
                    kind_);
}

PropertyReport check_weak_additivity(const Functional& f,
                                     std::span<const ShiftSample> samples, double tol) {
  const std::string name = "weak_additivity";
  const Vec& unit = f.space().unit();
  double worst = 0.0;
  for (const auto& s : samples) {
    const Vec shifted = axpy(s.x, s.lambda, unit);
    const double fx = f(s.x);
    const double fs = f(shifted);
    const double defect = std::abs(fs - fx - s.lambda * f.unit_value());
    worst = std::max(worst, defect);
    if (!(defect <= tol)) {
      Witness w;
      w.add("x", s.x).add("lambda", {s.lambda}).add("f(x)", {fx})
          .add("f(x+lambda*unit)", {fs}).add("f(unit)", {f.unit_value()});
      return PropertyReport::failed(name, samples.size(), defect, std::move(w));
    }
  }
  return PropertyReport::passed(name, samples.size(), worst);
}

PropertyReport check_order_preserving(const Functional& f,
                                      std::span<const OrderedPair> pairs, double tol) {
  const std::string name = "order_preserving";
  double worst = 0.0;
  for (const auto& p : pairs) {
    if (!f.space().leq(p.lo, p.hi)) {
      throw std::invalid_argument("check_order_preserving: pair is not ordered");
    }
    const double fx = f(p.lo);
    const double fy = f(p.hi);
    const double defect = fx - fy;
    worst = std::max(worst, defect);
    if (!(defect <= tol)) {
      Witness w;
      w.add("x", p.lo).add("y", p.hi).add("f(x)", {fx}).add("f(y)", {fy});
      w.note = "x <= y but f(x) > f(y)";
      return PropertyReport::failed(name, pairs.size(), defect, std::move(w));
    }
  }
  return PropertyReport::passed(name, pairs.size(), worst);
}

PropertyReport check_normed(const Functional& f, double tol) {
  const double defect = std::abs(f.unit_value() - 1.0);
  if (defect <= tol) return PropertyReport::passed("normed", 1, defect);
  Witness w;
  w.add("unit", f.space().unit()).add("f(unit)", {f.unit_value()});
  return PropertyReport::failed("normed", 1, defect, std::move(w));
}

PropertyReport check_positive(const Functional& f, std::span<const Vec> cone_samples,
                              double tol) {
  double worst = 0.0;
  for (const auto& x : cone_samples) {
    const double fx = f(x);
    worst = std::max(worst, -fx);
    if (!(fx >= -tol)) {
      Witness w;
      w.add("x", x).add("f(x)", {fx});
      return PropertyReport::failed("positive", cone_samples.size(), -fx, std::move(w));
    }
  }
  return PropertyReport::passed("positive", cone_samples.size(), worst);
}

double bound(const Functional& f) { return f.unit_value(); }

double lipschitz_defect(const Functional& f, std::span<const std::pair<Vec, Vec>> pairs) {
  if (pairs.empty()) return 0.0;
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& [z, y] : pairs) {
    const double gap = std::abs(f(z) - f(y));
    worst = std::max(worst, gap - f.unit_value() * f.space().order_norm(sub(z, y)));
  }
  return worst;
}

std::vector<OrderedPair> grid_comparable_pairs(const OrderedSpace& space, double lo,
                                               double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw std::invalid_argument("invalid grid");
  const auto ticks = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  const std::size_t dim = space.dim();
  std::size_t count = 1;
  for (std::size_t d = 0; d < dim; ++d) count *= ticks;

  std::vector<Vec> points;
  points.reserve(count);
  for (std::size_t id = 0; id < count; ++id) {
    Vec p(dim);
    std::size_t rest = id;
    for (std::size_t d = dim; d-- > 0;) {
      p[d] = lo + step * static_cast<double>(rest % ticks);
      rest /= ticks;
    }
    points.push_back(std::move(p));
  }

  std::vector<OrderedPair> pairs;
  for (const auto& x : points) {
    for (const auto& y : points) {
      if (space.leq(x, y)) pairs.push_back({x, y});
    }
  }
  return pairs;
}

}  // namespace ordunit
