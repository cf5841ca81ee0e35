#include "ordunit/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

namespace ordunit {

namespace {

double value_tol(double a) { return kTol * std::max(1.0, std::abs(a)); }

bool same_line(std::span<const double> rep_a, std::span<const double> rep_b) {
  const double scale_ref = std::max({1.0, max_abs(rep_a), max_abs(rep_b)});
  return max_abs(sub(rep_a, rep_b)) <= kTol * scale_ref;
}

bool on_unit_line(std::span<const double> rep) { return max_abs(rep) <= kTol; }

std::string format_vec(std::span<const double> v) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
  out << ')';
  return out.str();
}

}  // namespace

LineCoordinates line_coordinates(const OrderedSpace& space, std::span<const double> x) {
  const Vec& u = space.unit();
  const double shift = dot(x, u) / dot(u, u);
  return {axpy(x, -shift, u), shift};
}

ASubspace::ASubspace(OrderedSpace space, const std::vector<Vec>& base_points)
    : space_(std::move(space)) {
  for (const auto& x : base_points) {
    require_dim(x, space_.dim(), "base point");
    Vec rep = line_coordinates(space_, x).rep;
    if (on_unit_line(rep)) continue;
    const bool seen = std::any_of(reps_.begin(), reps_.end(),
                                  [&](const Vec& r) { return same_line(r, rep); });
    if (!seen) reps_.push_back(std::move(rep));
  }
}

std::optional<std::size_t> ASubspace::line_of(std::span<const double> v) const {
  require_dim(v, space_.dim(), "span_contains");
  const Vec rep = line_coordinates(space_, v).rep;
  if (on_unit_line(rep)) return 0;
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    if (same_line(reps_[i], rep)) return i + 1;
  }
  return std::nullopt;
}

bool span_contains(const ASubspace& subspace, std::span<const double> v) {
  return subspace.contains(v);
}

PartialFunctional::Lines PartialFunctional::reduce(const OrderedSpace& space,
                                                   const std::vector<Vec>& base_points,
                                                   const Vec& values, double unit_value) {
  if (!(unit_value >= 0.0)) throw ExtensionError("unit value f(unit) must be nonnegative");
  if (base_points.size() != values.size()) {
    throw ExtensionError("one value per base point is required");
  }
  Lines lines;
  for (std::size_t i = 0; i < base_points.size(); ++i) {
    require_dim(base_points[i], space.dim(), "base point");
    auto [rep, shift] = line_coordinates(space, base_points[i]);
    const double g = values[i] - shift * unit_value;
    if (on_unit_line(rep)) {
      if (std::abs(g) > value_tol(values[i])) {
        throw ExtensionError("base point " + format_vec(base_points[i]) +
                             " lies on the unit line but its value disagrees with f(unit)");
      }
      continue;
    }
    auto it = std::find_if(lines.reps.begin(), lines.reps.end(),
                           [&](const Vec& r) { return same_line(r, rep); });
    if (it == lines.reps.end()) {
      lines.reps.push_back(std::move(rep));
      lines.values.push_back(g);
      continue;
    }
    const double existing = lines.values[static_cast<std::size_t>(it - lines.reps.begin())];
    if (std::abs(existing - g) > value_tol(g)) {
      throw ExtensionError("base point " + format_vec(base_points[i]) +
                           " repeats an earlier line with a different value");
    }
  }
  return lines;
}

PartialFunctional::PartialFunctional(OrderedSpace space, const std::vector<Vec>& base_points,
                                     const Vec& values, double unit_value)
    : PartialFunctional(space, reduce(space, base_points, values, unit_value), unit_value) {}

PartialFunctional::PartialFunctional(OrderedSpace space, Lines lines, double unit_value)
    : subspace_(std::move(space), lines.reps),
      values_(std::move(lines.values)),
      unit_value_(unit_value) {
  consistent_ = check_partial_consistency(*this).pass;
}

Vec PartialFunctional::line_point(std::size_t i) const {
  if (i == 0) return Vec(space().dim(), 0.0);
  return subspace_.base_points().at(i - 1);
}

double PartialFunctional::line_value(std::size_t i) const {
  return i == 0 ? 0.0 : values_.at(i - 1);
}

std::optional<double> PartialFunctional::value_at(std::span<const double> v) const {
  const auto line = subspace_.line_of(v);
  if (!line) return std::nullopt;
  const auto coords = line_coordinates(space(), v);
  return line_value(*line) + coords.shift * unit_value_;
}

PropertyReport check_partial_consistency(const PartialFunctional& pf, double tol) {
  const std::size_t lines = pf.line_count();
  const double c = pf.unit_value();
  double worst = 0.0;
  std::size_t checked = 0;
  for (std::size_t i = 0; i < lines; ++i) {
    const Vec xi = pf.line_point(i);
    const double gi = pf.line_value(i);
    for (std::size_t j = 0; j < lines; ++j) {
      if (i == j) continue;
      ++checked;
      const Vec xj = pf.line_point(j);
      const double gj = pf.line_value(j);
      // x_i + s*u <= x_j + t*u exactly when t - s >= threshold.
      const double threshold = pf.space().ray_thresholds(xj, xi).lambda_plus;
      const double defect = gi - (gj + threshold * c);
      worst = std::max(worst, defect);
      if (!(defect <= tol * std::max({1.0, std::abs(gi), std::abs(gj)}))) {
        Witness w;
        w.add("lower_line_point", xi).add("lower_value", {gi})
            .add("upper_line_point", xj).add("upper_value", {gj})
            .add("threshold", {threshold});
        w.note = "x_i <= x_j + threshold*unit but g_i > g_j + threshold*f(unit)";
        return PropertyReport::failed("partial_consistency", checked, defect, std::move(w));
      }
    }
  }
  return PropertyReport::passed("partial_consistency", checked, worst);
}

ExtensionInterval extension_interval(const PartialFunctional& pf, std::span<const double> y) {
  if (!pf.consistent()) throw ExtensionError("partial functional is not order-consistent");
  require_dim(y, pf.space().dim(), "extension_interval");
  const double c = pf.unit_value();
  ExtensionInterval out{-std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < pf.line_count(); ++i) {
    const auto r = pf.space().ray_thresholds(pf.line_point(i), y);
    const double g = pf.line_value(i);
    out.p_plus = std::min(out.p_plus, g + c * r.lambda_plus);
    out.p_minus = std::max(out.p_minus, g + c * r.lambda_minus);
  }
  return out;
}

ExtensionStep extend_step(const PartialFunctional& pf, std::span<const double> y,
                          ExtensionRule rule) {
  if (pf.subspace().contains(y)) {
    throw ExtensionError("point " + format_vec(y) + " already lies in the span");
  }
  const ExtensionInterval interval = extension_interval(pf, y);
  double p = 0.0;
  switch (rule.kind) {
    case ExtensionRule::Kind::Lower: p = interval.p_minus; break;
    case ExtensionRule::Kind::Upper: p = interval.p_plus; break;
    case ExtensionRule::Kind::Midpoint: p = interval.midpoint(); break;
    case ExtensionRule::Kind::Given:
      p = rule.value;
      if (p < interval.p_minus - value_tol(interval.p_minus) ||
          p > interval.p_plus + value_tol(interval.p_plus)) {
        std::ostringstream msg;
        msg << "value " << p << " lies outside the extension interval [" << interval.p_minus
            << ", " << interval.p_plus << "]";
        throw ExtensionError(msg.str());
      }
      break;
  }

  std::vector<Vec> points;
  Vec values = pf.values();
  for (std::size_t i = 1; i < pf.line_count(); ++i) points.push_back(pf.line_point(i));
  points.emplace_back(y.begin(), y.end());
  values.push_back(p);
  return {interval, p, PartialFunctional(pf.space(), points, values, pf.unit_value())};
}

PartialFunctional extend_one(const PartialFunctional& pf, std::span<const double> y,
                             ExtensionRule rule) {
  return extend_step(pf, y, rule).extended;
}

PartialFunctional extend_all(const PartialFunctional& pf, std::span<const Vec> ys,
                             ExtensionRule rule) {
  if (!pf.consistent()) throw ExtensionError("partial functional is not order-consistent");
  PartialFunctional current = pf;
  for (const auto& y : ys) {
    if (current.subspace().contains(y)) continue;
    current = extend_one(current, y, rule);
  }
  return current;
}

namespace {

class IntervalExtension final : public TotalExtension {
 public:
  IntervalExtension(PartialFunctional pf, ExtensionMode mode)
      : pf_(std::move(pf)), mode_(mode) {}

  double evaluate(std::span<const double> x) const override {
    const auto interval = extension_interval(pf_, x);
    return mode_ == ExtensionMode::Lower ? interval.p_minus : interval.midpoint();
  }

  std::string describe() const override {
    std::ostringstream out;
    out << (mode_ == ExtensionMode::Lower ? "lower" : "midpoint") << " extension over "
        << pf_.line_count() << " lines";
    return out.str();
  }

 private:
  PartialFunctional pf_;
  ExtensionMode mode_;
};

}  // namespace

Functional canonical_extension(const PartialFunctional& pf, ExtensionMode mode) {
  if (!pf.consistent()) throw ExtensionError("partial functional is not order-consistent");
  return Functional::extended(pf.space(), std::make_shared<IntervalExtension>(pf, mode));
}

}  // namespace ordunit
