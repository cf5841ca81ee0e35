#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>

#include "ordunit/capacity.hpp"
#include "ordunit/report.hpp"
#include "ordunit/sampling.hpp"
#include "ordunit/space.hpp"

namespace ordunit {

/// Total evaluation rule for functionals produced by the extension engine.
class TotalExtension {
 public:
  virtual ~TotalExtension() = default;
  virtual double evaluate(std::span<const double> x) const = 0;
  virtual std::string describe() const = 0;
};

/// A map E -> R over a fixed ordered space.
///
/// Choquet and max-plus kinds read coordinates in units of the order unit,
/// x_i / u_i, which makes them weakly additive for any unit with positive
/// coordinates and reduces to the plain formulas for u = (1,...,1).
class Functional {
 public:
  struct Linear {
    Vec weights;
  };
  struct SqrtGap {};
  struct Choquet {
    Capacity capacity;
  };
  struct MaxPlus {
    Vec weights;
  };
  struct Extended {
    std::shared_ptr<const TotalExtension> rule;
  };
  struct Custom {
    std::string name;
    std::function<double(std::span<const double>)> eval;
  };
  using Kind = std::variant<Linear, SqrtGap, Choquet, MaxPlus, Extended, Custom>;

  static Functional linear(OrderedSpace space, Vec weights);
  static Functional sqrt_gap(OrderedSpace space);
  static Functional choquet(OrderedSpace space, Capacity capacity);
  static Functional maxplus(OrderedSpace space, Vec weights);
  static Functional extended(OrderedSpace space, std::shared_ptr<const TotalExtension> rule);
  static Functional custom(OrderedSpace space, std::string name,
                           std::function<double(std::span<const double>)> eval);

  double operator()(std::span<const double> x) const { return evaluate(x); }
  double evaluate(std::span<const double> x) const;

  const OrderedSpace& space() const { return space_; }
  const Kind& kind() const { return kind_; }
  std::string kind_name() const;
  /// f(unit), cached at construction.
  double unit_value() const { return unit_value_; }

 private:
  Functional(OrderedSpace space, Kind kind);
  Vec in_unit_coordinates(std::span<const double> x) const;

  OrderedSpace space_;
  Kind kind_;
  double unit_value_ = 0.0;
};

PropertyReport check_weak_additivity(const Functional& f,
                                     std::span<const ShiftSample> samples,
                                     double tol = kTol);
PropertyReport check_order_preserving(const Functional& f,
                                      std::span<const OrderedPair> pairs,
                                      double tol = kTol);
PropertyReport check_normed(const Functional& f, double tol = kTol);
PropertyReport check_positive(const Functional& f, std::span<const Vec> cone_samples,
                              double tol = kTol);

/// sup{|f(x)| : ||x|| < 1}, which equals f(unit) for weakly additive
/// order-preserving f.
double bound(const Functional& f);

/// max over pairs of |f(z) - f(y)| - f(unit) * ||z - y||. Nonpositive (up to
/// rounding) for weakly additive order-preserving f.
double lipschitz_defect(const Functional& f,
                        std::span<const std::pair<Vec, Vec>> pairs);

/// Every pair (x, y) of grid points with x <= y; grid is [lo, hi]^dim with
/// the given step. Meant for dim <= 3.
std::vector<OrderedPair> grid_comparable_pairs(const OrderedSpace& space, double lo,
                                               double hi, double step);

}  // namespace ordunit
