#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ordunit/functional.hpp"
#include "ordunit/report.hpp"
#include "ordunit/sampling.hpp"
#include "ordunit/space.hpp"

namespace ordunit {

using Matrix = std::vector<Vec>;

/// A map E -> F between ordered spaces.
class Operator {
 public:
  struct LinearPositive {
    Matrix matrix;  // codomain dim rows, domain dim columns
  };
  /// The planar map that clamps x2 into [x1 - 1, x1 + 1].
  struct Clamp {};
  struct Stack {
    std::vector<Functional> components;
  };
  struct Custom {
    std::string name;
    std::function<Vec(std::span<const double>)> map;
  };
  using Kind = std::variant<LinearPositive, Clamp, Stack, Custom>;

  /// The cone-mapping property is checked on the domain's cone rows
  /// (orthant) or on seeded cone samples and recorded in maps_cone(); a
  /// matrix that fails it is still constructed so the checkers can falsify it.
  static Operator linear_positive(OrderedSpace domain, OrderedSpace codomain, Matrix matrix);
  static Operator identity(const OrderedSpace& space);
  /// Clamp on R^2 with the orthant and unit (1, 1) on both sides.
  static Operator clamp();
  static Operator stack(OrderedSpace domain, OrderedSpace codomain,
                        std::vector<Functional> components);
  /// Stack into the standard orthant R^k with unit (1,...,1).
  static Operator stack(std::vector<Functional> components);
  static Operator custom(OrderedSpace domain, OrderedSpace codomain, std::string name,
                         std::function<Vec(std::span<const double>)> map);

  Vec apply(std::span<const double> x) const;
  Vec operator()(std::span<const double> x) const { return apply(x); }

  const OrderedSpace& domain() const { return domain_; }
  const OrderedSpace& codomain() const { return codomain_; }
  const Kind& kind() const { return kind_; }
  std::string kind_name() const;
  /// T(1_E), cached at construction.
  const Vec& unit_image() const { return unit_image_; }
  bool maps_cone() const { return maps_cone_; }

  /// Surjectivity is declared by the caller, never inferred.
  bool declared_onto() const { return declared_onto_; }
  Operator declare_onto(bool onto = true) const;

 private:
  Operator(OrderedSpace domain, OrderedSpace codomain, Kind kind);

  OrderedSpace domain_;
  OrderedSpace codomain_;
  Kind kind_;
  Vec unit_image_;
  bool maps_cone_ = true;
  bool declared_onto_ = false;
};

class OperatorFamily {
 public:
  explicit OperatorFamily(std::vector<Operator> members);
  const std::vector<Operator>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const OrderedSpace& domain() const { return members_.front().domain(); }
  const OrderedSpace& codomain() const { return members_.front().codomain(); }

 private:
  std::vector<Operator> members_;
};

PropertyReport check_weakly_additive_op(const Operator& op,
                                        std::span<const ShiftSample> samples,
                                        double tol = kTol);
PropertyReport check_order_preserving_op(const Operator& op,
                                         std::span<const OrderedPair> pairs,
                                         double tol = kTol);

bool unit_image_interior(const Operator& op);

/// ||T(1_E)|| in the codomain order norm; the Lipschitz constant of a weakly
/// additive, order-preserving operator.
double operator_modulus(const Operator& op);

/// max over pairs of ||T(x) - T(y)|| - ||T(1_E)|| * ||x - y||.
double operator_lipschitz_defect(const Operator& op,
                                 std::span<const std::pair<Vec, Vec>> pairs);

struct EquicontinuityModulus {
  bool bounded = true;
  /// sup over the family of ||T(1_E)||.
  double orbit_bound = 0.0;
  std::size_t worst_member = 0;
  double cap = 0.0;

  /// delta(eps) = eps / orbit_bound (infinite when every T(1_E) = 0).
  /// Throws std::domain_error if the family is unbounded.
  double delta(double eps) const;
};

inline constexpr double kDefaultOrbitCap = 1e6;

EquicontinuityModulus equicontinuity_modulus(const OperatorFamily& family,
                                             double cap = kDefaultOrbitCap);

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, Vec probe)
      : std::runtime_error(what), probe_(std::move(probe)) {}
  const Vec& probe() const { return probe_; }

 private:
  Vec probe_;
};

struct PointwiseLimit {
  Operator limit;
  CheckSuite report;
};

/// Tabulates lim T_n on the probe set (the unit is always added as a probe)
/// and completes it along the unit line: T(x) = T(p) + (s_x - s_p) T(1_E)
/// for the probe p whose unit-line class is nearest to x. Convergence is
/// judged by the last two members agreeing within tol on every probe;
/// otherwise DivergenceError names the offending probe.
PointwiseLimit pointwise_limit(std::span<const Operator> sequence, std::span<const Vec> probes,
                               double tol = 1e-6);

/// (x, T(x)) + lambda (1_E, T(1_E)) stays on the graph of T.
PropertyReport graph_check(const Operator& op, std::span<const Vec> points,
                           std::span<const double> lambdas, double tol = kTol);

using ImageOracle = std::function<bool(std::span<const double>)>;

/// Exact membership in T(E) for Clamp and LinearPositive; the whole
/// codomain for other kinds.
ImageOracle default_image_oracle(const Operator& op);

struct SearchOptions {
  std::size_t budget = 1000;   // evaluations per target
  std::size_t targets = 64;    // target points sampled in the image ball
  std::uint64_t seed = 1;
  double tol = kTol;           // accepted residual ||T(x) - y||
};

struct OpennessVerdict {
  bool pass = true;
  std::optional<Vec> counterexample;
  Vec target_center;
  double target_radius = 0.0;
  Vec source_center;
  double source_radius = 0.0;
  std::size_t targets_tested = 0;
  std::size_t evaluations = 0;
  std::size_t budget_per_target = 0;
  /// Failures mean the search was exhausted, not that no preimage exists.
  std::string note;
};

/// Searches x in U(x0, eps) with T(x) = y for sampled y in V(T(x0), delta)
/// intersected with T(E). Openness is judged relative to the image.
OpennessVerdict openness_check(const Operator& op, std::span<const double> x0, double eps,
                               double delta, const ImageOracle& image,
                               const SearchOptions& options = {});

/// For onto T with 1_F = T(1_E): T(U(0, eps)) lies in U(0, eps), and sampled
/// points of U(0, eps) have preimages in U(0, eps).
PropertyReport open_ball_image_check(const Operator& op, double eps, std::size_t samples,
                                     const ImageOracle& image,
                                     const SearchOptions& options = {});

/// Seeded multi-start pattern search for x in U(center, radius) minimizing
/// |T(x) - y|^2. Returns the best point found and its order-norm residual.
struct PreimageSearch {
  Vec best;
  double residual;
  std::size_t evaluations;
};
PreimageSearch search_preimage(const Operator& op, std::span<const double> y,
                               std::span<const double> center, double radius,
                               std::size_t budget, double tol, Sampler& sampler);

}  // namespace ordunit
