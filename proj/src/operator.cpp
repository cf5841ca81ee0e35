#include "ordunit/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "ordunit/extension.hpp"

namespace ordunit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Vec mat_vec(const Matrix& m, std::span<const double> x) {
  Vec out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], x);
  return out;
}

Vec column(const Matrix& m, std::size_t j) {
  Vec c(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) c[i] = m[i][j];
  return c;
}

// Smallest a_k . d over the codomain rows, scaled by the unit level.
double worst_cone_defect(const OrderedSpace& space, std::span<const double> d) {
  double worst = 0.0;
  for (double r : space.unit_ratios(d)) worst = std::max(worst, -r);
  return worst;
}

}  // namespace

Operator::Operator(OrderedSpace domain, OrderedSpace codomain, Kind kind)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), kind_(std::move(kind)) {
  unit_image_ = apply(domain_.unit());
}

Operator Operator::linear_positive(OrderedSpace domain, OrderedSpace codomain, Matrix matrix) {
  if (matrix.size() != codomain.dim()) {
    throw DimensionError("linear operator needs one matrix row per codomain coordinate");
  }
  for (const auto& row : matrix) require_dim(row, domain.dim(), "matrix row");

  bool maps_cone = true;
  if (domain.cone().is_orthant()) {
    for (std::size_t j = 0; j < domain.dim() && maps_cone; ++j) {
      maps_cone = codomain.cone_contains(column(matrix, j));
    }
  } else {
    Sampler sampler(17);
    for (const auto& x : sampler.cone_points(domain, 256)) {
      if (!codomain.cone_contains(mat_vec(matrix, x))) {
        maps_cone = false;
        break;
      }
    }
  }
  Operator op(std::move(domain), std::move(codomain), LinearPositive{std::move(matrix)});
  op.maps_cone_ = maps_cone;
  return op;
}

Operator Operator::identity(const OrderedSpace& space) {
  Matrix m(space.dim(), Vec(space.dim(), 0.0));
  for (std::size_t i = 0; i < space.dim(); ++i) m[i][i] = 1.0;
  return linear_positive(space, space, std::move(m));
}

Operator Operator::clamp() {
  return Operator(OrderedSpace::standard(2), OrderedSpace::standard(2), Clamp{});
}

Operator Operator::stack(OrderedSpace domain, OrderedSpace codomain,
                         std::vector<Functional> components) {
  if (components.size() != codomain.dim()) {
    throw DimensionError("stack needs one functional per codomain coordinate");
  }
  for (const auto& f : components) {
    if (f.space().dim() != domain.dim()) {
      throw DimensionError("stacked functional lives on a different space");
    }
  }
  return Operator(std::move(domain), std::move(codomain), Stack{std::move(components)});
}

Operator Operator::stack(std::vector<Functional> components) {
  if (components.empty()) throw std::invalid_argument("stack needs at least one functional");
  OrderedSpace domain = components.front().space();
  OrderedSpace codomain = OrderedSpace::standard(components.size());
  return stack(std::move(domain), std::move(codomain), std::move(components));
}

Operator Operator::custom(OrderedSpace domain, OrderedSpace codomain, std::string name,
                          std::function<Vec(std::span<const double>)> map) {
  if (!map) throw std::invalid_argument("custom operator needs a map");
  return Operator(std::move(domain), std::move(codomain), Custom{std::move(name), std::move(map)});
}

Vec Operator::apply(std::span<const double> x) const {
  require_dim(x, domain_.dim(), "apply");
  Vec y = std::visit(
      overloaded{
          [&](const LinearPositive& k) { return mat_vec(k.matrix, x); },
          [&](const Clamp&) {
            if (x[1] <= x[0] - 1.0) return Vec{x[0], x[0] - 1.0};
            if (x[1] >= x[0] + 1.0) return Vec{x[0], x[0] + 1.0};
            return Vec{x[0], x[1]};
          },
          [&](const Stack& k) {
            Vec out;
            out.reserve(k.components.size());
            for (const auto& f : k.components) out.push_back(f(x));
            return out;
          },
          [&](const Custom& k) { return k.map(x); },
      },
      kind_);
  require_dim(y, codomain_.dim(), "operator image");
  return y;
}

std::string Operator::kind_name() const {
  return std::visit(overloaded{
                        [](const LinearPositive&) { return std::string("linear_positive"); },
                        [](const Clamp&) { return std::string("clamp"); },
                        [](const Stack&) { return std::string("stack"); },
                        [](const Custom& k) { return "custom:" + k.name; },
                    },
                    kind_);
}

Operator Operator::declare_onto(bool onto) const {
  Operator copy = *this;
  copy.declared_onto_ = onto;
  return copy;
}

OperatorFamily::OperatorFamily(std::vector<Operator> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("operator family must be nonempty");
  for (const auto& op : members_) {
    if (op.domain().dim() != domain().dim() || op.domain().unit() != domain().unit() ||
        op.codomain().dim() != codomain().dim() || op.codomain().unit() != codomain().unit()) {
      throw DimensionError("operator family members must share domain and codomain");
    }
  }
}

PropertyReport check_weakly_additive_op(const Operator& op,
                                        std::span<const ShiftSample> samples, double tol) {
  const std::string name = "weakly_additive_operator";
  const Vec& unit = op.domain().unit();
  double worst = 0.0;
  for (const auto& s : samples) {
    const Vec tx = op(s.x);
    const Vec ts = op(axpy(s.x, s.lambda, unit));
    const double defect = max_abs(sub(ts, axpy(tx, s.lambda, op.unit_image())));
    worst = std::max(worst, defect);
    if (!(defect <= tol)) {
      Witness w;
      w.add("x", s.x).add("lambda", {s.lambda}).add("T(x)", tx)
          .add("T(x+lambda*unit)", ts).add("T(unit)", op.unit_image());
      return PropertyReport::failed(name, samples.size(), defect, std::move(w));
    }
  }
  return PropertyReport::passed(name, samples.size(), worst);
}

PropertyReport check_order_preserving_op(const Operator& op,
                                         std::span<const OrderedPair> pairs, double tol) {
  const std::string name = "order_preserving_operator";
  double worst = 0.0;
  for (const auto& p : pairs) {
    if (!op.domain().leq(p.lo, p.hi)) {
      throw std::invalid_argument("check_order_preserving_op: pair is not ordered");
    }
    const Vec tx = op(p.lo);
    const Vec ty = op(p.hi);
    const double defect = worst_cone_defect(op.codomain(), sub(ty, tx));
    worst = std::max(worst, defect);
    if (!(defect <= tol)) {
      Witness w;
      w.add("x", p.lo).add("y", p.hi).add("T(x)", tx).add("T(y)", ty);
      w.note = "x <= y but T(y) - T(x) leaves the codomain cone";
      return PropertyReport::failed(name, pairs.size(), defect, std::move(w));
    }
  }
  return PropertyReport::passed(name, pairs.size(), worst);
}

bool unit_image_interior(const Operator& op) {
  return op.codomain().interior_contains(op.unit_image());
}

double operator_modulus(const Operator& op) { return op.codomain().order_norm(op.unit_image()); }

double operator_lipschitz_defect(const Operator& op,
                                 std::span<const std::pair<Vec, Vec>> pairs) {
  if (pairs.empty()) return 0.0;
  const double modulus = operator_modulus(op);
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& [x, y] : pairs) {
    const double gap = op.codomain().order_norm(sub(op(x), op(y)));
    worst = std::max(worst, gap - modulus * op.domain().order_norm(sub(x, y)));
  }
  return worst;
}

double EquicontinuityModulus::delta(double eps) const {
  if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!bounded) throw std::domain_error("orbit of the unit is unbounded; no uniform modulus");
  if (orbit_bound == 0.0) return std::numeric_limits<double>::infinity();
  return eps / orbit_bound;
}

EquicontinuityModulus equicontinuity_modulus(const OperatorFamily& family, double cap) {
  EquicontinuityModulus out;
  out.cap = cap;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const double norm = operator_modulus(family.members()[i]);
    if (!(norm <= out.orbit_bound)) {
      out.orbit_bound = norm;
      out.worst_member = i;
    }
  }
  out.bounded = std::isfinite(out.orbit_bound) && out.orbit_bound <= cap;
  return out;
}

namespace {

struct LimitTable {
  OrderedSpace domain;
  std::vector<Vec> reps;
  std::vector<double> shifts;
  std::vector<Vec> values;
  Vec unit_value;

  Vec evaluate(std::span<const double> x) const {
    const auto coords = line_coordinates(domain, x);
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const double d = domain.order_norm(sub(coords.rep, reps[i]));
      if (d < best_dist) {
        best_dist = d;
        best = i;
      }
    }
    return axpy(values[best], coords.shift - shifts[best], unit_value);
  }
};

std::string format_vec(std::span<const double> v) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
  out << ')';
  return out.str();
}

}  // namespace

PointwiseLimit pointwise_limit(std::span<const Operator> sequence, std::span<const Vec> probes,
                               double tol) {
  if (sequence.size() < 2) throw std::invalid_argument("pointwise_limit needs at least two members");
  const Operator& last = sequence.back();
  const Operator& previous = sequence[sequence.size() - 2];
  const OrderedSpace& domain = last.domain();

  std::vector<Vec> points;
  points.push_back(domain.unit());
  for (const auto& p : probes) {
    require_dim(p, domain.dim(), "probe");
    points.push_back(p);
  }

  auto table = std::make_shared<LimitTable>(LimitTable{domain, {}, {}, {}, {}});
  for (const auto& p : points) {
    const Vec a = last(p);
    const Vec b = previous(p);
    const double gap = last.codomain().order_norm(sub(a, b));
    if (!(gap <= tol)) {
      std::ostringstream msg;
      msg << "sequence does not settle at probe " << format_vec(p) << ": last members differ by "
          << gap;
      throw DivergenceError(msg.str(), p);
    }
    auto coords = line_coordinates(domain, p);
    table->reps.push_back(std::move(coords.rep));
    table->shifts.push_back(coords.shift);
    table->values.push_back(a);
  }
  // Probe 0 is the unit itself.
  table->unit_value = table->values.front();

  Operator limit = Operator::custom(domain, last.codomain(), "pointwise_limit",
                                    [table](std::span<const double> x) { return table->evaluate(x); });

  CheckSuite report{"pointwise_limit", {}};
  std::vector<ShiftSample> shifts;
  for (const auto& p : points) {
    for (double lambda : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) shifts.push_back({p, lambda});
  }
  report.parts.push_back(check_weakly_additive_op(limit, shifts, tol));

  // Lift each probe just above every other probe along the unit line.
  std::vector<OrderedPair> pairs;
  for (const auto& p : points) {
    for (const auto& q : points) {
      const double t = domain.ray_thresholds(q, p).lambda_plus;
      pairs.push_back({p, axpy(q, t + 1e-12 * (1.0 + std::abs(t)), domain.unit())});
    }
  }
  report.parts.push_back(check_order_preserving_op(limit, pairs, tol));
  return {std::move(limit), std::move(report)};
}

PropertyReport graph_check(const Operator& op, std::span<const Vec> points,
                           std::span<const double> lambdas, double tol) {
  const std::size_t n = op.domain().dim();
  Vec graph_unit = op.domain().unit();
  graph_unit.insert(graph_unit.end(), op.unit_image().begin(), op.unit_image().end());

  double worst = 0.0;
  std::size_t checked = 0;
  for (const auto& x : points) {
    Vec graph_point(x.begin(), x.end());
    const Vec tx = op(x);
    graph_point.insert(graph_point.end(), tx.begin(), tx.end());
    for (double lambda : lambdas) {
      ++checked;
      const Vec moved = axpy(graph_point, lambda, graph_unit);
      const Vec first(moved.begin(), moved.begin() + static_cast<std::ptrdiff_t>(n));
      const Vec second(moved.begin() + static_cast<std::ptrdiff_t>(n), moved.end());
      const Vec image = op(first);
      const double defect = max_abs(sub(second, image));
      worst = std::max(worst, defect);
      if (!(defect <= tol)) {
        Witness w;
        w.add("x", x).add("lambda", {lambda}).add("shifted_graph_point", moved)
            .add("T(x+lambda*unit)", image);
        w.note = "graph is not closed under adding multiples of (1_E, T(1_E))";
        return PropertyReport::failed("graph_a_subspace", checked, defect, std::move(w));
      }
    }
  }
  return PropertyReport::passed("graph_a_subspace", checked, worst);
}

ImageOracle default_image_oracle(const Operator& op) {
  if (std::holds_alternative<Operator::Clamp>(op.kind())) {
    return [](std::span<const double> y) { return std::abs(y[1] - y[0]) <= 1.0 + kTol; };
  }
  if (const auto* lin = std::get_if<Operator::LinearPositive>(&op.kind())) {
    std::vector<Vec> columns;
    for (std::size_t j = 0; j < op.domain().dim(); ++j) columns.push_back(column(lin->matrix, j));
    const std::size_t rank = numeric_rank(columns, op.codomain().dim());
    return [columns, rank, dim = op.codomain().dim()](std::span<const double> y) {
      std::vector<Vec> augmented = columns;
      augmented.emplace_back(y.begin(), y.end());
      return numeric_rank(augmented, dim, 1e-9) == rank;
    };
  }
  return [](std::span<const double>) { return true; };
}

namespace {

double squared_residual(const Operator& op, std::span<const double> x, std::span<const double> y) {
  const Vec d = sub(op(x), y);
  return dot(d, d);
}

}  // namespace

PreimageSearch search_preimage(const Operator& op, std::span<const double> y,
                               std::span<const double> center, double radius,
                               std::size_t budget, double tol, Sampler& sampler) {
  const OrderedSpace& dom = op.domain();
  const std::size_t n = dom.dim();
  constexpr double kInside = 1.0 - 1e-12;
  std::size_t evals = 0;

  auto to_x = [&](const Vec& z) { return axpy(center, radius, z); };
  auto objective = [&](const Vec& z) {
    ++evals;
    return squared_residual(op, to_x(z), y);
  };
  auto feasible = [&](const Vec& z) { return dom.order_norm(z) < kInside; };

  struct Candidate {
    Vec z;
    double value;
  };
  std::vector<Candidate> candidates;

  // Direct guess: move from the center by the target offset.
  Vec guess = scale(1.0 / radius, sub(y, op(center)));
  if (guess.size() == n) {
    const double gn = dom.order_norm(guess);
    if (!(gn < kInside)) guess = scale(0.999 / gn, guess);
    candidates.push_back({guess, objective(guess)});
  }
  const Vec origin(n, 0.0);
  candidates.push_back({origin, objective(origin)});
  const std::size_t random_starts = std::max<std::size_t>(4, budget / 10);
  for (std::size_t i = 0; i < random_starts && evals < budget; ++i) {
    Vec z = sampler.ball_point(dom, origin, kInside);
    const double v = objective(z);
    candidates.push_back({std::move(z), v});
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.value < b.value; });

  Vec best = candidates.front().z;
  double best_value = candidates.front().value;
  auto residual_of = [&](const Vec& z) {
    return op.codomain().order_norm(sub(op(to_x(z)), y));
  };
  if (residual_of(best) <= tol) return {to_x(best), residual_of(best), evals};

  for (const auto& start : candidates) {
    if (evals >= budget) break;
    Vec z = start.z;
    double value = start.value;
    double step = 0.25;
    while (evals < budget && step > 1e-14) {
      bool improved = false;
      for (std::size_t i = 0; i < n && evals < budget; ++i) {
        for (double sign : {1.0, -1.0}) {
          Vec trial = z;
          trial[i] += sign * step;
          if (!feasible(trial)) continue;
          const double v = objective(trial);
          if (v < value) {
            z = std::move(trial);
            value = v;
            improved = true;
            break;
          }
        }
      }
      if (!improved) step *= 0.5;
      if (value < best_value) {
        best_value = value;
        best = z;
      }
      if (improved && residual_of(z) <= tol) {
        return {to_x(z), residual_of(z), evals};
      }
    }
  }
  return {to_x(best), residual_of(best), evals};
}

OpennessVerdict openness_check(const Operator& op, std::span<const double> x0, double eps,
                               double delta, const ImageOracle& image,
                               const SearchOptions& options) {
  if (!(eps > 0.0) || !(delta > 0.0)) throw std::invalid_argument("radii must be positive");
  require_dim(x0, op.domain().dim(), "openness_check");

  OpennessVerdict verdict;
  verdict.source_center.assign(x0.begin(), x0.end());
  verdict.source_radius = eps;
  verdict.target_center = op(x0);
  verdict.target_radius = delta;
  verdict.budget_per_target = options.budget;
  verdict.note = "relative openness in T(E); a failure means the preimage search was exhausted";

  Sampler sampler(options.seed);
  const std::size_t max_draws = 50 * options.targets;
  for (std::size_t draw = 0; draw < max_draws && verdict.targets_tested < options.targets; ++draw) {
    Vec y = sampler.ball_point(op.codomain(), verdict.target_center, delta);
    if (!image(y)) continue;
    ++verdict.targets_tested;
    const auto found = search_preimage(op, y, x0, eps, options.budget, options.tol, sampler);
    verdict.evaluations += found.evaluations;
    if (!(found.residual <= options.tol)) {
      verdict.pass = false;
      verdict.counterexample = std::move(y);
      return verdict;
    }
  }
  return verdict;
}

PropertyReport open_ball_image_check(const Operator& op, double eps, std::size_t samples,
                                     const ImageOracle& image, const SearchOptions& options) {
  if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!op.declared_onto()) {
    throw std::invalid_argument("open_ball_image_check requires an operator declared onto");
  }
  if (!unit_image_interior(op) ||
      max_abs(sub(op.codomain().unit(), op.unit_image())) > kTol) {
    throw std::invalid_argument("open_ball_image_check requires codomain unit = T(1_E)");
  }
  const std::string name = "open_ball_image";
  const Vec zero_e(op.domain().dim(), 0.0);
  const Vec zero_f(op.codomain().dim(), 0.0);
  Sampler sampler(options.seed);
  double worst = 0.0;

  for (std::size_t i = 0; i < samples; ++i) {
    const Vec x = sampler.ball_point(op.domain(), zero_e, eps);
    const Vec tx = op(x);
    const double norm = op.codomain().order_norm(tx);
    worst = std::max(worst, norm - eps);
    if (!(norm < eps + kTol)) {
      Witness w;
      w.add("x", x).add("T(x)", tx);
      w.note = "T maps a point of U(0, eps) outside U(0, eps)";
      return PropertyReport::failed(name, 2 * samples, norm - eps, std::move(w));
    }
  }
  for (std::size_t i = 0; i < samples; ++i) {
    Vec y = sampler.ball_point(op.codomain(), zero_f, eps);
    if (!image(y)) {
      Witness w;
      w.add("y", y);
      w.note = "operator declared onto, but y is not in its image";
      return PropertyReport::failed(name, 2 * samples, 0.0, std::move(w));
    }
    const auto found = search_preimage(op, y, zero_e, eps, options.budget, options.tol, sampler);
    worst = std::max(worst, found.residual);
    if (!(found.residual <= options.tol)) {
      Witness w;
      w.add("y", y).add("best_x", found.best);
      w.note = "no preimage of y found in U(0, eps) within the search budget";
      return PropertyReport::failed(name, 2 * samples, found.residual, std::move(w));
    }
  }
  return PropertyReport::passed(name, 2 * samples, worst);
}

}  // namespace ordunit
