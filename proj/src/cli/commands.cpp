#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "common.hpp"
#include "ordunit/cli.hpp"
#include "ordunit/dual.hpp"
#include "ordunit/extension.hpp"
#include "ordunit/functional.hpp"
#include "ordunit/operator.hpp"
#include "ordunit/sampling.hpp"

namespace ordunit::cli {

using io::InputError;
using io::json;

namespace detail {

PropertyReport value_check(std::string name, double got, double want, double tol) {
  const double defect = std::abs(got - want);
  if (defect <= tol) return PropertyReport::passed(std::move(name), 1, defect);
  Witness w;
  w.add("got", {got}).add("expected", {want});
  w.note = "value differs from the expected one";
  return PropertyReport::failed(std::move(name), 1, defect, std::move(w));
}

PropertyReport openness_report(const OpennessVerdict& v, const Operator& op) {
  if (v.pass) return PropertyReport::passed("relative_openness", v.targets_tested, 0.0);
  Witness w;
  w.add("y", *v.counterexample)
      .add("x0", v.source_center)
      .add("T(x0)", op(v.source_center))
      .add("eps", {v.source_radius})
      .add("delta", {v.target_radius});
  w.note = "y lies in T(E) within delta of T(x0), but no preimage was found within eps of x0 (" +
           v.note + ")";
  return PropertyReport::failed("relative_openness", v.targets_tested, 1.0, std::move(w));
}

json verdict_payload(const OpennessVerdict& v) {
  json out{{"pass", v.pass},
           {"source_center", io::vector(v.source_center)},
           {"source_radius", v.source_radius},
           {"target_center", io::vector(v.target_center)},
           {"target_radius", v.target_radius},
           {"targets_tested", v.targets_tested},
           {"evaluations", v.evaluations},
           {"budget_per_target", v.budget_per_target},
           {"note", v.note}};
  out["counterexample"] = v.counterexample ? io::vector(*v.counterexample) : json(nullptr);
  return out;
}

Section expect(std::string name, bool expected, std::vector<PropertyReport> checks, json payload,
               bool extra) {
  Section s;
  s.name = std::move(name);
  s.expected = expected;
  const bool observed =
      std::all_of(checks.begin(), checks.end(), [](const PropertyReport& r) { return r.pass; });
  s.pass = observed == expected && extra;
  s.checks = std::move(checks);
  s.payload = std::move(payload);
  s.payload["observed"] = observed;
  return s;
}

}  // namespace detail

namespace {

Section plain(std::string name, std::vector<PropertyReport> checks, json payload = json::object()) {
  Section s;
  s.name = std::move(name);
  s.pass = std::all_of(checks.begin(), checks.end(), [](const PropertyReport& r) { return r.pass; });
  s.checks = std::move(checks);
  s.payload = std::move(payload);
  return s;
}

double tol_of(const RunConfig& c) { return c.tol.value_or(kTol); }

std::optional<OrderedSpace> load_space(const RunConfig& c) {
  if (!c.space_path) return std::nullopt;
  return io::parse_space(io::load_file(*c.space_path));
}

json base_config(const RunConfig& c) {
  json cfg{{"seed", c.seed}, {"samples", c.samples}};
  cfg["tol"] = io::number(tol_of(c));
  json inputs = json::object();
  if (c.space_path) inputs["space"] = *c.space_path;
  if (c.functional_path) inputs["functional"] = *c.functional_path;
  if (c.operator_path) inputs["operator"] = *c.operator_path;
  if (c.partial_path) inputs["partial"] = *c.partial_path;
  if (c.sequence_path) inputs["sequence"] = *c.sequence_path;
  cfg["inputs"] = inputs;
  return cfg;
}

PropertyReport lipschitz_report(std::string name, double defect, double tol) {
  if (defect <= tol) return PropertyReport::passed(std::move(name), 1, defect);
  Witness w;
  w.note = "a sampled pair moves further than the unit-based modulus allows";
  return PropertyReport::failed(std::move(name), 1, defect, std::move(w));
}

Section check_functional(const RunConfig& c, const io::FunctionalInput& in) {
  const Functional& f = in.functional;
  const OrderedSpace& e = f.space();
  const double tol = tol_of(c);
  Sampler sampler(c.seed);

  std::vector<PropertyReport> checks;
  checks.push_back(check_weak_additivity(f, sampler.shift_samples(e, c.samples), tol));
  std::vector<OrderedPair> pairs = in.probe_pairs;
  for (auto& p : sampler.comparable_pairs(e, c.samples)) pairs.push_back(std::move(p));
  checks.push_back(check_order_preserving(f, pairs, tol));
  checks.push_back(check_positive(f, sampler.cone_points(e, c.samples), tol));
  json payload{{"kind", f.kind_name()}, {"dim", e.dim()}, {"unit_value", io::number(f.unit_value())}};
  if (checks[0].pass && checks[1].pass) {
    const auto arbitrary = sampler.arbitrary_pairs(e, c.samples);
    checks.push_back(lipschitz_report("continuity_modulus", lipschitz_defect(f, arbitrary), tol));
    payload["bound"] = io::number(bound(f));
  }
  return plain("functional", std::move(checks), std::move(payload));
}

Section check_operator(const RunConfig& c, const Operator& op) {
  const OrderedSpace& e = op.domain();
  const double tol = tol_of(c);
  Sampler sampler(c.seed);

  std::vector<PropertyReport> checks;
  checks.push_back(check_weakly_additive_op(op, sampler.shift_samples(e, c.samples), tol));
  checks.push_back(check_order_preserving_op(op, sampler.comparable_pairs(e, c.samples), tol));
  std::vector<Vec> points;
  for (std::size_t i = 0; i < std::min<std::size_t>(c.samples, 1024); ++i) points.push_back(sampler.box(e.dim(), 3.0));
  const Vec lambdas{-2, -1, -0.5, 0.5, 1, 2};
  checks.push_back(graph_check(op, points, lambdas, tol));
  json payload{{"kind", op.kind_name()},
               {"domain_dim", e.dim()},
               {"codomain_dim", op.codomain().dim()},
               {"unit_image", io::vector(op.unit_image())},
               {"unit_image_interior", unit_image_interior(op)},
               {"modulus", io::number(operator_modulus(op))},
               {"maps_cone", op.maps_cone()},
               {"declared_onto", op.declared_onto()}};
  if (checks[0].pass && checks[1].pass) {
    const auto arbitrary = sampler.arbitrary_pairs(e, c.samples);
    checks.push_back(
        lipschitz_report("continuity_modulus", operator_lipschitz_defect(op, arbitrary), tol));
    if (op.declared_onto()) {
      SearchOptions opts;
      opts.seed = c.seed;
      opts.budget = c.budget;
      checks.push_back(open_ball_image_check(op, 1.0, std::min<std::size_t>(c.samples, 256),
                                             default_image_oracle(op), opts));
    }
  }
  return plain("operator", std::move(checks), std::move(payload));
}

ExtensionRule parse_rule(const std::string& text) {
  if (text == "lower") return ExtensionRule::lower();
  if (text == "upper") return ExtensionRule::upper();
  if (text == "midpoint") return ExtensionRule::midpoint();
  if (text.rfind("given:", 0) == 0) {
    const Vec p = io::parse_point(text.substr(6));
    if (p.size() != 1) throw InputError("rule given:p takes one number");
    return ExtensionRule::given(p[0]);
  }
  throw InputError("unknown rule \"" + text + "\" (lower, upper, midpoint, given:p)");
}

json capacity_json(const Capacity& v) {
  json values = json::object();
  for (SubsetMask s = 1; s <= v.full_mask(); ++s) values[std::to_string(s)] = io::number(v(s));
  return json{{"n", v.ground_size()}, {"values", values}};
}

}  // namespace

void Report::finish() {
  if (!error.empty()) {
    exit_code = 2;
    return;
  }
  const bool ok = std::all_of(sections.begin(), sections.end(), [](const Section& s) { return s.pass; });
  exit_code = ok ? 0 : 1;
}

Report run_check(const RunConfig& c) {
  Report r{"check", base_config(c), {}, {}, 0, 0.0};
  if (c.functional_path.has_value() == c.operator_path.has_value()) {
    throw InputError("check needs exactly one of --functional or --operator");
  }
  const auto space = load_space(c);
  if (c.functional_path) {
    const auto in = io::parse_functional(io::load_file(*c.functional_path), space);
    r.sections.push_back(check_functional(c, in));
  } else {
    const auto op = io::parse_operator(io::load_file(*c.operator_path), space);
    r.sections.push_back(check_operator(c, op));
  }
  return r;
}

Report run_norm(const RunConfig& c) {
  Report r{"norm", base_config(c), {}, {}, 0, 0.0};
  if (c.points.empty()) throw InputError("norm needs at least one --at point");
  std::vector<Vec> points;
  for (const auto& p : c.points) points.push_back(io::parse_point(p));
  const OrderedSpace e = load_space(c).value_or(OrderedSpace::standard(points.front().size()));
  for (const auto& p : points) {
    if (p.size() != e.dim()) throw InputError("point dimension does not match the space");
  }
  r.config["points"] = json::array();
  for (const auto& p : points) r.config["points"].push_back(io::vector(p));

  const auto v = validate_space(e, 1024, c.seed);
  PropertyReport valid = PropertyReport::passed("space_valid", 1, 0.0);
  if (!v.ok()) {
    Witness w;
    if (!v.lineality_witness.empty()) w.add("lineality", v.lineality_witness);
    for (const auto& f : v.failures) w.note += (w.note.empty() ? "" : "; ") + f;
    valid = PropertyReport::failed("space_valid", 1, 1.0, std::move(w));
  }
  json norms = json::array();
  for (const auto& p : points) {
    norms.push_back(json{{"x", io::vector(p)}, {"norm", io::number(e.order_norm(p))}});
  }
  r.sections.push_back(plain("norm", {valid}, json{{"norms", norms}}));
  return r;
}

Report run_extend(const RunConfig& c) {
  Report r{"extend", base_config(c), {}, {}, 0, 0.0};
  r.config["rule"] = c.rule;
  if (!c.partial_path) throw InputError("extend needs --partial");
  const ExtensionRule rule = parse_rule(c.rule);
  std::vector<Vec> targets;
  for (const auto& t : c.targets) targets.push_back(io::parse_point(t));
  r.config["targets"] = json::array();
  for (const auto& t : targets) r.config["targets"].push_back(io::vector(t));

  const json pj = io::load_file(*c.partial_path);
  std::optional<OrderedSpace> space = load_space(c);
  const bool has_base = pj.is_object() && pj.contains("base_points") && pj.at("base_points").is_array() &&
                        !pj.at("base_points").empty();
  if (!space && !(pj.is_object() && pj.contains("space")) && !has_base && !targets.empty()) {
    space = OrderedSpace::standard(targets.front().size());
  }
  PartialFunctional pf = io::parse_partial(pj, space);
  for (const auto& t : targets) {
    if (t.size() != pf.space().dim()) throw InputError("target dimension does not match the space");
  }

  const double tol = tol_of(c);
  const auto consistency = check_partial_consistency(pf, tol);
  r.sections.push_back(plain("consistency", {consistency},
                             json{{"lines", pf.line_count()}, {"unit_value", pf.unit_value()}}));
  if (!consistency.pass) return r;

  json steps = json::array();
  std::vector<PropertyReport> checks;
  for (const auto& y : targets) {
    if (const auto v = pf.value_at(y)) {
      steps.push_back(json{{"target", io::vector(y)}, {"in_span", true}, {"value", io::number(*v)}});
      continue;
    }
    const auto iv = extension_interval(pf, y);
    json step{{"target", io::vector(y)},
              {"in_span", false},
              {"p_minus", io::number(iv.p_minus)},
              {"p_plus", io::number(iv.p_plus)},
              {"midpoint", io::number(iv.midpoint())}};
    if (rule.kind == ExtensionRule::Kind::Given &&
        (rule.value < iv.p_minus - tol || rule.value > iv.p_plus + tol)) {
      Witness w;
      w.add("target", y).add("interval", {iv.p_minus, iv.p_plus}).add("given", {rule.value});
      w.note = "the given value lies outside the admissible interval";
      checks.push_back(PropertyReport::failed("admissible_value", 1, 0.0, std::move(w)));
      steps.push_back(std::move(step));
      break;
    }
    auto ext = extend_step(pf, y, rule);
    step["chosen"] = io::number(ext.chosen);
    steps.push_back(std::move(step));
    pf = std::move(ext.extended);
  }
  checks.push_back(check_partial_consistency(pf, tol));
  r.sections.push_back(plain("extension", std::move(checks), json{{"steps", steps}}));
  return r;
}

Report run_openness(const RunConfig& c) {
  Report r{"openness", base_config(c), {}, {}, 0, 0.0};
  if (!c.operator_path) throw InputError("openness needs --operator");
  const Operator op = io::parse_operator(io::load_file(*c.operator_path), load_space(c));
  Vec x0 = c.points.empty() ? Vec(op.domain().dim(), 0.0) : io::parse_point(c.points.front());
  if (x0.size() != op.domain().dim()) throw InputError("--at dimension does not match the operator");
  if (!(c.epsilon > 0.0) || !(c.delta > 0.0)) throw InputError("--epsilon and --delta must be positive");
  if (c.budget == 0 || c.targets_per_check == 0) throw InputError("--budget and --targets must be positive");
  r.config["at"] = io::vector(x0);
  r.config["epsilon"] = c.epsilon;
  r.config["delta"] = c.delta;
  r.config["budget"] = c.budget;
  r.config["targets"] = c.targets_per_check;

  SearchOptions opts;
  opts.budget = c.budget;
  opts.targets = c.targets_per_check;
  opts.seed = c.seed;
  opts.tol = tol_of(c);
  const auto verdict = openness_check(op, x0, c.epsilon, c.delta, default_image_oracle(op), opts);
  r.sections.push_back(plain("openness", {detail::openness_report(verdict, op)}, detail::verdict_payload(verdict)));
  return r;
}

Report run_compact(const RunConfig& c) {
  Report r{"compact", base_config(c), {}, {}, 0, 0.0};
  if (!c.sequence_path) throw InputError("compact needs --sequence");
  const auto caps = io::parse_sequence(io::load_file(*c.sequence_path));
  r.config["min_length"] = c.min_length;
  r.config["truncation"] = c.truncation;
  if (caps.size() < std::max<std::size_t>(1, c.min_length)) {
    throw InputError("sequence has " + std::to_string(caps.size()) + " capacities; --min-length is " +
                     std::to_string(c.min_length));
  }
  const std::size_t n = caps.front().ground_size();
  const OrderedSpace e = load_space(c).value_or(OrderedSpace::standard(n));
  if (e.dim() != n) throw InputError("space dimension must equal the capacity ground size");
  for (const auto& v : caps) {
    if (std::abs(v.total() - 1.0) > kTol) throw InputError("every capacity needs v(full) = 1");
  }
  if (c.truncation == 0) throw InputError("--truncation must be positive");

  CompactnessOptions opts;
  opts.min_length = c.min_length;
  opts.tol = c.tol.value_or(1e-6);
  opts.truncation = c.truncation;
  opts.seed = c.seed;
  opts.membership_samples = std::min<std::size_t>(c.samples, 2048);
  r.config["tol"] = io::number(opts.tol);
  try {
    const auto lim = subsequence_limit(caps, e, opts);
    json payload{{"indices", lim.indices},
                 {"tail_start", lim.tail_start},
                 {"limit_capacity", capacity_json(lim.limit_capacity)},
                 {"distances", io::vector(lim.distances)},
                 {"tail_spread", io::number(lim.tail_spread)}};
    r.sections.push_back(plain("compactness", lim.report.parts, std::move(payload)));
  } catch (const SequenceTooShort& ex) {
    Witness w;
    w.note = ex.what();
    r.sections.push_back(plain(
        "compactness", {PropertyReport::failed("subsequence_extraction", caps.size(), 0.0, std::move(w))}));
  }
  return r;
}

Report run(const RunConfig& c) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  try {
    if (c.samples == 0) throw InputError("--samples must be positive");
    if (c.tol && !(*c.tol > 0.0)) throw InputError("--tol must be positive");
    if (c.command == "check") r = run_check(c);
    else if (c.command == "norm") r = run_norm(c);
    else if (c.command == "extend") r = run_extend(c);
    else if (c.command == "openness") r = run_openness(c);
    else if (c.command == "compact") r = run_compact(c);
    else if (c.command == "gallery") r = run_gallery(c);
    else throw InputError("unknown command \"" + c.command + "\"");
  } catch (const InputError& e) {
    r = Report{c.command, base_config(c), {}, e.what(), 2, 0.0};
  } catch (const std::invalid_argument& e) {
    r = Report{c.command, base_config(c), {}, e.what(), 2, 0.0};
  }
  r.finish();
  r.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

json to_json(const Report& report, bool timing) {
  json sections = json::array();
  for (const auto& s : report.sections) {
    json checks = json::array();
    for (const auto& c : s.checks) checks.push_back(io::to_json(c));
    json js{{"name", s.name}, {"pass", s.pass}};
    if (s.expected) js["expected"] = *s.expected ? "pass" : "fail";
    js["checks"] = checks;
    js["payload"] = s.payload;
    sections.push_back(std::move(js));
  }
  static const char* const kStatus[] = {"pass", "violation", "input_error"};
  json out{{"tool", "ordunit"},
           {"command", report.command},
           {"config", report.config},
           {"status", kStatus[report.exit_code]},
           {"exit_code", report.exit_code},
           {"sections", sections}};
  if (!report.error.empty()) out["error"] = report.error;
  if (timing) out["elapsed_ms"] = report.elapsed_ms;
  return out;
}

namespace {

std::string fmt(std::span<const double> v) {
  std::ostringstream out;
  out.precision(12);
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
  out << ')';
  return out.str();
}

}  // namespace

void write_text(std::ostream& out, const Report& report) {
  static const char* const kStatus[] = {"PASS", "VIOLATION", "INPUT ERROR"};
  out << "ordunit " << report.command << ": " << kStatus[report.exit_code] << " (exit "
      << report.exit_code << ")\n";
  if (!report.error.empty()) out << "  error: " << report.error << "\n";
  for (const auto& s : report.sections) {
    out << "  [" << (s.pass ? "ok" : "FAIL") << "] " << s.name;
    if (s.expected) {
      const bool observed = s.payload.value("observed", false);
      out << "  (expected " << (*s.expected ? "pass" : "fail") << ", observed "
          << (observed ? "pass" : "fail") << ")";
    }
    out << "\n";
    for (const auto& c : s.checks) {
      out << "      " << c.property << ": " << (c.pass ? "pass" : "fail") << "  samples=" << c.samples
          << " worst=" << c.worst << "\n";
      if (c.witness) {
        for (const auto& [name, value] : c.witness->entries) out << "        " << name << " = " << fmt(value) << "\n";
        if (!c.witness->note.empty()) out << "        note: " << c.witness->note << "\n";
      }
    }
    for (const auto& [key, value] : s.payload.items()) {
      if (key == "observed") continue;
      out << "      " << key << ": " << value.dump() << "\n";
    }
  }
  out << "  elapsed: " << report.elapsed_ms << " ms\n";
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Order-unit spaces: functional and operator checks, extensions, openness and compactness"};
  app.require_subcommand(1);
  RunConfig c;
  std::string format = "text";
  auto common = [&](CLI::App* sub) {
    sub->add_option("--space", c.space_path, "space descriptor (JSON)");
    sub->add_option("--seed", c.seed, "seed for all sampling")->check(CLI::PositiveNumber);
    sub->add_option("--samples", c.samples, "samples per sampled check")->check(CLI::PositiveNumber);
    sub->add_option("--tol", c.tol, "tolerance override");
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_flag("--timing", c.timing, "include elapsed time in JSON output");
  };

  auto* check = app.add_subcommand("check", "check a functional or operator descriptor");
  common(check);
  check->add_option("--functional", c.functional_path, "functional descriptor");
  check->add_option("--operator", c.operator_path, "operator descriptor");
  check->add_option("--budget", c.budget, "preimage search budget for onto operators");

  auto* norm = app.add_subcommand("norm", "order norm of points");
  common(norm);
  norm->add_option("--at", c.points, "point as comma-separated coordinates")->required();

  auto* extend = app.add_subcommand("extend", "extend a partial functional to target points");
  common(extend);
  extend->add_option("--partial", c.partial_path, "partial-functional descriptor")->required();
  extend->add_option("--target", c.targets, "target point (repeatable)");
  extend->add_option("--rule", c.rule, "lower, upper, midpoint or given:p");

  auto* openness = app.add_subcommand("openness", "relative openness of an operator at a point");
  common(openness);
  openness->add_option("--operator", c.operator_path, "operator descriptor")->required();
  openness->add_option("--at", c.points, "center x0 (default 0)");
  openness->add_option("--epsilon", c.epsilon, "source radius");
  openness->add_option("--delta", c.delta, "target radius");
  openness->add_option("--budget", c.budget, "evaluations per target");
  openness->add_option("--targets", c.targets_per_check, "targets sampled");

  auto* compact = app.add_subcommand("compact", "convergent subsequence of a capacity sequence");
  common(compact);
  compact->add_option("--sequence", c.sequence_path, "capacity-sequence file")->required();
  compact->add_option("--min-length", c.min_length, "minimum sequence length");
  compact->add_option("--truncation", c.truncation, "weak-metric truncation");

  auto* gallery = app.add_subcommand("gallery", "reproduce the built-in example gallery");
  common(gallery);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  c.command = app.get_subcommands().front()->get_name();
  c.format = format == "json" ? Format::Json : Format::Text;

  const Report report = run(c);
  if (c.format == Format::Json) {
    out << to_json(report, c.timing).dump(2) << "\n";
  } else {
    write_text(out, report);
  }
  if (report.exit_code == 2) err << "error: " << report.error << "\n";
  return report.exit_code;
}

}  // namespace ordunit::cli
