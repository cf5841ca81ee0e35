#include "ordunit/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ordunit::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw InputError(what); }

const json& field(const json& j, const char* key, const char* where) {
  if (!j.is_object()) fail(std::string(where) + ": expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) fail(std::string(where) + ": missing \"" + key + "\"");
  return *it;
}

double to_double(const json& j, const char* where) {
  if (!j.is_number()) fail(std::string(where) + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(std::string(where) + ": non-finite number");
  return v;
}

Vec to_vec(const json& j, const char* where) {
  if (!j.is_array()) fail(std::string(where) + ": expected an array of numbers");
  Vec out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(to_double(e, where));
  return out;
}

std::vector<Vec> to_vecs(const json& j, const char* where) {
  if (!j.is_array()) fail(std::string(where) + ": expected an array of arrays");
  std::vector<Vec> out;
  for (const auto& e : j) out.push_back(to_vec(e, where));
  return out;
}

std::size_t to_size(const json& j, const char* where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    fail(std::string(where) + ": expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

std::optional<OrderedSpace> embedded_space(const json& j, const char* key) {
  if (j.is_object() && j.contains(key)) return parse_space(j.at(key));
  return std::nullopt;
}

// Wraps library construction errors (dimension mismatches, invalid values)
// as input errors.
template <class F>
auto guarded(const char* where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    fail(std::string(where) + ": " + e.what());
  }
}

}  // namespace

json load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(path.string() + ": malformed JSON: " + e.what());
  }
}

OrderedSpace parse_space(const json& j) {
  const std::size_t dim = to_size(field(j, "dim", "space"), "space.dim");
  if (dim == 0) fail("space.dim must be positive");
  const json& cone = field(j, "cone", "space");
  ConeSpec spec = ConeSpec::orthant();
  if (cone.is_string()) {
    if (cone.get<std::string>() != "orthant") fail("space.cone: unknown cone \"" + cone.get<std::string>() + "\"");
  } else {
    spec = ConeSpec::halfspaces(to_vecs(field(cone, "halfspaces", "space.cone"), "space.cone.halfspaces"));
  }
  Vec unit = j.contains("unit") ? to_vec(j.at("unit"), "space.unit") : Vec(dim, 1.0);
  return guarded("space", [&] { return OrderedSpace(dim, spec, std::move(unit)); });
}

Capacity parse_capacity(const json& j, std::optional<std::size_t> ground_size) {
  const json* values = &j;
  if (j.is_object() && j.contains("values")) {
    values = &j.at("values");
    if (j.contains("n")) {
      const std::size_t n = to_size(j.at("n"), "capacity.n");
      if (ground_size && *ground_size != n) fail("capacity.n disagrees with the enclosing n");
      ground_size = n;
    }
  }
  if (values->is_array()) {
    Vec dense = to_vec(*values, "capacity.values");
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dense.size()) ++n;
    if ((std::size_t{1} << n) != dense.size()) fail("capacity.values: array length must be a power of two");
    if (ground_size && *ground_size != n) fail("capacity.values: length does not match n");
    return guarded("capacity", [&] { return Capacity(n, std::move(dense)); });
  }
  if (!values->is_object()) fail("capacity.values: expected an object or array");
  if (!ground_size) fail("capacity: \"n\" is required with bitmask-keyed values");
  const std::size_t n = *ground_size;
  if (n == 0 || n > Capacity::kMaxGround) fail("capacity.n out of range");
  Vec dense(std::size_t{1} << n, 0.0);
  std::vector<bool> seen(dense.size(), false);
  seen[0] = true;
  for (const auto& [key, value] : values->items()) {
    std::size_t mask = 0;
    std::size_t used = 0;
    try {
      mask = std::stoul(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size() || mask >= dense.size()) fail("capacity.values: bad subset key \"" + key + "\"");
    dense[mask] = to_double(value, "capacity.values");
    seen[mask] = true;
  }
  for (std::size_t s = 1; s < seen.size(); ++s) {
    if (!seen[s]) fail("capacity.values: missing subset " + std::to_string(s));
  }
  return guarded("capacity", [&] { return Capacity(n, std::move(dense)); });
}

FunctionalInput parse_functional(const json& j, const std::optional<OrderedSpace>& space) {
  const json& kind_j = field(j, "kind", "functional");
  if (!kind_j.is_string()) fail("functional.kind must be a string");
  const std::string kind = kind_j.get<std::string>();
  const auto own = embedded_space(j, "space");

  auto space_for = [&](std::size_t natural_dim) {
    if (space) return *space;
    if (own) return *own;
    return OrderedSpace::standard(natural_dim);
  };

  auto build = [&]() -> Functional {
    if (kind == "linear") {
      Vec w = to_vec(field(j, "weights", "functional"), "functional.weights");
      if (w.empty()) fail("functional.weights must be nonempty");
      OrderedSpace e = space_for(w.size());
      return Functional::linear(std::move(e), std::move(w));
    }
    if (kind == "maxplus") {
      Vec w = to_vec(field(j, "weights", "functional"), "functional.weights");
      if (w.empty()) fail("functional.weights must be nonempty");
      OrderedSpace e = space_for(w.size());
      return Functional::maxplus(std::move(e), std::move(w));
    }
    if (kind == "sqrt_gap") return Functional::sqrt_gap(space_for(2));
    if (kind == "choquet") {
      Capacity v = parse_capacity(field(j, "capacity", "functional"));
      OrderedSpace e = space_for(v.ground_size());
      return Functional::choquet(std::move(e), std::move(v));
    }
    fail("functional.kind: unknown kind \"" + kind + "\"");
  };
  FunctionalInput out{guarded("functional", build), {}};

  if (j.contains("probe_pairs")) {
    const json& pp = j.at("probe_pairs");
    if (!pp.is_array()) fail("functional.probe_pairs: expected an array of [x, y] pairs");
    const auto& e = out.functional.space();
    for (const auto& pair : pp) {
      if (!pair.is_array() || pair.size() != 2) fail("functional.probe_pairs: each entry is [x, y]");
      Vec x = to_vec(pair[0], "functional.probe_pairs");
      Vec y = to_vec(pair[1], "functional.probe_pairs");
      if (x.size() != e.dim() || y.size() != e.dim()) fail("functional.probe_pairs: dimension mismatch");
      if (!e.leq(x, y)) fail("functional.probe_pairs: pair is not ordered x <= y");
      out.probe_pairs.push_back({std::move(x), std::move(y)});
    }
  }
  return out;
}

PartialFunctional parse_partial(const json& j, const std::optional<OrderedSpace>& space) {
  const auto base = to_vecs(field(j, "base_points", "partial"), "partial.base_points");
  const Vec values = to_vec(field(j, "values", "partial"), "partial.values");
  const double c = to_double(field(j, "unit_value", "partial"), "partial.unit_value");
  std::optional<OrderedSpace> e = space ? space : embedded_space(j, "space");
  if (!e) {
    if (base.empty()) fail("partial: give a space when there are no base points");
    e = OrderedSpace::standard(base.front().size());
  }
  return guarded("partial", [&] { return PartialFunctional(*e, base, values, c); });
}

Operator parse_operator(const json& j, const std::optional<OrderedSpace>& domain) {
  const json& kind_j = field(j, "kind", "operator");
  if (!kind_j.is_string()) fail("operator.kind must be a string");
  const std::string kind = kind_j.get<std::string>();
  std::optional<OrderedSpace> dom = domain ? domain : embedded_space(j, "domain");
  std::optional<OrderedSpace> cod = embedded_space(j, "codomain");

  auto build = [&]() -> Operator {
    if (kind == "clamp") {
      if (dom || cod) fail("operator: the clamp acts on the standard plane; drop domain/codomain");
      return Operator::clamp();
    }
    if (kind == "linear_positive") {
      const auto m = to_vecs(field(j, "matrix", "operator"), "operator.matrix");
      if (m.empty() || m.front().empty()) fail("operator.matrix must be nonempty");
      for (const auto& row : m) {
        if (row.size() != m.front().size()) fail("operator.matrix: ragged rows");
      }
      OrderedSpace d = dom ? *dom : OrderedSpace::standard(m.front().size());
      OrderedSpace c = cod ? *cod : OrderedSpace::standard(m.size());
      return Operator::linear_positive(std::move(d), std::move(c), m);
    }
    if (kind == "stack") {
      const json& fs = field(j, "functionals", "operator");
      if (!fs.is_array() || fs.empty()) fail("operator.functionals must be a nonempty array");
      std::vector<Functional> comps;
      for (const auto& f : fs) comps.push_back(parse_functional(f, dom).functional);
      OrderedSpace d = comps.front().space();
      OrderedSpace c = cod ? *cod : OrderedSpace::standard(comps.size());
      return Operator::stack(std::move(d), std::move(c), std::move(comps));
    }
    fail("operator.kind: unknown kind \"" + kind + "\"");
  };
  Operator op = guarded("operator", build);
  if (j.contains("onto")) {
    if (!j.at("onto").is_boolean()) fail("operator.onto must be a boolean");
    op = op.declare_onto(j.at("onto").get<bool>());
  }
  return op;
}

std::vector<Capacity> parse_sequence(const json& j) {
  const std::size_t n = to_size(field(j, "n", "sequence file"), "sequence file.n");
  const json& seq = field(j, "sequence", "sequence file");
  if (!seq.is_array()) fail("sequence file.sequence must be an array");
  std::vector<Capacity> out;
  out.reserve(seq.size());
  for (const auto& c : seq) out.push_back(parse_capacity(c, n));
  return out;
}

Vec parse_point(const std::string& text) {
  Vec out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used == 0 || used != item.size() || !std::isfinite(v)) fail("bad point \"" + text + "\"");
    out.push_back(v);
  }
  if (out.empty()) fail("empty point");
  return out;
}

json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

json vector(std::span<const double> v) {
  json out = json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

json to_json(const Witness& w) {
  json entries = json::array();
  for (const auto& [name, value] : w.entries) {
    entries.push_back(json{{"name", name}, {"value", vector(value)}});
  }
  return json{{"entries", entries}, {"note", w.note}};
}

json to_json(const PropertyReport& r) {
  json out{{"property", r.property},
           {"pass", r.pass},
           {"samples", r.samples},
           {"worst", number(r.worst)}};
  out["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  return out;
}

}  // namespace ordunit::io
