#pragma once

// JSON descriptors for spaces, functionals, partial functionals, operators
// and capacity sequences.
//
//   space:      {"dim": n, "cone": "orthant" | {"halfspaces": [[...], ...]}, "unit": [...]}
//   functional: {"kind": "linear" | "sqrt_gap" | "choquet" | "maxplus",
//                "weights": [...], "capacity": {"n": k, "values": {"<mask>": v, ...}},
//                "space": {...}, "probe_pairs": [[x, y], ...]}
//   partial:    {"base_points": [[...], ...], "values": [...], "unit_value": c, "space": {...}}
//   operator:   {"kind": "linear_positive" | "clamp" | "stack", "matrix": [[...], ...],
//                "functionals": [...], "domain": {...}, "codomain": {...}, "onto": bool}
//   sequence:   {"n": k, "sequence": [capacity, ...]}
//
// A capacity is {"n": k, "values": ...} or just its values, given either as an
// object keyed by subset bitmask (bit i-1 = element i) or as a dense array of
// length 2^k. Missing nonempty subsets are an error.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "ordunit/capacity.hpp"
#include "ordunit/extension.hpp"
#include "ordunit/functional.hpp"
#include "ordunit/operator.hpp"
#include "ordunit/space.hpp"

namespace ordunit::io {

using json = nlohmann::ordered_json;

/// Malformed or semantically invalid input; maps to exit status 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads and parses a JSON file; parse errors become InputError.
json load_file(const std::filesystem::path& path);

OrderedSpace parse_space(const json& j);
Capacity parse_capacity(const json& j, std::optional<std::size_t> ground_size = std::nullopt);

struct FunctionalInput {
  Functional functional;
  /// Comparable pairs to check before any sampled ones.
  std::vector<OrderedPair> probe_pairs;
};

/// `space` overrides any space embedded in the descriptor; otherwise the
/// standard orthant of the descriptor's natural dimension is used.
FunctionalInput parse_functional(const json& j, const std::optional<OrderedSpace>& space);

PartialFunctional parse_partial(const json& j, const std::optional<OrderedSpace>& space);

Operator parse_operator(const json& j, const std::optional<OrderedSpace>& domain);

std::vector<Capacity> parse_sequence(const json& j);

/// "1,-2.5,3" -> {1, -2.5, 3}.
Vec parse_point(const std::string& text);

/// Doubles as JSON numbers; non-finite values become strings.
json number(double x);
json vector(std::span<const double> v);
json to_json(const Witness& w);
json to_json(const PropertyReport& r);

}  // namespace ordunit::io
