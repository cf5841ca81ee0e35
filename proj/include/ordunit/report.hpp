#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordunit/space.hpp"

namespace ordunit {

/// Named inputs and outputs that reproduce a failed check.
struct Witness {
  std::vector<std::pair<std::string, Vec>> entries;
  std::string note;

  Witness& add(std::string name, Vec value) {
    entries.emplace_back(std::move(name), std::move(value));
    return *this;
  }
  const Vec* find(const std::string& name) const;
};

struct PropertyReport {
  std::string property;
  bool pass = true;
  std::optional<Witness> witness;
  std::size_t samples = 0;
  /// Largest defect observed (property-specific; <= tolerance when passing).
  double worst = 0.0;

  static PropertyReport passed(std::string property, std::size_t samples, double worst);
  static PropertyReport failed(std::string property, std::size_t samples, double worst,
                               Witness witness);
};

/// Several reports checked together; passes iff all parts pass.
struct CheckSuite {
  std::string name;
  std::vector<PropertyReport> parts;

  bool pass() const;
  const PropertyReport* first_failure() const;
};

}  // namespace ordunit
