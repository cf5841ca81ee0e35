#include "ordunit/report.hpp"

#include <algorithm>

namespace ordunit {

const Vec* Witness::find(const std::string& name) const {
  for (const auto& [key, value] : entries) {
    if (key == name) return &value;
  }
  return nullptr;
}

PropertyReport PropertyReport::passed(std::string property, std::size_t samples,
                                      double worst) {
  PropertyReport r;
  r.property = std::move(property);
  r.pass = true;
  r.samples = samples;
  r.worst = worst;
  return r;
}

PropertyReport PropertyReport::failed(std::string property, std::size_t samples,
                                      double worst, Witness witness) {
  PropertyReport r;
  r.property = std::move(property);
  r.pass = false;
  r.samples = samples;
  r.worst = worst;
  r.witness = std::move(witness);
  return r;
}

bool CheckSuite::pass() const {
  return std::all_of(parts.begin(), parts.end(),
                     [](const PropertyReport& r) { return r.pass; });
}

const PropertyReport* CheckSuite::first_failure() const {
  for (const auto& r : parts) {
    if (!r.pass) return &r;
  }
  return nullptr;
}

}  // namespace ordunit
