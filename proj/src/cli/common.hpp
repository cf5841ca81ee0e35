#pragma once

#include <string>

#include "ordunit/cli.hpp"
#include "ordunit/operator.hpp"

namespace ordunit::cli::detail {

/// |got - want| <= tol as a one-sample report.
PropertyReport value_check(std::string name, double got, double want, double tol);

/// An openness verdict as a report; the witness names the target that had
/// no preimage found.
PropertyReport openness_report(const OpennessVerdict& v, const Operator& op);

io::json verdict_payload(const OpennessVerdict& v);

/// Checks against an explicit expectation; the section passes when the
/// observed verdict (all checks pass) matches `expected` and `extra` holds.
Section expect(std::string name, bool expected, std::vector<PropertyReport> checks,
               io::json payload = io::json::object(), bool extra = true);

}  // namespace ordunit::cli::detail
