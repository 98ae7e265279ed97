#pragma once

#include <nlohmann/json.hpp>

#include "layered/arith.hpp"
#include "layered/partition.hpp"

namespace layered {

// Full report for one integer: factorization, divisor-sum data, the
// divisor-structure flags, and a layered-ness verdict for every k up to
// floor(sigma(n)/n). Flags whose computation exceeds the budget come back
// as "unknown" rather than aborting the report.
nlohmann::json classification_report(const Natural& n, const SolverConfig& config = {});

}  // namespace layered
