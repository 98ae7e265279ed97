#pragma once

#include <cstdint>
#include <vector>

#include "layered/budget.hpp"
#include "layered/sumbits.hpp"

namespace layered {

enum class SearchStatus {
    kFound,     // witness returned
    kNotFound,  // search space provably covered, no witness exists
    kUnknown,   // budget exhausted before a definitive answer
};

struct SubsetSumResult {
    SearchStatus status = SearchStatus::kUnknown;
    // Chosen values, descending. Meaningful only for kFound.
    std::vector<std::uint64_t> chosen;
};

struct SubsetSumConfig {
    // Largest reachability table, in bits. Targets above this use
    // depth-first branch and bound instead.
    std::uint64_t table_bit_budget = std::uint64_t(1) << 28;
};

// Finds a subset of `values` (distinct, each usable once) summing exactly
// to `target`. Witness selection is deterministic: the largest value that
// still admits a completion is always taken first.
SubsetSumResult subset_sum(const std::vector<std::uint64_t>& values, std::uint64_t target,
                           Budget& budget, const SubsetSumConfig& config = {});

// Reachability support: bit s of the result is set iff some subset of
// `values` sums to s (s <= max_sum). Returns an empty SumBits (size 0)
// when the budget dies first.
SumBits reachable_sums(const std::vector<std::uint64_t>& values, std::uint64_t max_sum,
                       Budget& budget);

}  // namespace layered
