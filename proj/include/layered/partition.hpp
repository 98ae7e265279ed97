#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "layered/arith.hpp"
#include "layered/budget.hpp"
#include "layered/subset_sum.hpp"

namespace layered {

// A claimed partition of the divisor set of n into k parts with equal sums.
// Parts hold ascending values; the struct makes no validity promise of its
// own — verify_certificate is the gatekeeper.
struct PartitionCertificate {
    Natural n;
    unsigned k = 0;
    std::vector<std::vector<Natural>> parts;
};

enum class Outcome { kProven, kRefuted, kUnknown };

struct Decision {
    Outcome outcome = Outcome::kUnknown;
    // Present exactly when outcome == kProven.
    std::optional<PartitionCertificate> certificate;
    // For kRefuted: the violated necessary condition, or the note that an
    // exhaustive search completed. For kUnknown: what ran out.
    std::string reason;
    std::uint64_t budget_spent = 0;
};

struct SolverConfig {
    std::uint64_t node_budget = Budget::kDefaultLimit;
    std::uint64_t table_bit_budget = std::uint64_t(1) << 28;
    std::uint64_t divisor_cap = kDefaultDivisorCap;
};

// Decides whether the divisors of n split into k equal-sum parts.
// Pipeline: necessary-condition screen, then an exact search that returns
// a verified certificate, a definitive refutation, or Unknown on budget.
Decision decide_k_layered(const Natural& n, unsigned k, const SolverConfig& config = {});

// k = 2 specialization; consults the cheap structural shortcuts first.
Decision is_zumkeller(const Natural& n, const SolverConfig& config = {});

// Equal split of the proper divisors (n excluded). A Proven decision's
// certificate partitions D_n \ {n}; pass proper_divisors_only = true when
// verifying it.
Decision is_half_zumkeller(const Natural& n, const SolverConfig& config = {});

struct VerifyResult {
    bool valid = false;
    std::string diagnostic;  // empty when valid; names the first violation otherwise
};

VerifyResult verify_certificate(const PartitionCertificate& cert,
                                bool proper_divisors_only = false,
                                std::uint64_t divisor_cap = kDefaultDivisorCap);

struct DisjointSubsetsResult {
    SearchStatus status = SearchStatus::kUnknown;
    std::vector<std::vector<std::uint64_t>> parts;
};

// Finds `count` pairwise-disjoint subsets of `values`, each summing to
// `target` (values need not all be used). Complete: kNotFound means the
// whole space was covered.
DisjointSubsetsResult disjoint_equal_subsets(const std::vector<std::uint64_t>& values,
                                             std::uint64_t target, unsigned count, Budget& budget,
                                             const SubsetSumConfig& config = {});

}  // namespace layered
