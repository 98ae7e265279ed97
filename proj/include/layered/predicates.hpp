#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "layered/arith.hpp"
#include "layered/budget.hpp"

namespace layered {

enum class DeficiencyClass { kDeficient, kPerfect, kAbundant };

DeficiencyClass classify_deficiency(const Factorization& f);

// sigma(n)/n >= k.
bool is_k_abundant(const Factorization& f, unsigned k);

// k-abundant and k | sigma(n).
bool is_good_k_abundant(const Factorization& f, unsigned k);

// Screen for k-layered candidates. `ok` is false with `reason` naming the
// first violated condition among: k | sigma(n); for even k an odd prime
// factor with odd exponent; sigma(n) >= k*n.
struct NecessaryCheck {
    bool ok = true;
    std::string reason;
};
NecessaryCheck necessary_k_layered(const Factorization& f, unsigned k);

// Every integer in [1, sigma(n)] is a sum of distinct divisors of n.
// Decided by the classical chain criterion on the factorization.
bool is_practical(const Factorization& f);

// Every integer strictly between 2 and sigma(n) - 2 is a sum of distinct
// divisors. Odd n (except 3, excluded by the classical statement) uses the
// divisor-chain criterion; even n is checked definitionally through the
// reachability table (resource-capped).
bool is_almost_practical(const Factorization& f,
                         std::uint64_t table_bit_budget = std::uint64_t(1) << 28,
                         std::uint64_t divisor_cap = kDefaultDivisorCap);

struct NearPerfectWitness {
    Natural n;
    Natural d;  // the redundant proper divisor: sigma(n) = 2n + d
};

std::optional<NearPerfectWitness> is_near_perfect(const Factorization& f);

// Some proper-divisor subset sums to n. Exhaustive under the budget;
// throws ResourceError when the budget dies first (weirdness is never
// asserted from a truncated search).
bool is_semiperfect(const Factorization& f, Budget& budget,
                    std::uint64_t table_bit_budget = std::uint64_t(1) << 28,
                    std::uint64_t divisor_cap = kDefaultDivisorCap);

// Abundant but not semiperfect.
bool is_weird(const Factorization& f, Budget& budget,
              std::uint64_t table_bit_budget = std::uint64_t(1) << 28,
              std::uint64_t divisor_cap = kDefaultDivisorCap);

struct MultiperfectWitness {
    Natural n;
    unsigned k = 0;  // sigma(n) = k * n, k >= 2
};

std::optional<MultiperfectWitness> is_k_multiperfect(const Factorization& f);

// Cheap structural shortcuts for the two-equal-parts question. Returns a
// definite answer when one of the known shapes applies (practical or odd
// almost-practical n; exactly two prime factors; near-perfect), nullopt
// otherwise. Never contradicts the full solver.
std::optional<bool> zumkeller_fast_paths(const Factorization& f);

}  // namespace layered
