#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "layered/arith.hpp"
#include "layered/partition.hpp"

namespace layered {

struct Congruence {
    Natural modulus;  // >= 1
    Natural residue;
};

// Smallest non-negative solution of a simultaneous congruence system; the
// moduli need not be pairwise coprime. nullopt when the system is
// inconsistent. Zero moduli throw DomainError.
std::optional<Natural> crt_solve(const std::vector<Congruence>& congruences);

struct PrimeTuple {
    std::vector<Natural> primes;  // ascending, distinct, each certified prime
};

// Validates and normalizes (sorts) a prime tuple; DomainError on composites
// or duplicates. An empty tuple is allowed.
PrimeTuple make_prime_tuple(const std::vector<Natural>& primes);

struct GcdChainWitness {
    Natural start = 0;  // positive
    std::uint64_t length = 0;
    std::vector<Natural> primes;
};

// Every element of [start, start+length) shares a factor with the tuple's
// product. Direct gcd evaluation.
bool validate_chain(const GcdChainWitness& witness);

// A positive start a with p_i | a + (i-1), i.e. a run of length >= m hit by
// the m primes in order.
GcdChainWitness crt_chain_start(const PrimeTuple& tuple);

struct LmaxResult {
    std::uint64_t value = 0;
    GcdChainWitness witness;
};

// Longest run of consecutive integers all sharing a factor with the tuple's
// product. Exact: scans one full period (plus wrap) of the product, so the
// product must stay under modulus_budget (ResourceError otherwise). The
// witness is the first run of maximal length. Empty tuple -> 0.
LmaxResult lmax(const PrimeTuple& tuple, std::uint64_t modulus_budget = 1'000'000'000);

// Upper bound (L+1) * n on gaps between multiples of n that share its prime
// support, where L is lmax over n's prime factors (odd factors only when
// good is set). The empty-support case (n = 1) pins the bound to 0.
Natural gap_bound(const Factorization& smallest, bool good,
                  std::uint64_t modulus_budget = 1'000'000'000);

struct GapScan {
    unsigned k = 0;
    Natural max_gap = 0;  // largest gap between consecutive terms found
    Natural lower = 0;    // ...attained between these two terms
    Natural upper = 0;
};

// Largest observed gap between consecutive k-layered numbers up to the given
// bound (k = 1: every integer qualifies, so the gap is identically 1).
GapScan verify_gap_empirically(unsigned k, std::uint64_t up_to, const SolverConfig& config = {});

}  // namespace layered
