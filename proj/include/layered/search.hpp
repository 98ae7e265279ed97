#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "layered/arith.hpp"
#include "layered/partition.hpp"

namespace layered {

struct SuperabundantEntry {
    Natural n;
    Ratio abundancy;
};

// First `count` integers whose abundancy strictly exceeds that of every
// smaller integer. Enumerates candidates of the only shape a record can
// take (non-increasing exponents over an initial prime segment) under an
// adaptive bound, so the list is exact. ResourceError if the bound would
// overflow the 64-bit enumeration or count exceeds max_count.
std::vector<SuperabundantEntry> superabundant_list(std::size_t count, std::size_t max_count = 60);

// Smallest n with sigma(n)/n >= k. Found on the abundancy-record list: any
// smaller candidate would contradict the record property. k <= 5 is the
// confirmed range (ResourceError above).
Natural smallest_k_abundant(unsigned k);

// Smallest n with sigma(n)/n >= k and k | sigma(n). Starts from
// smallest_k_abundant and closes the gap with a windowed divisor-sum sieve.
Natural smallest_good_k_abundant(unsigned k);

struct SmallestLayered {
    Natural n;
    PartitionCertificate certificate;
};

// Smallest k-layered integer, with certificate. Scans the good-k-abundant
// candidates in order; an Unknown verdict on any candidate aborts with
// ResourceError naming it (skipping would silently forfeit minimality).
SmallestLayered smallest_k_layered(unsigned k, const SolverConfig& config = {});

// Divisor sums for [lo, hi), indexed n - lo. Windowed sieve: small divisors
// are marked directly, large ones through their cofactor.
std::vector<std::uint64_t> sigma_window(std::uint64_t lo, std::uint64_t hi);

// First n in [lo, hi) with sigma(n)/n >= k and k | sigma(n).
std::optional<Natural> first_good_k_abundant_in(unsigned k, std::uint64_t lo, std::uint64_t hi);

// All k-layered integers up to the bound, ascending. A divisor-sum sieve
// prefilters by the necessary conditions; survivors go to the solver.
// Unknown on a survivor -> ResourceError naming it.
std::vector<Natural> layered_sequence(unsigned k, std::uint64_t up_to,
                                      const SolverConfig& config = {});

// Per-factorial decisions for 1! .. n_max!. Routes k = 3, n >= 9 through
// the odd-part doubling construction and k = 4, n >= 11 through a product
// of two halved certificates; everything desk-scale goes to the solver.
std::vector<std::pair<unsigned, Decision>> factorial_layered_scan(unsigned k, unsigned n_max,
                                                                  const SolverConfig& config = {});

struct F3Witness {
    bool top_two_unit_exponent = false;  // two largest primes of n! appear once
    bool largest_prime_bounded = false;  // p_k <= 2^(v_2(n!))
    Natural q;                           // largest prime q <= n once in n! with q % 3 == 2
};

// Structural facts about n! (n >= 11) used by the k = 3 constructions.
F3Witness f3_witness(unsigned n);

struct PqrRecord {
    Natural n;
    unsigned alpha = 0;
    unsigned beta = 0;
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    Outcome outcome = Outcome::kUnknown;
};

// Decides 4-layered-ness across n = 2^alpha * 3^beta * p * q for primes
// 3 < p < q <= prime_bound. Desk-scale bounds only (alpha <= 8, beta <= 4,
// prime_bound <= 50).
std::vector<PqrRecord> pqr_scan(unsigned alpha_max, unsigned beta_max,
                                std::uint64_t prime_bound, const SolverConfig& config = {});

struct NearPerfectEntry {
    Natural n;
    Natural d;          // the redundant divisor: sigma(n) = 2n + d
    bool zumkeller;     // equivalent to 2 | sigma(n) for near-perfect n
    std::string family;
};

// Members of the parametric near-perfect families up to the bound, each
// re-verified from scratch before being emitted. Power-of-two parameters
// range over [1, alpha_max].
std::vector<NearPerfectEntry> near_perfect_families(unsigned alpha_max, const Natural& bound);

struct SearchRecord {
    unsigned k = 0;
    Natural smallest_abundant;
    Natural smallest_good_abundant;
    Natural smallest_layered;
    std::string abundant_provenance;
    std::string good_provenance;
    std::string layered_provenance;
};

// The three record values for one k, with how each was established.
SearchRecord search_record(unsigned k, const SolverConfig& config = {});

}  // namespace layered
