#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "layered/errors.hpp"

namespace layered {

// Arbitrary-precision non-negative integer. Arithmetic is exact everywhere;
// floating point is never used for number-theoretic data.
using Natural = boost::multiprecision::cpp_int;

// Exact rational, always kept in lowest terms by the backend.
using Ratio = boost::multiprecision::cpp_rational;

struct PrimePower {
    Natural prime;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower& a, const PrimePower& b) {
        return a.prime == b.prime && a.exponent == b.exponent;
    }
};

// Prime factorization with strictly increasing primes and exponents >= 1.
// The empty factorization represents 1.
struct Factorization {
    std::vector<PrimePower> factors;

    friend bool operator==(const Factorization& a, const Factorization& b) {
        return a.factors == b.factors;
    }
};

// All divisors of n in ascending order.
struct DivisorSet {
    Natural n;
    std::vector<Natural> divisors;
};

inline constexpr std::uint64_t kDefaultDivisorCap = std::uint64_t(1) << 21;

// Deterministic primality test. Exact for all n < 3.3e24 (fixed
// Miller-Rabin base set); above that it uses a fixed extended base list,
// which is deterministic and has no known counterexample.
bool is_prime(const Natural& n);
bool is_prime_u64(std::uint64_t n);

// Factors n >= 1. Trial division below 10^6, then Pollard rho with
// primality certification for the cofactors.
Factorization factorize(const Natural& n);
Factorization factorize_u64(std::uint64_t n);

// Throws DomainError unless primes are strictly increasing, prime, and all
// exponents are >= 1.
void validate(const Factorization& f);

Natural value_of(const Factorization& f);
Natural sigma(const Factorization& f);
Natural euler_phi(const Factorization& f);
Natural divisor_count(const Factorization& f);

// sigma(n)/n in lowest terms.
Ratio abundancy(const Factorization& f);

// Ascending divisor list. Refuses (ResourceError) when the divisor count
// exceeds max_count.
DivisorSet divisors(const Factorization& f, std::uint64_t max_count = kDefaultDivisorCap);

// Factorization of n! via prime-power valuations (no multiplication of n!).
Factorization factorial_factorization(unsigned n);

// Narrowing helpers for the uint64-based partition engine.
std::optional<std::uint64_t> to_u64(const Natural& n);
std::optional<std::vector<std::uint64_t>> to_u64(const std::vector<Natural>& values);

Natural pow_natural(const Natural& base, unsigned exponent);

}  // namespace layered
