#include <doctest.h>

#include <layered/arith.hpp>

#include <numeric>
#include <random>

#include "support/oracles.hpp"

using namespace layered;

TEST_CASE("sigma, divisor count, divisors agree with direct summation") {
    std::mt19937_64 rng(20240801);
    std::uniform_int_distribution<std::uint64_t> pick(1, 1'000'000);
    for (int i = 0; i < 400; ++i) {
        const std::uint64_t n = pick(rng);
        const Factorization f = factorize(Natural(n));
        CHECK(value_of(f) == n);
        const auto ds = divisors(f);
        const auto ref = oracle::divisors(n);
        REQUIRE(ds.divisors.size() == ref.size());
        Natural total = 0;
        for (std::size_t j = 0; j < ref.size(); ++j) {
            CHECK(ds.divisors[j] == ref[j]);
            total += ds.divisors[j];
        }
        CHECK(sigma(f) == total);
        CHECK(divisor_count(f) == Natural(ref.size()));
    }
}

TEST_CASE("sigma and euler_phi are multiplicative on coprime pairs") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> pick(2, 10'000);
    int done = 0;
    while (done < 200) {
        const std::uint64_t a = pick(rng), b = pick(rng);
        if (std::gcd(a, b) != 1) continue;
        ++done;
        const auto fa = factorize(Natural(a)), fb = factorize(Natural(b));
        const auto fab = factorize(Natural(a) * b);
        CHECK(sigma(fab) == sigma(fa) * sigma(fb));
        CHECK(euler_phi(fab) == euler_phi(fa) * euler_phi(fb));
    }
}

TEST_CASE("abundancy is >= 1 with equality only at 1") {
    CHECK(abundancy(factorize(Natural(1))) == Ratio(1));
    for (std::uint64_t n = 2; n <= 2000; ++n) {
        CHECK(abundancy(factorize(Natural(n))) > Ratio(1));
    }
    CHECK(abundancy(factorize(Natural(6))) == Ratio(2));
    CHECK(abundancy(factorize(Natural(945))) == Ratio(128, 63));
}

TEST_CASE("primality matches a sieve") {
    std::vector<bool> composite(10'000, false);
    for (std::size_t p = 2; p < composite.size(); ++p)
        for (std::size_t m = 2 * p; m < composite.size(); m += p) composite[m] = true;
    for (std::uint64_t n = 2; n < 10'000; ++n) {
        CHECK(is_prime_u64(n) == !composite[n]);
        CHECK(is_prime(Natural(n)) == !composite[n]);
    }
}

TEST_CASE("primality on large naturals") {
    // 2^89 - 1 is a Mersenne prime; 2^89 + 1 is divisible by 3.
    const Natural m89 = pow_natural(2, 89) - 1;
    CHECK(is_prime(m89));
    CHECK_FALSE(is_prime(m89 + 2));
}

TEST_CASE("factorize handles prime powers, semiprimes, and big smooth numbers") {
    const Factorization f = factorize(pow_natural(2, 40) * pow_natural(3, 20) * 1'000'003);
    CHECK(value_of(f) == pow_natural(2, 40) * pow_natural(3, 20) * 1'000'003);
    validate(f);

    const Natural p = Natural("1000000007"), q = Natural("1000000009");
    const Factorization semi = factorize(p * q);
    REQUIRE(semi.factors.size() == 2);
    CHECK(semi.factors[0].prime == p);
    CHECK(semi.factors[1].prime == q);
}

TEST_CASE("validate rejects malformed factorizations") {
    Factorization bad;
    bad.factors = {{Natural(3), 1}, {Natural(2), 1}};  // out of order
    CHECK_THROWS_AS(validate(bad), DomainError);
    bad.factors = {{Natural(4), 1}};  // composite
    CHECK_THROWS_AS(validate(bad), DomainError);
    bad.factors = {{Natural(2), 0}};  // zero exponent
    CHECK_THROWS_AS(validate(bad), DomainError);
}

TEST_CASE("divisor enumeration respects the cap") {
    const Factorization f = factorize(Natural(720720));  // 240 divisors
    CHECK_THROWS_AS(divisors(f, 100), ResourceError);
    CHECK(divisors(f, 240).divisors.size() == 240);
}

TEST_CASE("factorial factorization equals factorizing the product") {
    Natural fact = 1;
    for (unsigned n = 1; n <= 12; ++n) {
        fact *= n;
        CHECK(factorial_factorization(n) == factorize(fact));
    }
    // Spot-check a large one without building the factorial first:
    // v_2(20!) = 10 + 5 + 2 + 1 = 18, v_19(20!) = 1.
    const Factorization f20 = factorial_factorization(20);
    CHECK(f20.factors.front().prime == 2);
    CHECK(f20.factors.front().exponent == 18);
    CHECK(f20.factors.back().prime == 19);
    CHECK(f20.factors.back().exponent == 1);
}

TEST_CASE("u64 narrowing round-trips and rejects overflow") {
    CHECK(to_u64(Natural(0)) == std::uint64_t(0));
    CHECK(to_u64(Natural("18446744073709551615")) == ~std::uint64_t(0));
    CHECK_FALSE(to_u64(Natural("18446744073709551616")).has_value());
    const std::vector<Natural> mixed{Natural(1), Natural("18446744073709551616")};
    CHECK_FALSE(to_u64(mixed).has_value());
}
