#include <doctest.h>

#include <layered/chains.hpp>
#include <layered/errors.hpp>
#include <layered/partition.hpp>

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

using namespace layered;

namespace {

PrimeTuple tuple_of(std::initializer_list<unsigned> primes) {
    std::vector<Natural> v;
    for (unsigned p : primes) v.push_back(p);
    return make_prime_tuple(v);
}

}  // namespace

TEST_CASE("crt_solve against exhaustive search on small systems") {
    std::mt19937_64 rng(20260819);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<std::uint64_t> moduli;
        std::uint64_t l = 1;
        const int count = 2 + int(rng() % 3);
        for (int i = 0; i < count; ++i) {
            const std::uint64_t m = 2 + rng() % 30;
            if (l * m / std::gcd(l, m) > 1000000) break;
            moduli.push_back(m);
            l = std::lcm(l, m);
        }
        if (moduli.empty()) continue;

        std::vector<Congruence> system;
        for (const std::uint64_t m : moduli)
            system.push_back({Natural(m), Natural(rng() % m)});

        // Exhaustive scan of one full period.
        std::optional<std::uint64_t> brute;
        for (std::uint64_t x = 0; x < l && !brute; ++x) {
            bool ok = true;
            for (std::size_t i = 0; i < moduli.size(); ++i)
                ok = ok && (x % moduli[i] == system[i].residue);
            if (ok) brute = x;
        }

        const auto got = crt_solve(system);
        CHECK(got.has_value() == brute.has_value());
        if (got && brute) {
            CHECK(*got == *brute);
            // The solution class is unique modulo the lcm.
            for (std::uint64_t x = *brute + 1; x < l; ++x) {
                bool ok = true;
                for (std::size_t i = 0; i < moduli.size(); ++i)
                    ok = ok && (x % moduli[i] == system[i].residue);
                CHECK(!ok);
            }
        }
    }
}

TEST_CASE("crt_solve edge cases") {
    // Non-coprime but consistent.
    const auto a = crt_solve({{Natural(4), Natural(2)}, {Natural(8), Natural(6)}});
    REQUIRE(a.has_value());
    CHECK(*a == 6);

    // Non-coprime and inconsistent.
    CHECK(!crt_solve({{Natural(2), Natural(0)}, {Natural(4), Natural(1)}}).has_value());

    // Empty system: everything solves it, smallest non-negative is 0.
    const auto e = crt_solve({});
    REQUIRE(e.has_value());
    CHECK(*e == 0);

    CHECK_THROWS_AS(crt_solve({{Natural(0), Natural(0)}}), DomainError);
}

TEST_CASE("make_prime_tuple validates and sorts") {
    const PrimeTuple t = make_prime_tuple({Natural(7), Natural(3), Natural(5)});
    REQUIRE(t.primes.size() == 3);
    CHECK(t.primes[0] == 3);
    CHECK(t.primes[2] == 7);

    CHECK_THROWS_AS(make_prime_tuple({Natural(3), Natural(9)}), DomainError);
    CHECK_THROWS_AS(make_prime_tuple({Natural(3), Natural(3)}), DomainError);
    CHECK(make_prime_tuple({}).primes.empty());
}

TEST_CASE("lmax landmark values on initial odd prime tuples") {
    CHECK(lmax(tuple_of({})).value == 0);
    CHECK(lmax(tuple_of({3})).value == 1);
    CHECK(lmax(tuple_of({3, 5})).value == 2);
    CHECK(lmax(tuple_of({3, 5, 7})).value == 4);
    CHECK(lmax(tuple_of({3, 5, 7, 11})).value == 6);
    CHECK(lmax(tuple_of({3, 5, 7, 11, 13})).value == 10);
    CHECK(lmax(tuple_of({3, 5, 7, 11, 13, 17})).value == 12);

    // The returned witness is a genuine run of that length.
    const LmaxResult r = lmax(tuple_of({3, 5, 7, 11}));
    CHECK(r.witness.length == r.value);
    CHECK(validate_chain(r.witness));

    // Budget refusal: the tuple's product exceeds the scan budget.
    CHECK_THROWS_AS(lmax(tuple_of({3, 5, 7, 11, 13, 17, 19, 23, 29}), 1000000),
                    ResourceError);
}

TEST_CASE("lmax grows strictly as primes join the tuple, within sandwich bounds") {
    std::mt19937_64 rng(99173);
    const unsigned pool[] = {3, 5, 7, 11, 13, 17, 19, 23};
    for (int trial = 0; trial < 12; ++trial) {
        // Random ascending subset of the pool with a small product.
        std::vector<Natural> primes;
        std::uint64_t product = 1;
        for (unsigned p : pool) {
            if (rng() % 2 == 0) continue;
            if (product * p > 900000) break;
            primes.push_back(p);
            product *= p;
        }
        if (primes.empty()) continue;

        const PrimeTuple t = make_prime_tuple(primes);
        const LmaxResult r = lmax(t);
        const Natural total(product);
        const Natural phi = euler_phi(factorize(total));

        // m <= lmax <= P - phi(P).
        CHECK(r.value >= primes.size());
        CHECK(Natural(r.value) <= total - phi);
        CHECK(validate_chain(r.witness));

        // Dropping the last prime strictly shrinks the maximal run.
        if (primes.size() >= 2) {
            std::vector<Natural> shorter(primes.begin(), primes.end() - 1);
            CHECK(lmax(make_prime_tuple(shorter)).value < r.value);
        }
    }
}

TEST_CASE("crt_chain_start produces a validated run hit by the primes in order") {
    const GcdChainWitness w = crt_chain_start(tuple_of({3, 5}));
    CHECK(w.start == 9);
    CHECK(w.length >= 2);
    CHECK(validate_chain(w));

    const GcdChainWitness w4 = crt_chain_start(tuple_of({3, 5, 7, 11}));
    CHECK(validate_chain(w4));
    // p_i divides start + i - 1.
    Natural probe = w4.start;
    for (const auto& p : w4.primes) {
        CHECK(probe % p == 0);
        probe += 1;
    }
}

TEST_CASE("validate_chain rejects runs with an uncovered element") {
    GcdChainWitness bad;
    bad.start = 9;
    bad.length = 4;  // 9,10,11,12: 11 shares nothing with 3*5
    bad.primes = {Natural(3), Natural(5)};
    CHECK(!validate_chain(bad));
    bad.length = 2;  // 9,10
    CHECK(validate_chain(bad));
}

TEST_CASE("gap bounds from the smallest k-layered factorizations") {
    CHECK(gap_bound(factorize(Natural(1)), true) == 0);
    CHECK(gap_bound(factorize(Natural(6)), true) == 12);
    CHECK(gap_bound(factorize(Natural(120)), true) == 360);
    CHECK(gap_bound(factorize(Natural(27720)), true) == 194040);
    CHECK(gap_bound(factorize(Natural(147026880)), true) == Natural("1911349440"));

    // With the even part included the run through 2 lengthens the bound.
    CHECK(gap_bound(factorize(Natural(6)), false) == 24);
}

TEST_CASE("observed gaps between consecutive 2-layered numbers") {
    const GapScan scan = verify_gap_empirically(2, 5000);
    CHECK(scan.k == 2);
    CHECK(scan.max_gap == 12);
    CHECK(scan.lower == 282);
    CHECK(scan.upper == 294);

    const GapScan unit = verify_gap_empirically(1, 100);
    CHECK(unit.max_gap == 1);
}

TEST_CASE("a 2-layered multiple of 6 appears in every window 6(s+1), 6(s+2)") {
    for (std::uint64_t s = 1; s <= 1000; ++s) {
        const bool first = decide_k_layered(Natural(6 * (s + 1)), 2).outcome == Outcome::kProven;
        const bool second = decide_k_layered(Natural(6 * (s + 2)), 2).outcome == Outcome::kProven;
        CHECK((first || second));
    }
}
