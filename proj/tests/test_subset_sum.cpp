#include <doctest.h>

#include <layered/errors.hpp>
#include <layered/subset_sum.hpp>

#include <numeric>
#include <random>

#include "support/oracles.hpp"

using namespace layered;

TEST_CASE("subset_sum agrees with brute force on random instances") {
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 300; ++round) {
        const int count = 1 + rng() % 12;
        std::vector<std::uint64_t> values;
        while (values.size() < static_cast<std::size_t>(count)) {
            const std::uint64_t v = 1 + rng() % 200;
            if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
        }
        const std::uint64_t total = std::accumulate(values.begin(), values.end(), std::uint64_t(0));
        const std::uint64_t target = rng() % (total + 20);

        Budget budget;
        const SubsetSumResult got = subset_sum(values, target, budget);
        REQUIRE(got.status != SearchStatus::kUnknown);
        CHECK((got.status == SearchStatus::kFound) == oracle::subset_sums_to(values, target));
        if (got.status == SearchStatus::kFound) {
            // The witness must be a sub-multiset of the input with the right sum.
            std::uint64_t sum = 0;
            auto pool = values;
            for (const std::uint64_t v : got.chosen) {
                const auto it = std::find(pool.begin(), pool.end(), v);
                REQUIRE(it != pool.end());
                pool.erase(it);
                sum += v;
            }
            CHECK(sum == target);
        }
    }
}

TEST_CASE("witness choice is deterministic and greedy-by-largest") {
    const std::vector<std::uint64_t> values{3, 5, 8, 11, 20};
    Budget b1, b2;
    const auto r1 = subset_sum(values, 28, b1);
    const auto r2 = subset_sum(values, 28, b2);
    REQUIRE(r1.status == SearchStatus::kFound);
    CHECK(r1.chosen == r2.chosen);
    // 28 = 20 + 8 admits the largest value, so the greedy witness starts at 20.
    CHECK(r1.chosen.front() == 20);
}

TEST_CASE("trivial targets") {
    Budget budget;
    CHECK(subset_sum({}, 0, budget).status == SearchStatus::kFound);
    CHECK(subset_sum({}, 1, budget).status == SearchStatus::kNotFound);
    CHECK(subset_sum({5}, 5, budget).status == SearchStatus::kFound);
    CHECK(subset_sum({5}, 4, budget).status == SearchStatus::kNotFound);
    CHECK_THROWS_AS(subset_sum({5, 5}, 10, budget), DomainError);  // divisor sets never repeat
}

TEST_CASE("exhausted budget reports Unknown, never a wrong verdict") {
    // A dense instance with an unreachable target just above a cliff.
    std::vector<std::uint64_t> values;
    std::mt19937_64 rng(31);
    for (int i = 0; i < 48; ++i) values.push_back(1'000'000'000ULL + rng() % 1'000'000'000);
    std::uint64_t total = std::accumulate(values.begin(), values.end(), std::uint64_t(0));
    Budget tiny(4);
    const auto r = subset_sum(values, total / 2 + 1, tiny);
    CHECK(r.status == SearchStatus::kUnknown);
}

TEST_CASE("reachable_sums equals the oracle bitset") {
    std::mt19937_64 rng(77);
    for (int round = 0; round < 100; ++round) {
        const int count = 1 + rng() % 10;
        std::vector<std::uint64_t> values;
        for (int i = 0; i < count; ++i) values.push_back(1 + rng() % 150);
        const std::uint64_t cap = 1 + rng() % 600;
        Budget budget;
        const SumBits bits = reachable_sums(values, cap, budget);
        REQUIRE(bits.size() != 0);
        const auto ref = oracle::reachable(values, cap);
        for (std::uint64_t s = 0; s <= cap; ++s) CHECK(bits.test(s) == oracle::test_bit(ref, s));
    }
}
