#pragma once

// Brute-force reference implementations for the test suite. Everything here
// is deliberately naive and self-contained: trial division, a plain word-array
// reachability table, and a textbook k-bucket backtracker. None of it calls
// into the library under test.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t i = 1; i * i <= n; ++i) {
        if (n % i != 0) continue;
        small.push_back(i);
        if (i != n / i) large.push_back(n / i);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

inline std::uint64_t sigma(std::uint64_t n) {
    const auto ds = divisors(n);
    return std::accumulate(ds.begin(), ds.end(), std::uint64_t(0));
}

// Bit s of the result marks an attainable subset sum s <= cap.
inline std::vector<std::uint64_t> reachable(const std::vector<std::uint64_t>& values,
                                            std::uint64_t cap) {
    std::vector<std::uint64_t> bits(cap / 64 + 1, 0);
    bits[0] = 1;
    for (const std::uint64_t v : values) {
        if (v > cap) continue;
        const std::uint64_t word_shift = v / 64, bit_shift = v % 64;
        for (std::size_t i = bits.size(); i-- > word_shift;) {
            std::uint64_t moved = bits[i - word_shift] << bit_shift;
            if (bit_shift != 0 && i - word_shift > 0)
                moved |= bits[i - word_shift - 1] >> (64 - bit_shift);
            bits[i] |= moved;
        }
    }
    return bits;
}

inline bool test_bit(const std::vector<std::uint64_t>& bits, std::uint64_t s) {
    return (bits[s / 64] >> (s % 64)) & 1;
}

inline bool subset_sums_to(const std::vector<std::uint64_t>& values, std::uint64_t target) {
    return test_bit(reachable(values, target), target);
}

// Every integer in [1, sigma(n)] is a distinct-divisor sum.
inline bool practical(std::uint64_t n) {
    const auto ds = divisors(n);
    const std::uint64_t s = std::accumulate(ds.begin(), ds.end(), std::uint64_t(0));
    const auto bits = reachable(ds, s);
    for (std::uint64_t j = 1; j <= s; ++j)
        if (!test_bit(bits, j)) return false;
    return true;
}

// Every integer strictly between 2 and sigma(n) - 2 is a distinct-divisor sum.
inline bool almost_practical(std::uint64_t n) {
    const auto ds = divisors(n);
    const std::uint64_t s = std::accumulate(ds.begin(), ds.end(), std::uint64_t(0));
    if (s < 6) return true;  // empty range
    const auto bits = reachable(ds, s);
    for (std::uint64_t j = 3; j + 2 < s; ++j)
        if (!test_bit(bits, j)) return false;
    return true;
}

namespace detail {
inline bool place(const std::vector<std::uint64_t>& vals, std::size_t idx,
                  std::vector<std::uint64_t>& load, std::uint64_t target) {
    if (idx == vals.size()) return true;
    const std::uint64_t v = vals[idx];
    for (std::size_t b = 0; b < load.size(); ++b) {
        bool mirrored = false;  // buckets with equal loads are interchangeable
        for (std::size_t a = 0; a < b; ++a) mirrored = mirrored || load[a] == load[b];
        if (mirrored) continue;
        if (load[b] + v <= target) {
            load[b] += v;
            if (place(vals, idx + 1, load, target)) return true;
            load[b] -= v;
        }
        if (load[b] == 0) break;  // further empty buckets are symmetric
    }
    return false;
}
}  // namespace detail

// Divisor set of n splits into k equal-sum parts.
inline bool k_layered(std::uint64_t n, unsigned k) {
    const auto ds = divisors(n);
    const std::uint64_t s = std::accumulate(ds.begin(), ds.end(), std::uint64_t(0));
    if (k == 0 || s % k != 0) return false;
    const std::uint64_t target = s / k;
    if (target < n) return false;  // n itself must fit in a part
    std::vector<std::uint64_t> vals = ds;
    std::sort(vals.rbegin(), vals.rend());
    std::vector<std::uint64_t> load(k, 0);
    return detail::place(vals, 0, load, target);
}

}  // namespace oracle
