#include "layered/bitkernels.hpp"

#include <atomic>
#include <bit>

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#endif
#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace layered::kern {
namespace {
std::atomic<bool> g_force_scalar{false};
}

void force_scalar(bool on) { g_force_scalar.store(on, std::memory_order_relaxed); }

Level active_level() {
    if (g_force_scalar.load(std::memory_order_relaxed)) return Level::kScalar;
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2")) return Level::kAvx2;
#endif
#if defined(__aarch64__)
    return Level::kNeon;
#endif
    return Level::kScalar;
}

std::string level_name(Level level) {
    switch (level) {
        case Level::kAvx2: return "avx2";
        case Level::kNeon: return "neon";
        default: return "scalar";
    }
}

namespace detail {

// Reference semantics. Descending index order makes the in-place update
// safe: every read index is <= the write index, and equal-index reads see
// the pre-update value because the load happens before the store.
void or_shift_self_scalar(std::uint64_t* words, std::size_t nwords, std::uint64_t shift_bits) {
    const std::size_t w = static_cast<std::size_t>(shift_bits >> 6);
    const unsigned b = static_cast<unsigned>(shift_bits & 63);
    if (w >= nwords) return;
    if (b == 0) {
        if (w == 0) return;
        for (std::size_t i = nwords; i-- > w;) words[i] |= words[i - w];
        return;
    }
    for (std::size_t i = nwords; i-- > w + 1;) {
        words[i] |= (words[i - w] << b) | (words[i - w - 1] >> (64 - b));
    }
    words[w] |= words[0] << b;
}

#if defined(__x86_64__) || defined(_M_X64)
__attribute__((target("avx2"))) void or_shift_self_avx2(std::uint64_t* words, std::size_t nwords,
                                                        std::uint64_t shift_bits) {
    const std::size_t w = static_cast<std::size_t>(shift_bits >> 6);
    const unsigned b = static_cast<unsigned>(shift_bits & 63);
    if (w >= nwords) return;
    if (b == 0) {
        if (w == 0) return;
        std::size_t hi = nwords;  // exclusive upper end of the unprocessed range [w, hi)
        while (hi - w >= 4) {
            const std::size_t i = hi - 4;
            __m256i src = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i - w));
            __m256i dst = _mm256_loadu_si256(reinterpret_cast<__m256i*>(words + i));
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(words + i), _mm256_or_si256(dst, src));
            hi = i;
        }
        for (std::size_t i = hi; i-- > w;) words[i] |= words[i - w];
        return;
    }
    const __m256i vb = _mm256_set1_epi64x(static_cast<long long>(b));
    const __m256i vrb = _mm256_set1_epi64x(static_cast<long long>(64 - b));
    std::size_t hi = nwords;  // unprocessed range is [w + 1, hi); index w is done last
    while (hi >= w + 1 + 4) {
        const std::size_t i = hi - 4;
        __m256i lo = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i - w - 1));
        __m256i hi4 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i - w));
        __m256i shifted = _mm256_or_si256(_mm256_sllv_epi64(hi4, vb), _mm256_srlv_epi64(lo, vrb));
        __m256i dst = _mm256_loadu_si256(reinterpret_cast<__m256i*>(words + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(words + i), _mm256_or_si256(dst, shifted));
        hi = i;
    }
    for (std::size_t i = hi; i-- > w + 1;) {
        words[i] |= (words[i - w] << b) | (words[i - w - 1] >> (64 - b));
    }
    words[w] |= words[0] << b;
}
#endif

#if defined(__aarch64__)
void or_shift_self_neon(std::uint64_t* words, std::size_t nwords, std::uint64_t shift_bits) {
    const std::size_t w = static_cast<std::size_t>(shift_bits >> 6);
    const unsigned b = static_cast<unsigned>(shift_bits & 63);
    if (w >= nwords) return;
    if (b == 0) {
        if (w == 0) return;
        std::size_t hi = nwords;
        while (hi - w >= 2) {
            const std::size_t i = hi - 2;
            uint64x2_t src = vld1q_u64(words + i - w);
            uint64x2_t dst = vld1q_u64(words + i);
            vst1q_u64(words + i, vorrq_u64(dst, src));
            hi = i;
        }
        for (std::size_t i = hi; i-- > w;) words[i] |= words[i - w];
        return;
    }
    const int64x2_t vb = vdupq_n_s64(static_cast<std::int64_t>(b));
    const int64x2_t vrb = vdupq_n_s64(-static_cast<std::int64_t>(64 - b));
    std::size_t hi = nwords;
    while (hi >= w + 1 + 2) {
        const std::size_t i = hi - 2;
        uint64x2_t lo = vld1q_u64(words + i - w - 1);
        uint64x2_t hi2 = vld1q_u64(words + i - w);
        uint64x2_t shifted = vorrq_u64(vshlq_u64(hi2, vb), vshlq_u64(lo, vrb));
        uint64x2_t dst = vld1q_u64(words + i);
        vst1q_u64(words + i, vorrq_u64(dst, shifted));
        hi = i;
    }
    for (std::size_t i = hi; i-- > w + 1;) {
        words[i] |= (words[i - w] << b) | (words[i - w - 1] >> (64 - b));
    }
    words[w] |= words[0] << b;
}
#endif

}  // namespace detail

void or_shift_self(std::uint64_t* words, std::size_t nwords, std::uint64_t shift_bits) {
    if (shift_bits == 0 || nwords == 0) return;
    switch (active_level()) {
#if defined(__x86_64__) || defined(_M_X64)
        case Level::kAvx2:
            detail::or_shift_self_avx2(words, nwords, shift_bits);
            return;
#endif
#if defined(__aarch64__)
        case Level::kNeon:
            detail::or_shift_self_neon(words, nwords, shift_bits);
            return;
#endif
        default:
            detail::or_shift_self_scalar(words, nwords, shift_bits);
            return;
    }
}

bool all_ones_in_range(const std::uint64_t* words, std::uint64_t first_bit, std::uint64_t last_bit) {
    std::uint64_t wf = first_bit >> 6, wl = last_bit >> 6;
    const unsigned bf = static_cast<unsigned>(first_bit & 63);
    const unsigned bl = static_cast<unsigned>(last_bit & 63);
    if (wf == wl) {
        const std::uint64_t mask = (~std::uint64_t(0) << bf) &
                                   (~std::uint64_t(0) >> (63 - bl));
        return (words[wf] & mask) == mask;
    }
    const std::uint64_t head = ~std::uint64_t(0) << bf;
    if ((words[wf] & head) != head) return false;
    for (std::uint64_t i = wf + 1; i < wl; ++i) {
        if (words[i] != ~std::uint64_t(0)) return false;
    }
    const std::uint64_t tail = ~std::uint64_t(0) >> (63 - bl);
    return (words[wl] & tail) == tail;
}

std::uint64_t count_ones(const std::uint64_t* words, std::size_t nwords) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < nwords; ++i) total += std::popcount(words[i]);
    return total;
}

}  // namespace layered::kern
