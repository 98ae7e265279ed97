#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace layered::kern {

// Dense bit kernels behind runtime dispatch. The scalar versions are the
// reference semantics; wider variants must produce bit-identical results
// and are selected once per process from CPU capabilities.
//
// or_shift_self: words[i] |= words[i] << shift_bits, over a word array of
// length nwords, where the shift is measured in bits across the whole
// array (bits shifted past the top word are dropped). This is the inner
// step of subset-sum reachability: reach |= reach << value.
//
// any_zero_in_range / all_ones_in_range query bit windows.

enum class Level { kScalar, kAvx2, kNeon };

Level active_level();
std::string level_name(Level level);

// Force the scalar reference path (used by equivalence tests). Passing
// false restores CPU-based selection.
void force_scalar(bool on);

void or_shift_self(std::uint64_t* words, std::size_t nwords, std::uint64_t shift_bits);

// first_bit/last_bit form an inclusive bit range; requires first <= last < 64*nwords.
bool all_ones_in_range(const std::uint64_t* words, std::uint64_t first_bit, std::uint64_t last_bit);

std::uint64_t count_ones(const std::uint64_t* words, std::size_t nwords);

namespace detail {
void or_shift_self_scalar(std::uint64_t* words, std::size_t nwords, std::uint64_t shift_bits);
#if defined(__x86_64__) || defined(_M_X64)
void or_shift_self_avx2(std::uint64_t* words, std::size_t nwords, std::uint64_t shift_bits);
#endif
#if defined(__aarch64__)
void or_shift_self_neon(std::uint64_t* words, std::size_t nwords, std::uint64_t shift_bits);
#endif
}  // namespace detail

}  // namespace layered::kern
