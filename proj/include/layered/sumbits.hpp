#pragma once

#include <cstdint>
#include <vector>

#include "layered/bitkernels.hpp"

namespace layered {

// Reachable-sum bitset: bit s is set when sum s is attainable. Backed by
// the dispatched bit kernels; bits above size() are kept clear so range
// queries stay exact.
class SumBits {
public:
    SumBits() = default;
    explicit SumBits(std::uint64_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    std::uint64_t size() const { return nbits_; }
    std::uint64_t words() const { return words_.size(); }

    bool test(std::uint64_t bit) const {
        return (words_[bit >> 6] >> (bit & 63)) & 1;
    }
    void set(std::uint64_t bit) { words_[bit >> 6] |= std::uint64_t(1) << (bit & 63); }

    // this |= (this << add); sums above size() fall off.
    void or_shift(std::uint64_t add) {
        if (add >= nbits_) return;
        kern::or_shift_self(words_.data(), words_.size(), add);
        trim();
    }

    // True when every bit in [first, last] is set (inclusive); empty ranges
    // (first > last) are vacuously true.
    bool all_in_range(std::uint64_t first, std::uint64_t last) const {
        if (first > last) return true;
        return kern::all_ones_in_range(words_.data(), first, last);
    }

    std::uint64_t popcount() const { return kern::count_ones(words_.data(), words_.size()); }

    const std::uint64_t* data() const { return words_.data(); }

    friend bool operator==(const SumBits& a, const SumBits& b) {
        return a.nbits_ == b.nbits_ && a.words_ == b.words_;
    }

private:
    void trim() {
        const unsigned used = static_cast<unsigned>(nbits_ & 63);
        if (used != 0 && !words_.empty()) {
            words_.back() &= (~std::uint64_t(0)) >> (64 - used);
        }
    }

    std::uint64_t nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace layered
