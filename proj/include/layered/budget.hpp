#pragma once

#include <cstdint>

namespace layered {

// Deterministic work meter. A unit is one branch-and-bound node, or 1024
// words of reachability-table traffic (so table passes are metered without
// dominating the count). Wall-clock never enters any decision.
class Budget {
public:
    static constexpr std::uint64_t kDefaultLimit = 100'000'000;

    explicit Budget(std::uint64_t limit = kDefaultLimit) : limit_(limit) {}

    // Returns false once the meter is exhausted (callers then report Unknown).
    bool charge(std::uint64_t units) {
        spent_ += units;
        return spent_ <= limit_;
    }

    bool charge_words(std::uint64_t words) { return charge(words / 1024 + 1); }

    bool exhausted() const { return spent_ > limit_; }
    std::uint64_t spent() const { return spent_; }
    std::uint64_t limit() const { return limit_; }

private:
    std::uint64_t limit_;
    std::uint64_t spent_ = 0;
};

}  // namespace layered
