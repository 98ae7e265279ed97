#include "layered/subset_sum.hpp"

#include <algorithm>

#include "layered/errors.hpp"

namespace layered {
namespace {

using u64 = std::uint64_t;

constexpr u64 kNoStopBit = ~u64(0);
constexpr std::size_t kMaxDfsValues = 65536;

void check_values(const std::vector<u64>& values) {
    for (u64 v : values) {
        if (v == 0) throw DomainError("subset_sum: values must be positive");
    }
}

// DP pass; when stop_bit is reachable the pass returns early with a
// partial table (callers that early-out only ever read stop_bit).
SumBits reach_table(const std::vector<u64>& values, u64 max_sum, u64 stop_bit, Budget& budget) {
    SumBits bits(max_sum + 1);
    bits.set(0);
    if (stop_bit != kNoStopBit && bits.test(stop_bit)) return bits;
    for (u64 v : values) {
        if (v > max_sum) continue;
        if (!budget.charge_words(bits.words())) return SumBits();
        bits.or_shift(v);
        if (stop_bit != kNoStopBit && bits.test(stop_bit)) break;
    }
    return bits;
}

SubsetSumResult solve_by_table(const std::vector<u64>& desc, u64 target, Budget& budget) {
    SubsetSumResult result;
    SumBits feasible = reach_table(desc, target, target, budget);
    if (budget.exhausted()) return result;  // kUnknown
    if (!feasible.test(target)) {
        result.status = SearchStatus::kNotFound;
        return result;
    }

    // Largest-first reconstruction. Invariant: `t` is reachable from the
    // suffix desc[i..]. Taking v requires t - v to be reachable from
    // desc[i+1..]; if it is not, some witness for t avoids v entirely.
    u64 t = target;
    std::vector<u64> suffix;
    for (std::size_t i = 0; i < desc.size() && t > 0; ++i) {
        const u64 v = desc[i];
        if (v > t) continue;
        if (v == t) {
            result.chosen.push_back(v);
            t = 0;
            break;
        }
        suffix.assign(desc.begin() + static_cast<std::ptrdiff_t>(i) + 1, desc.end());
        SumBits rest = reach_table(suffix, t, t - v, budget);
        if (budget.exhausted()) return result;  // kUnknown
        if (rest.test(t - v)) {
            result.chosen.push_back(v);
            t -= v;
        }
    }
    if (t != 0) return result;  // kUnknown (budget died between steps)
    result.status = SearchStatus::kFound;
    return result;
}

struct DfsState {
    const std::vector<u64>& desc;
    const std::vector<u64>& suffix_sum;
    Budget& budget;
    std::vector<u64> chosen;
    bool out_of_budget = false;
};

bool dfs(DfsState& s, std::size_t i, u64 t) {
    if (!s.budget.charge(1)) {
        s.out_of_budget = true;
        return false;
    }
    if (t == 0) return true;
    while (i < s.desc.size() && s.desc[i] > t) ++i;
    if (i == s.desc.size() || s.suffix_sum[i] < t) return false;
    // Include-first keeps the largest-value preference exact.
    s.chosen.push_back(s.desc[i]);
    if (dfs(s, i + 1, t - s.desc[i])) return true;
    s.chosen.pop_back();
    if (s.out_of_budget) return false;
    return dfs(s, i + 1, t);
}

SubsetSumResult solve_by_dfs(const std::vector<u64>& desc, u64 target, Budget& budget) {
    if (desc.size() > kMaxDfsValues) {
        throw ResourceError("subset_sum: value set too large for branch-and-bound (" +
                            std::to_string(desc.size()) + " values)");
    }
    std::vector<u64> suffix_sum(desc.size() + 1, 0);
    for (std::size_t i = desc.size(); i-- > 0;) {
        // Saturating: an overflowing suffix sum only weakens the prune.
        const u64 tail = suffix_sum[i + 1];
        suffix_sum[i] = tail > ~u64(0) - desc[i] ? ~u64(0) : tail + desc[i];
    }
    DfsState state{desc, suffix_sum, budget, {}, false};
    SubsetSumResult result;
    if (dfs(state, 0, target)) {
        result.status = SearchStatus::kFound;
        result.chosen = std::move(state.chosen);
    } else if (state.out_of_budget) {
        result.status = SearchStatus::kUnknown;
    } else {
        result.status = SearchStatus::kNotFound;
    }
    return result;
}

}  // namespace

SumBits reachable_sums(const std::vector<u64>& values, u64 max_sum, Budget& budget) {
    check_values(values);
    return reach_table(values, max_sum, kNoStopBit, budget);
}

SubsetSumResult subset_sum(const std::vector<u64>& values, u64 target, Budget& budget,
                           const SubsetSumConfig& config) {
    check_values(values);
    std::vector<u64> desc;
    desc.reserve(values.size());
    unsigned __int128 total = 0;
    for (u64 v : values) {
        if (v <= target) {
            desc.push_back(v);
            total += v;
        }
    }
    std::sort(desc.begin(), desc.end(), std::greater<>());
    if (std::adjacent_find(desc.begin(), desc.end()) != desc.end()) {
        throw DomainError("subset_sum: values must be distinct");
    }

    SubsetSumResult result;
    if (target == 0) {
        result.status = SearchStatus::kFound;
        return result;
    }
    if (total < target) {
        result.status = SearchStatus::kNotFound;
        return result;
    }
    if (target + 1 <= config.table_bit_budget) {
        return solve_by_table(desc, target, budget);
    }
    return solve_by_dfs(desc, target, budget);
}

}  // namespace layered
