#include "layered/partition.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <string>
#include <utility>

#include "layered/errors.hpp"
#include "layered/predicates.hpp"

namespace layered {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

std::vector<Natural> to_ascending_naturals(const std::vector<u64>& part) {
    std::vector<Natural> out(part.begin(), part.end());
    std::sort(out.begin(), out.end());
    return out;
}

PartitionCertificate make_certificate(const Natural& n, unsigned k,
                                      const std::vector<std::vector<u64>>& parts) {
    PartitionCertificate cert;
    cert.n = n;
    cert.k = k;
    cert.parts.reserve(parts.size());
    for (const auto& part : parts) cert.parts.push_back(to_ascending_naturals(part));
    return cert;
}

// Complete search for a covering partition: every value must land in one of
// `k` parts of equal sum `target`. Only k-1 parts are searched explicitly;
// the leftovers form the last part by the sum accounting. Each searched part
// is anchored at the largest value still unassigned — that value has to sit
// in one of the open parts, and the open parts are interchangeable, so naming
// its part costs no completeness. Values are scanned largest-first with the
// include-branch explored before the exclude-branch.
class CoveringSearch {
  public:
    CoveringSearch(const std::vector<u64>& vals, u64 target, unsigned parts_to_find,
                   Budget& budget)
        : vals_(vals), target_(target), wanted_(parts_to_find), budget_(budget),
          used_(vals.size(), 0) {
        suffix_.assign(vals_.size() + 1, 0);
        for (std::size_t i = vals_.size(); i-- > 0;) {
            const u64 s = suffix_[i + 1] + vals_[i];
            suffix_[i] = s < suffix_[i + 1] ? ~u64(0) : s;
        }
    }

    bool run() { return next_part(0); }
    bool truncated() const { return truncated_; }

    std::vector<std::vector<u64>> assembled_parts() const {
        std::vector<std::vector<u64>> out;
        for (const auto& idx : parts_) {
            std::vector<u64> part;
            part.reserve(idx.size());
            for (std::size_t i : idx) part.push_back(vals_[i]);
            out.push_back(std::move(part));
        }
        std::vector<u64> last;
        for (std::size_t i = 0; i < vals_.size(); ++i)
            if (!used_[i]) last.push_back(vals_[i]);
        out.push_back(std::move(last));
        return out;
    }

  private:
    bool next_part(unsigned done) {
        if (done == wanted_) return true;
        std::size_t anchor = 0;
        while (anchor < vals_.size() && used_[anchor]) ++anchor;
        if (anchor == vals_.size() || vals_[anchor] > target_) return false;
        used_[anchor] = 1;
        part_.push_back(anchor);
        const bool ok = extend(done, anchor + 1, target_ - vals_[anchor]);
        if (!ok) {
            part_.pop_back();
            used_[anchor] = 0;
        }
        return ok;
    }

    bool extend(unsigned done, std::size_t from, u64 need) {
        if (truncated_) return false;
        if (!budget_.charge(1)) {
            truncated_ = true;
            return false;
        }
        if (need == 0) {
            parts_.push_back(std::move(part_));
            part_.clear();
            if (next_part(done + 1)) return true;
            part_ = std::move(parts_.back());
            parts_.pop_back();
            return false;
        }
        for (std::size_t i = from; i < vals_.size(); ++i) {
            if (suffix_[i] < need) return false;
            if (used_[i] || vals_[i] > need) continue;
            used_[i] = 1;
            part_.push_back(i);
            if (extend(done, i + 1, need - vals_[i])) return true;
            part_.pop_back();
            used_[i] = 0;
            if (truncated_) return false;
        }
        return false;
    }

    const std::vector<u64>& vals_;
    u64 target_;
    unsigned wanted_;
    Budget& budget_;
    std::vector<char> used_;
    std::vector<u64> suffix_;
    std::vector<std::vector<std::size_t>> parts_;
    std::vector<std::size_t> part_;
    bool truncated_ = false;
};

Decision unknown_decision(const Budget& budget) {
    return {Outcome::kUnknown, std::nullopt, "search budget exhausted", budget.spent()};
}

Decision refuted_by_search(const Budget& budget) {
    return {Outcome::kRefuted, std::nullopt, "exhaustive search found no partition",
            budget.spent()};
}

}  // namespace

Decision decide_k_layered(const Natural& n, unsigned k, const SolverConfig& config) {
    if (n < 1) throw DomainError("decide_k_layered: n must be >= 1");
    if (k < 1) throw DomainError("decide_k_layered: k must be >= 1");
    const Factorization f = factorize(n);

    if (k == 1) {
        PartitionCertificate cert;
        cert.n = n;
        cert.k = 1;
        cert.parts.push_back(divisors(f, config.divisor_cap).divisors);
        return {Outcome::kProven, std::move(cert), "", 0};
    }

    const NecessaryCheck nec = necessary_k_layered(f, k);
    if (!nec.ok) return {Outcome::kRefuted, std::nullopt, nec.reason, 0};

    const Natural sigma_n = sigma(f);
    const auto sigma64 = to_u64(sigma_n);
    if (!sigma64) throw ResourceError("decide_k_layered: sigma(n) exceeds the 64-bit engine");
    const auto ascending = to_u64(divisors(f, config.divisor_cap).divisors);
    std::vector<u64> vals(ascending->rbegin(), ascending->rend());
    const u64 target = *sigma64 / k;

    Budget budget(config.node_budget);
    const SubsetSumConfig sconfig{config.table_bit_budget};

    // Greedy pass: peel off parts one at a time, each anchored at the largest
    // remaining divisor. A dead end on the very first part is already a
    // refutation (that part must contain n itself); a later dead end only
    // discredits the greedy choices, so the complete search takes over.
    std::vector<std::vector<u64>> parts;
    std::vector<u64> remaining = vals;
    bool stuck = false;
    for (unsigned j = 0; j + 1 < k; ++j) {
        const u64 anchor = remaining.front();
        const std::vector<u64> rest(remaining.begin() + 1, remaining.end());
        const SubsetSumResult res = subset_sum(rest, target - anchor, budget, sconfig);
        if (res.status == SearchStatus::kUnknown) return unknown_decision(budget);
        if (res.status == SearchStatus::kNotFound) {
            if (j == 0) return refuted_by_search(budget);
            stuck = true;
            break;
        }
        std::vector<u64> part{anchor};
        part.insert(part.end(), res.chosen.begin(), res.chosen.end());
        std::vector<u64> next;
        next.reserve(remaining.size() - part.size());
        std::set_difference(remaining.begin(), remaining.end(), part.begin(), part.end(),
                            std::back_inserter(next), std::greater<>());
        remaining = std::move(next);
        parts.push_back(std::move(part));
    }
    if (!stuck) {
        parts.push_back(std::move(remaining));
        return {Outcome::kProven, make_certificate(n, k, parts), "", budget.spent()};
    }

    CoveringSearch search(vals, target, k - 1, budget);
    if (search.run()) {
        return {Outcome::kProven, make_certificate(n, k, search.assembled_parts()), "",
                budget.spent()};
    }
    if (search.truncated()) return unknown_decision(budget);
    return refuted_by_search(budget);
}

Decision is_zumkeller(const Natural& n, const SolverConfig& config) {
    if (n < 1) throw DomainError("is_zumkeller: n must be >= 1");
    const Factorization f = factorize(n);
    if (const auto fast = zumkeller_fast_paths(f); fast.has_value() && !*fast) {
        // Every structural "no" is also caught by a necessary condition, which
        // names the reason; fall through to the solver if that ever fails.
        const NecessaryCheck nec = necessary_k_layered(f, 2);
        if (!nec.ok) return {Outcome::kRefuted, std::nullopt, nec.reason, 0};
    }
    return decide_k_layered(n, 2, config);
}

Decision is_half_zumkeller(const Natural& n, const SolverConfig& config) {
    if (n < 1) throw DomainError("is_half_zumkeller: n must be >= 1");
    const Factorization f = factorize(n);
    const Natural sigma_n = sigma(f);
    const Natural proper_sum = sigma_n - n;
    if (proper_sum % 2 != 0) {
        return {Outcome::kRefuted, std::nullopt, "2 does not divide sigma(n) - n", 0};
    }
    if (n == 1) {
        // No proper divisors: two empty halves, each summing to zero.
        PartitionCertificate cert;
        cert.n = 1;
        cert.k = 2;
        cert.parts.assign(2, {});
        return {Outcome::kProven, std::move(cert), "", 0};
    }
    const auto sigma64 = to_u64(sigma_n);
    if (!sigma64) throw ResourceError("is_half_zumkeller: sigma(n) exceeds the 64-bit engine");
    const auto ascending = to_u64(divisors(f, config.divisor_cap).divisors);
    const std::vector<u64> proper(ascending->rbegin() + 1, ascending->rend());
    const u64 target = (*sigma64 - static_cast<u64>(*to_u64(n))) / 2;

    const u64 anchor = proper.front();
    if (anchor > target) {
        return {Outcome::kRefuted, std::nullopt,
                "largest proper divisor exceeds half of sigma(n) - n", 0};
    }
    Budget budget(config.node_budget);
    const SubsetSumConfig sconfig{config.table_bit_budget};
    const std::vector<u64> rest(proper.begin() + 1, proper.end());
    const SubsetSumResult res = subset_sum(rest, target - anchor, budget, sconfig);
    if (res.status == SearchStatus::kUnknown) return unknown_decision(budget);
    if (res.status == SearchStatus::kNotFound) return refuted_by_search(budget);

    std::vector<u64> first{anchor};
    first.insert(first.end(), res.chosen.begin(), res.chosen.end());
    std::vector<u64> second;
    std::set_difference(proper.begin(), proper.end(), first.begin(), first.end(),
                        std::back_inserter(second), std::greater<>());
    return {Outcome::kProven, make_certificate(n, 2, {first, second}), "", budget.spent()};
}

VerifyResult verify_certificate(const PartitionCertificate& cert, bool proper_divisors_only,
                                std::uint64_t divisor_cap) {
    if (cert.n < 1) return {false, "n must be >= 1"};
    if (cert.k < 1) return {false, "k must be >= 1"};
    if (cert.parts.size() != cert.k) {
        return {false, "certificate lists " + std::to_string(cert.parts.size()) +
                           " parts for k = " + std::to_string(cert.k)};
    }
    const Factorization f = factorize(cert.n);
    std::vector<Natural> expected = divisors(f, divisor_cap).divisors;
    Natural total = sigma(f);
    if (proper_divisors_only) {
        expected.pop_back();
        total -= cert.n;
    }
    if (total % cert.k != 0) return {false, "k does not divide the divisor sum"};
    const Natural target = total / cert.k;

    std::vector<Natural> claimed;
    for (const auto& part : cert.parts) claimed.insert(claimed.end(), part.begin(), part.end());
    std::sort(claimed.begin(), claimed.end());
    const auto dup = std::adjacent_find(claimed.begin(), claimed.end());
    if (dup != claimed.end()) return {false, "duplicate value: " + dup->str()};

    std::size_t i = 0, j = 0;
    while (i < claimed.size() && j < expected.size()) {
        if (claimed[i] == expected[j]) {
            ++i;
            ++j;
        } else if (claimed[i] < expected[j]) {
            return {false, "foreign value: " + claimed[i].str()};
        } else {
            return {false, "missing divisor: " + expected[j].str()};
        }
    }
    if (i < claimed.size()) return {false, "foreign value: " + claimed[i].str()};
    if (j < expected.size()) return {false, "missing divisor: " + expected[j].str()};

    for (std::size_t p = 0; p < cert.parts.size(); ++p) {
        Natural s = 0;
        for (const Natural& v : cert.parts[p]) s += v;
        if (s != target) {
            return {false, "part " + std::to_string(p + 1) + " sums to " + s.str() +
                               ", expected " + target.str()};
        }
    }
    return {true, ""};
}

namespace {

// Complete search for `count` pairwise-disjoint equal-sum subsets; values may
// be left unused, so parts can't be anchored. Symmetry is broken by ordering
// parts by their largest element: part j+1's largest value is scanned only
// beyond part j's largest.
class DisjointSearch {
  public:
    DisjointSearch(const std::vector<u64>& vals, u64 target, unsigned count, Budget& budget)
        : vals_(vals), target_(target), count_(count), budget_(budget), used_(vals.size(), 0) {
        suffix_.assign(vals_.size() + 1, 0);
        unused_sum_ = 0;
        for (std::size_t i = vals_.size(); i-- > 0;) {
            const u64 s = suffix_[i + 1] + vals_[i];
            suffix_[i] = s < suffix_[i + 1] ? ~u64(0) : s;
            unused_sum_ += vals_[i];
        }
    }

    bool run() { return next_part(0, 0); }
    bool truncated() const { return truncated_; }

    std::vector<std::vector<u64>> assembled_parts() const {
        std::vector<std::vector<u64>> out;
        for (const auto& idx : parts_) {
            std::vector<u64> part;
            for (std::size_t i : idx) part.push_back(vals_[i]);
            out.push_back(std::move(part));
        }
        return out;
    }

  private:
    bool next_part(unsigned done, std::size_t min_first) {
        if (done == count_) return true;
        if (truncated_) return false;
        if (unused_sum_ < u128(target_) * (count_ - done)) return false;
        for (std::size_t i = min_first; i < vals_.size(); ++i) {
            if (used_[i] || vals_[i] > target_) continue;
            used_[i] = 1;
            unused_sum_ -= vals_[i];
            part_.push_back(i);
            if (extend(done, i + 1, target_ - vals_[i], i)) return true;
            part_.pop_back();
            unused_sum_ += vals_[i];
            used_[i] = 0;
            if (truncated_) return false;
        }
        return false;
    }

    bool extend(unsigned done, std::size_t from, u64 need, std::size_t first_idx) {
        if (truncated_) return false;
        if (!budget_.charge(1)) {
            truncated_ = true;
            return false;
        }
        if (need == 0) {
            parts_.push_back(std::move(part_));
            part_.clear();
            if (next_part(done + 1, first_idx + 1)) return true;
            part_ = std::move(parts_.back());
            parts_.pop_back();
            return false;
        }
        for (std::size_t i = from; i < vals_.size(); ++i) {
            if (suffix_[i] < need) return false;
            if (used_[i] || vals_[i] > need) continue;
            used_[i] = 1;
            unused_sum_ -= vals_[i];
            part_.push_back(i);
            if (extend(done, i + 1, need - vals_[i], first_idx)) return true;
            part_.pop_back();
            unused_sum_ += vals_[i];
            used_[i] = 0;
            if (truncated_) return false;
        }
        return false;
    }

    const std::vector<u64>& vals_;
    u64 target_;
    unsigned count_;
    Budget& budget_;
    std::vector<char> used_;
    std::vector<u64> suffix_;
    u128 unused_sum_ = 0;
    std::vector<std::vector<std::size_t>> parts_;
    std::vector<std::size_t> part_;
    bool truncated_ = false;
};

}  // namespace

DisjointSubsetsResult disjoint_equal_subsets(const std::vector<std::uint64_t>& values,
                                             std::uint64_t target, unsigned count, Budget& budget,
                                             const SubsetSumConfig& config) {
    (void)config;
    if (count < 1) throw DomainError("disjoint_equal_subsets: count must be >= 1");
    std::vector<u64> vals(values);
    std::sort(vals.begin(), vals.end(), std::greater<>());
    if (std::adjacent_find(vals.begin(), vals.end()) != vals.end()) {
        throw DomainError("disjoint_equal_subsets: values must be duplicate-free");
    }
    u128 total = 0;
    for (const u64 v : vals) total += v;
    if (u128(target) * count > total) {
        throw DomainError("disjoint_equal_subsets: target*count exceeds the value sum");
    }
    if (target == 0) {
        return {SearchStatus::kFound, std::vector<std::vector<u64>>(count)};
    }
    DisjointSearch search(vals, target, count, budget);
    if (search.run()) return {SearchStatus::kFound, search.assembled_parts()};
    if (search.truncated()) return {SearchStatus::kUnknown, {}};
    return {SearchStatus::kNotFound, {}};
}

}  // namespace layered
