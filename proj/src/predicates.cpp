#include "layered/predicates.hpp"

#include "layered/errors.hpp"
#include "layered/subset_sum.hpp"

namespace layered {
namespace {

// Chain criterion for odd n >= 5 over the ascending divisor list
// d_1 = 1 < d_2 < ... < d_k = n: requires d_2 = 3, d_3 = 5, and for each
// later divisor either d_{i+1} <= s_i - 2 with d_{i+1} != s_i - 4, or
// d_{i+1} = s_i - 4 followed immediately by d_{i+2} = s_i - 2, where s_i
// is the sum of the first i divisors.
bool almost_practical_chain_odd(const std::vector<Natural>& divs) {
    if (divs.size() < 3) return false;
    if (divs[1] != 3 || divs[2] != 5) return false;
    Natural s = 9;  // 1 + 3 + 5
    for (std::size_t i = 3; i < divs.size(); ++i) {
        const Natural& next = divs[i];
        if (next <= s - 2 && next != s - 4) {
            // fine
        } else if (next == s - 4) {
            if (i + 1 >= divs.size() || divs[i + 1] != s - 2) return false;
        } else {
            return false;
        }
        s += next;
    }
    return true;
}

}  // namespace

DeficiencyClass classify_deficiency(const Factorization& f) {
    const Natural s = sigma(f);
    const Natural two_n = 2 * value_of(f);
    if (s < two_n) return DeficiencyClass::kDeficient;
    if (s == two_n) return DeficiencyClass::kPerfect;
    return DeficiencyClass::kAbundant;
}

bool is_k_abundant(const Factorization& f, unsigned k) {
    if (k < 1) throw DomainError("is_k_abundant: k must be >= 1");
    return sigma(f) >= k * value_of(f);
}

bool is_good_k_abundant(const Factorization& f, unsigned k) {
    if (k < 1) throw DomainError("is_good_k_abundant: k must be >= 1");
    return sigma(f) % k == 0 && is_k_abundant(f, k);
}

NecessaryCheck necessary_k_layered(const Factorization& f, unsigned k) {
    if (k < 1) throw DomainError("necessary_k_layered: k must be >= 1");
    const Natural s = sigma(f);
    if (s % k != 0) return {false, "k does not divide sigma(n)"};
    if (k % 2 == 0) {
        bool odd_prime_odd_power = false;
        for (const auto& pp : f.factors) {
            if (pp.prime != 2 && pp.exponent % 2 == 1) {
                odd_prime_odd_power = true;
                break;
            }
        }
        if (!odd_prime_odd_power) {
            return {false, "even k requires an odd prime factor with odd exponent"};
        }
    }
    if (s < k * value_of(f)) return {false, "sigma(n) < k*n"};
    return {true, ""};
}

bool is_practical(const Factorization& f) {
    if (f.factors.empty()) return true;  // n = 1
    if (f.factors[0].prime != 2) return false;
    Natural reach = sigma(Factorization{{f.factors[0]}});
    for (std::size_t i = 1; i < f.factors.size(); ++i) {
        if (f.factors[i].prime > reach + 1) return false;
        reach *= sigma(Factorization{{f.factors[i]}});
    }
    return true;
}

bool is_almost_practical(const Factorization& f, std::uint64_t table_bit_budget,
                         std::uint64_t divisor_cap) {
    const Natural n = value_of(f);
    const Natural s = sigma(f);
    if (s < 6) return true;  // no j satisfies 2 < j < sigma - 2 (covers n = 3)
    if (n % 2 == 1) {
        return almost_practical_chain_odd(divisors(f, divisor_cap).divisors);
    }
    // Even n: definitional sweep over the reachability table.
    const auto s64 = to_u64(s);
    if (!s64 || *s64 + 1 > table_bit_budget) {
        throw ResourceError("is_almost_practical: sigma(n) exceeds the table budget");
    }
    const auto divs = to_u64(divisors(f, divisor_cap).divisors);
    if (!divs) throw ResourceError("is_almost_practical: divisors exceed 64-bit range");
    Budget budget(~std::uint64_t(0));  // table size already capped above
    SumBits reach = reachable_sums(*divs, *s64, budget);
    return reach.all_in_range(3, *s64 - 3);
}

std::optional<NearPerfectWitness> is_near_perfect(const Factorization& f) {
    const Natural n = value_of(f);
    const Natural s = sigma(f);
    if (s <= 2 * n) return std::nullopt;
    const Natural d = s - 2 * n;
    if (d >= n || n % d != 0) return std::nullopt;
    return NearPerfectWitness{n, d};
}

bool is_semiperfect(const Factorization& f, Budget& budget, std::uint64_t table_bit_budget,
                    std::uint64_t divisor_cap) {
    const Natural n = value_of(f);
    const Natural s = sigma(f);
    if (s < 2 * n) return false;   // proper divisors sum below n
    if (s == 2 * n) return true;   // perfect: all proper divisors
    const auto n64 = to_u64(n);
    const auto all = to_u64(divisors(f, divisor_cap).divisors);
    if (!n64 || !all) throw ResourceError("is_semiperfect: value exceeds 64-bit engine range");
    std::vector<std::uint64_t> proper(all->begin(), all->end() - 1);
    SubsetSumConfig config{table_bit_budget};
    const SubsetSumResult res = subset_sum(proper, *n64, budget, config);
    if (res.status == SearchStatus::kUnknown) {
        throw ResourceError("is_semiperfect: search budget exhausted");
    }
    return res.status == SearchStatus::kFound;
}

bool is_weird(const Factorization& f, Budget& budget, std::uint64_t table_bit_budget,
              std::uint64_t divisor_cap) {
    if (classify_deficiency(f) != DeficiencyClass::kAbundant) return false;
    return !is_semiperfect(f, budget, table_bit_budget, divisor_cap);
}

std::optional<MultiperfectWitness> is_k_multiperfect(const Factorization& f) {
    const Natural n = value_of(f);
    const Natural s = sigma(f);
    if (s % n != 0) return std::nullopt;
    const Natural q = s / n;
    if (q < 2) return std::nullopt;
    return MultiperfectWitness{n, static_cast<unsigned>(q)};
}

std::optional<bool> zumkeller_fast_paths(const Factorization& f) {
    const Natural n = value_of(f);
    const Natural s = sigma(f);
    const bool sigma_even = (s % 2 == 0);

    if (is_practical(f)) return sigma_even;  // practical => almost practical

    if (n % 2 == 1 && n != 3) {
        // Odd chain criterion is cheap as long as the divisor list is small.
        if (divisor_count(f) <= kDefaultDivisorCap) {
            if (almost_practical_chain_odd(divisors(f).divisors)) return sigma_even;
        }
    }

    if (f.factors.size() == 2) {
        if (f.factors[0].prime != 2) return false;  // odd two-factor numbers are deficient
        const Natural cap = sigma(Factorization{{f.factors[0]}});
        return f.factors[1].prime <= cap && f.factors[1].exponent % 2 == 1;
    }

    if (is_near_perfect(f)) return sigma_even;

    return std::nullopt;
}

}  // namespace layered
