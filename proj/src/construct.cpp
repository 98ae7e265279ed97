#include "layered/construct.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>

#include "layered/budget.hpp"
#include "layered/errors.hpp"
#include "layered/predicates.hpp"
#include "layered/subset_sum.hpp"

namespace layered {
namespace {

using std::uint64_t;

void ensure_valid(const PartitionCertificate& cert, const char* op,
                  uint64_t cap = kDefaultDivisorCap) {
    VerifyResult v = verify_certificate(cert, false, cap);
    if (!v.valid) {
        throw DomainError(std::string(op) + ": input certificate invalid: " + v.diagnostic);
    }
}

PartitionCertificate finish(PartitionCertificate cert, const char* op,
                            uint64_t cap = kDefaultDivisorCap) {
    for (auto& part : cert.parts) {
        std::sort(part.begin(), part.end());
    }
    VerifyResult v = verify_certificate(cert, false, cap);
    if (!v.valid) {
        throw DomainError(std::string(op) + ": construction failed verification: " + v.diagnostic);
    }
    return cert;
}

// ascending a \ b (both ascending, b subset-or-not of a)
std::vector<Natural> difference(const std::vector<Natural>& a, const std::vector<Natural>& b) {
    std::vector<Natural> out;
    out.reserve(a.size() - std::min(a.size(), b.size()));
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<Natural> ascending_from_search(const std::vector<uint64_t>& chosen) {
    std::vector<Natural> out;
    out.reserve(chosen.size());
    for (auto it = chosen.rbegin(); it != chosen.rend(); ++it) {
        out.emplace_back(*it);
    }
    return out;
}

unsigned split_two_exponent(const Natural& n, Natural& odd) {
    unsigned alpha = 0;
    odd = n;
    while (odd % 2 == 0) {
        odd >>= 1;
        ++alpha;
    }
    return alpha;
}

std::vector<uint64_t> narrow_or_throw(const std::vector<Natural>& values, const char* op) {
    auto narrowed = to_u64(values);
    if (!narrowed) {
        throw ResourceError(std::string(op) + ": values exceed the 64-bit search engine");
    }
    return *narrowed;
}

uint64_t narrow_or_throw(const Natural& value, const char* op) {
    auto narrowed = to_u64(value);
    if (!narrowed) {
        throw ResourceError(std::string(op) + ": target exceeds the 64-bit search engine");
    }
    return *narrowed;
}

// Searches proper divisors of the factored value for a subset with the given
// sum. kFound fills `out`; kNotFound returns false; kUnknown throws.
bool proper_divisor_subset(const Factorization& f, const Natural& target,
                           const SolverConfig& config, Budget& budget, const char* op,
                           std::vector<Natural>& out) {
    std::vector<Natural> divs = divisors(f, config.divisor_cap).divisors;
    divs.pop_back();  // drop the value itself
    std::vector<uint64_t> vals = narrow_or_throw(divs, op);
    uint64_t t = narrow_or_throw(target, op);
    SubsetSumConfig ss{config.table_bit_budget};
    SubsetSumResult res = subset_sum(vals, t, budget, ss);
    if (res.status == SearchStatus::kUnknown) {
        throw ResourceError(std::string(op) + ": search budget exhausted");
    }
    if (res.status == SearchStatus::kNotFound) {
        return false;
    }
    out = ascending_from_search(res.chosen);
    return true;
}

PartitionCertificate solver_fallback(const Natural& n, unsigned k, const SolverConfig& config,
                                     const char* op) {
    Decision dec = decide_k_layered(n, k, config);
    if (dec.outcome == Outcome::kProven) {
        return *dec.certificate;
    }
    if (dec.outcome == Outcome::kUnknown) {
        throw ResourceError(std::string(op) + ": " + dec.reason);
    }
    throw DomainError(std::string(op) + ": not layered: " + dec.reason);
}

}  // namespace

PartitionCertificate scale_coprime(const PartitionCertificate& cert, const Natural& w) {
    if (w < 1) {
        throw DomainError("scale_coprime: scale factor must be positive");
    }
    ensure_valid(cert, "scale_coprime");
    if (gcd(cert.n, w) != 1) {
        throw DomainError("scale_coprime: scale factor shares a prime with n");
    }
    std::vector<Natural> dw = divisors(factorize(w)).divisors;
    PartitionCertificate out;
    out.n = cert.n * w;
    out.k = cert.k;
    out.parts.reserve(cert.parts.size());
    for (const auto& part : cert.parts) {
        std::vector<Natural> scaled;
        scaled.reserve(part.size() * dw.size());
        for (const Natural& a : part) {
            for (const Natural& d : dw) {
                scaled.push_back(a * d);
            }
        }
        out.parts.push_back(std::move(scaled));
    }
    return finish(std::move(out), "scale_coprime");
}

PartitionCertificate product_certificate(const PartitionCertificate& a,
                                         const PartitionCertificate& b) {
    ensure_valid(a, "product_certificate");
    ensure_valid(b, "product_certificate");
    if (gcd(a.n, b.n) != 1) {
        throw DomainError("product_certificate: inputs share a prime factor");
    }
    PartitionCertificate out;
    out.n = a.n * b.n;
    out.k = a.k * b.k;
    out.parts.reserve(static_cast<std::size_t>(a.k) * b.k);
    for (const auto& pa : a.parts) {
        for (const auto& pb : b.parts) {
            std::vector<Natural> prod;
            prod.reserve(pa.size() * pb.size());
            for (const Natural& x : pa) {
                for (const Natural& y : pb) {
                    prod.push_back(x * y);
                }
            }
            out.parts.push_back(std::move(prod));
        }
    }
    return finish(std::move(out), "product_certificate");
}

PartitionCertificate extend_by_fraction(const PartitionCertificate& cert, const Natural& m,
                                        const std::vector<Natural>& chosen) {
    ensure_valid(cert, "extend_by_fraction");
    if (m < 1) {
        throw DomainError("extend_by_fraction: m must be positive");
    }
    if (gcd(cert.n, m) != 1) {
        throw DomainError("extend_by_fraction: m shares a prime with n");
    }
    Factorization fm = factorize(m);
    Natural sm = sigma(fm);
    unsigned k1 = cert.k + 1;
    if (sm % k1 != 0) {
        throw DomainError("extend_by_fraction: k+1 does not divide sigma(m)");
    }
    Natural target = sm / k1;

    std::vector<Natural> picked = chosen;
    std::sort(picked.begin(), picked.end());
    if (std::adjacent_find(picked.begin(), picked.end()) != picked.end()) {
        throw DomainError("extend_by_fraction: chosen divisors repeat");
    }
    std::vector<Natural> dm = divisors(fm).divisors;
    if (!std::includes(dm.begin(), dm.end(), picked.begin(), picked.end())) {
        throw DomainError("extend_by_fraction: chosen values are not divisors of m");
    }
    Natural picked_sum = 0;
    for (const Natural& d : picked) {
        picked_sum += d;
    }
    if (picked_sum != target) {
        throw DomainError("extend_by_fraction: chosen divisors must sum to sigma(m)/(k+1)");
    }
    std::vector<Natural> rest_m = difference(dm, picked);

    PartitionCertificate out;
    out.n = cert.n * m;
    out.k = k1;
    out.parts.reserve(k1);
    for (const auto& part : cert.parts) {
        std::vector<Natural> scaled;
        scaled.reserve(part.size() * rest_m.size());
        for (const Natural& a : part) {
            for (const Natural& d : rest_m) {
                scaled.push_back(a * d);
            }
        }
        out.parts.push_back(std::move(scaled));
    }
    std::vector<Natural> last;
    for (const auto& part : cert.parts) {
        for (const Natural& a : part) {
            for (const Natural& d : picked) {
                last.push_back(a * d);
            }
        }
    }
    out.parts.push_back(std::move(last));
    return finish(std::move(out), "extend_by_fraction");
}

PartitionCertificate lift_multiperfect(const PartitionCertificate& cert, const Natural& m,
                                       uint64_t divisor_cap) {
    ensure_valid(cert, "lift_multiperfect", divisor_cap);
    const Natural& n = cert.n;
    if (sigma(factorize(n)) != Natural(cert.k) * n) {
        throw DomainError("lift_multiperfect: input is not k-multiperfect");
    }
    if (m % n != 0) {
        throw DomainError("lift_multiperfect: n must divide m");
    }
    Factorization fm = factorize(m);
    if (sigma(fm) != Natural(cert.k + 1) * m) {
        throw DomainError("lift_multiperfect: m is not (k+1)-multiperfect");
    }
    Natural d = m / n;
    std::vector<Natural> dm = divisors(fm, divisor_cap).divisors;

    PartitionCertificate out;
    out.n = m;
    out.k = cert.k + 1;
    out.parts.reserve(out.k);
    std::vector<Natural> used;
    for (const auto& part : cert.parts) {
        std::vector<Natural> scaled;
        scaled.reserve(part.size());
        for (const Natural& a : part) {
            scaled.push_back(a * d);
        }
        std::sort(scaled.begin(), scaled.end());
        used.insert(used.end(), scaled.begin(), scaled.end());
        out.parts.push_back(std::move(scaled));
    }
    std::sort(used.begin(), used.end());
    out.parts.push_back(difference(dm, used));
    return finish(std::move(out), "lift_multiperfect", divisor_cap);
}

PartitionCertificate multiperfect_3layered(const Natural& n, const SolverConfig& config) {
    if (n < 1) {
        throw DomainError("multiperfect_3layered: n must be positive");
    }
    Factorization f = factorize(n);
    if (sigma(f) != 3 * n) {
        throw DomainError("multiperfect_3layered: sigma(n) != 3n");
    }
    Budget budget(config.node_budget);
    std::vector<Natural> a1;
    if (!proper_divisor_subset(f, n, config, budget, "multiperfect_3layered", a1)) {
        throw DomainError("multiperfect_3layered: no proper-divisor subset sums to n");
    }
    std::vector<Natural> divs = divisors(f, config.divisor_cap).divisors;
    divs.pop_back();
    PartitionCertificate out;
    out.n = n;
    out.k = 3;
    out.parts.push_back(a1);
    out.parts.push_back({n});
    out.parts.push_back(difference(divs, a1));
    return finish(std::move(out), "multiperfect_3layered", config.divisor_cap);
}

PartitionCertificate multiperfect_4layered(const Natural& n, const SolverConfig& config) {
    if (n < 1) {
        throw DomainError("multiperfect_4layered: n must be positive");
    }
    Factorization f = factorize(n);
    if (sigma(f) != 4 * n) {
        throw DomainError("multiperfect_4layered: sigma(n) != 4n");
    }
    Natural odd;
    unsigned alpha = split_two_exponent(n, odd);
    if (alpha >= 1 && is_practical(factorize(n / 2))) {
        Budget budget(config.node_budget);
        Factorization ft = factorize(n / 2);
        Factorization fodd = factorize(odd);
        std::vector<Natural> a1;
        std::vector<Natural> wit;
        if (proper_divisor_subset(ft, n, config, budget, "multiperfect_4layered", a1) &&
            proper_divisor_subset(fodd, odd, config, budget, "multiperfect_4layered", wit)) {
            Natural scale = pow_natural(2, alpha);
            std::vector<Natural> a2;
            a2.reserve(wit.size());
            for (const Natural& d : wit) {
                a2.push_back(scale * d);
            }
            std::vector<Natural> divs = divisors(f, config.divisor_cap).divisors;
            std::vector<Natural> used = a1;
            used.insert(used.end(), a2.begin(), a2.end());
            used.push_back(n);
            std::sort(used.begin(), used.end());
            PartitionCertificate out;
            out.n = n;
            out.k = 4;
            out.parts.push_back(std::move(a1));
            out.parts.push_back(std::move(a2));
            out.parts.push_back({n});
            out.parts.push_back(difference(divs, used));
            return finish(std::move(out), "multiperfect_4layered", config.divisor_cap);
        }
    }
    return solver_fallback(n, 4, config, "multiperfect_4layered");
}

PartitionCertificate multiperfect_5layered(const Natural& n, const SolverConfig& config) {
    if (n < 1) {
        throw DomainError("multiperfect_5layered: n must be positive");
    }
    Factorization f = factorize(n);
    if (sigma(f) != 5 * n) {
        throw DomainError("multiperfect_5layered: sigma(n) != 5n");
    }
    Natural odd;
    unsigned alpha = split_two_exponent(n, odd);
    if (alpha >= 1) {
        for (uint64_t p : {uint64_t{5}, uint64_t{7}}) {
            if (n % p != 0) {
                continue;
            }
            Natural m = pow_natural(2, alpha);
            Natural rest = odd;
            while (rest % p == 0) {
                rest /= p;
                m *= p;
            }
            Natural t = n / m;
            if (t == 1) {
                continue;
            }
            Budget budget(config.node_budget);
            Factorization fmm = factorize(m);
            Factorization ftt = factorize(t);
            std::vector<Natural> wa;   // proper divisors of m summing to m
            std::vector<Natural> wap;  // proper divisors of t summing to t
            if (!proper_divisor_subset(fmm, m, config, budget, "multiperfect_5layered", wa) ||
                !proper_divisor_subset(ftt, t, config, budget, "multiperfect_5layered", wap)) {
                continue;
            }
            std::vector<Natural> p2;
            p2.reserve(wa.size());
            for (const Natural& d : wa) {
                p2.push_back(d * t);
            }
            std::vector<Natural> p3;
            p3.reserve(wap.size());
            for (const Natural& d : wap) {
                p3.push_back(d * m);
            }
            std::vector<Natural> p4;
            p4.reserve(wa.size() * wap.size());
            for (const Natural& d1 : wa) {
                for (const Natural& d2 : wap) {
                    p4.push_back(d1 * d2);
                }
            }
            std::vector<Natural> divs = divisors(f, config.divisor_cap).divisors;
            std::vector<Natural> used;
            used.push_back(n);
            used.insert(used.end(), p2.begin(), p2.end());
            used.insert(used.end(), p3.begin(), p3.end());
            used.insert(used.end(), p4.begin(), p4.end());
            std::sort(used.begin(), used.end());
            PartitionCertificate out;
            out.n = n;
            out.k = 5;
            out.parts.push_back({n});
            out.parts.push_back(std::move(p2));
            out.parts.push_back(std::move(p3));
            out.parts.push_back(std::move(p4));
            out.parts.push_back(difference(divs, used));
            return finish(std::move(out), "multiperfect_5layered", config.divisor_cap);
        }
    }
    return solver_fallback(n, 5, config, "multiperfect_5layered");
}

namespace {

PartitionCertificate double_core(const PartitionCertificate& cert,
                                 const std::vector<std::vector<Natural>>& witnesses,
                                 const char* op) {
    ensure_valid(cert, op);
    unsigned k = cert.k;
    if (k < 3) {
        throw DomainError(std::string(op) + ": needs k >= 3");
    }
    if (cert.n % 2 != 0) {
        throw DomainError(std::string(op) + ": n must be even");
    }
    Natural odd;
    unsigned alpha = split_two_exponent(cert.n, odd);
    bool k_odd = (k % 2 == 1);
    std::size_t expected = k_odd ? (k - 1) / 2 : k / 2;
    if (witnesses.size() != expected) {
        throw DomainError(std::string(op) + ": wrong witness count for k");
    }
    Factorization fodd = factorize(odd);
    Natural twice_sigma = 2 * sigma(fodd);
    if (twice_sigma % k != 0) {
        throw DomainError(std::string(op) + ": k does not divide 2*sigma(odd part)");
    }
    Natural wtarget = twice_sigma / k;
    std::vector<Natural> dodd = divisors(fodd).divisors;

    std::vector<std::vector<Natural>> wit;
    wit.reserve(witnesses.size());
    std::vector<Natural> all_wit;
    for (const auto& w : witnesses) {
        std::vector<Natural> s = w;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
            throw DomainError(std::string(op) + ": witness repeats a value");
        }
        if (!std::includes(dodd.begin(), dodd.end(), s.begin(), s.end())) {
            throw DomainError(std::string(op) + ": witness value does not divide the odd part");
        }
        Natural sum = 0;
        for (const Natural& d : s) {
            sum += d;
        }
        if (sum != wtarget) {
            throw DomainError(std::string(op) + ": witness sum is not 2*sigma(odd part)/k");
        }
        all_wit.insert(all_wit.end(), s.begin(), s.end());
        wit.push_back(std::move(s));
    }
    std::sort(all_wit.begin(), all_wit.end());
    if (std::adjacent_find(all_wit.begin(), all_wit.end()) != all_wit.end()) {
        throw DomainError(std::string(op) + ": witnesses overlap");
    }
    if (!k_odd && all_wit.size() != dodd.size()) {
        throw DomainError(std::string(op) +
                          ": even k needs the witnesses to partition the odd part's divisors");
    }

    std::vector<std::vector<Natural>> parts = cert.parts;
    for (auto& part : parts) {
        std::sort(part.begin(), part.end());
    }
    auto in_part = [&parts](std::size_t idx, const Natural& v) {
        return std::binary_search(parts[idx].begin(), parts[idx].end(), v);
    };

    Natural scale = pow_natural(2, alpha);
    // m[j]: witness images landing in part j (stored undoubled).
    std::vector<std::vector<Natural>> m(k);
    for (std::size_t i = 0; i < wit.size(); ++i) {
        std::size_t a = 2 * i;
        std::size_t b = 2 * i + 1;
        for (const Natural& d : wit[i]) {
            Natural v = scale * d;
            if (in_part(a, v)) {
                m[a].push_back(v);
            } else if (in_part(b, v)) {
                m[b].push_back(v);
            } else {
                throw DomainError(std::string(op) +
                                  ": witness image lands outside its part pair");
            }
        }
    }

    PartitionCertificate out;
    out.n = 2 * cert.n;
    out.k = k;
    out.parts.resize(k);
    for (std::size_t i = 0; i < wit.size(); ++i) {
        std::size_t a = 2 * i;
        std::size_t b = 2 * i + 1;
        std::vector<Natural>& pa = out.parts[a];
        std::vector<Natural>& pb = out.parts[b];
        pa = difference(parts[a], m[a]);
        for (const Natural& v : m[a]) {
            pa.push_back(2 * v);
        }
        pa.insert(pa.end(), m[b].begin(), m[b].end());
        pb = difference(parts[b], m[b]);
        for (const Natural& v : m[b]) {
            pb.push_back(2 * v);
        }
        pb.insert(pb.end(), m[a].begin(), m[a].end());
    }
    if (k_odd) {
        std::vector<Natural>& last = out.parts[k - 1];
        last = parts[k - 1];
        Natural dscale = 2 * scale;
        for (const Natural& d : difference(dodd, all_wit)) {
            last.push_back(dscale * d);
        }
    }
    return finish(std::move(out), op);
}

}  // namespace

PartitionCertificate double_certificate_3(const PartitionCertificate& cert,
                                          const std::vector<Natural>& witness) {
    if (cert.k != 3) {
        throw DomainError("double_certificate_3: certificate must have k = 3");
    }
    return double_core(cert, {witness}, "double_certificate_3");
}

PartitionCertificate double_certificate_general(const PartitionCertificate& cert,
                                                const std::vector<std::vector<Natural>>& witnesses) {
    return double_core(cert, witnesses, "double_certificate_general");
}

namespace {

// All partitions of {0..n-1} into pairs, lowest index first; calls fn with
// each matching (vector of index pairs). fn returns true to stop.
bool for_each_matching(std::vector<std::pair<std::size_t, std::size_t>>& acc,
                       std::vector<bool>& taken,
                       const std::function<bool(const std::vector<std::pair<std::size_t, std::size_t>>&)>& fn) {
    std::size_t first = taken.size();
    for (std::size_t i = 0; i < taken.size(); ++i) {
        if (!taken[i]) {
            first = i;
            break;
        }
    }
    if (first == taken.size()) {
        return fn(acc);
    }
    taken[first] = true;
    for (std::size_t j = first + 1; j < taken.size(); ++j) {
        if (taken[j]) {
            continue;
        }
        taken[j] = true;
        acc.emplace_back(first, j);
        if (for_each_matching(acc, taken, fn)) {
            return true;
        }
        acc.pop_back();
        taken[j] = false;
    }
    taken[first] = false;
    return false;
}

}  // namespace

std::optional<GoodDoublingPlan> plan_good_doubling(const PartitionCertificate& cert,
                                                   const SolverConfig& config) {
    ensure_valid(cert, "plan_good_doubling", config.divisor_cap);
    unsigned k = cert.k;
    if (k < 3 || k > 8) {
        throw DomainError("plan_good_doubling: k must be between 3 and 8");
    }
    if (cert.n % 2 != 0) {
        throw DomainError("plan_good_doubling: n must be even");
    }
    Natural odd;
    unsigned alpha = split_two_exponent(cert.n, odd);
    Factorization fodd = factorize(odd);
    Natural twice_sigma = 2 * sigma(fodd);
    if (twice_sigma % k != 0) {
        return std::nullopt;
    }
    Natural wtarget = twice_sigma / k;
    std::vector<Natural> dodd = divisors(fodd).divisors;

    std::vector<std::vector<Natural>> parts = cert.parts;
    for (auto& part : parts) {
        std::sort(part.begin(), part.end());
    }
    Natural scale = pow_natural(2, alpha);
    // which part holds 2^alpha * d, for each divisor d of the odd part
    std::vector<std::size_t> part_of(dodd.size());
    std::vector<Natural> part_sum(k, Natural(0));  // over witness images, undoubled
    for (std::size_t di = 0; di < dodd.size(); ++di) {
        Natural v = scale * dodd[di];
        std::size_t where = k;
        for (std::size_t j = 0; j < k; ++j) {
            if (std::binary_search(parts[j].begin(), parts[j].end(), v)) {
                where = j;
                break;
            }
        }
        if (where == k) {
            throw DomainError("plan_good_doubling: a divisor image is missing from the parts");
        }
        part_of[di] = where;
        part_sum[where] += dodd[di];
    }

    auto pool_values = [&](std::size_t a, std::size_t b) {
        std::vector<Natural> pool;
        for (std::size_t di = 0; di < dodd.size(); ++di) {
            if (part_of[di] == a || part_of[di] == b) {
                pool.push_back(dodd[di]);
            }
        }
        return pool;
    };

    auto assemble = [&](const std::vector<std::pair<std::size_t, std::size_t>>& pairing,
                        std::vector<std::vector<Natural>> witnesses,
                        std::optional<std::size_t> unpaired) {
        GoodDoublingPlan plan;
        plan.cert.n = cert.n;
        plan.cert.k = k;
        for (const auto& [a, b] : pairing) {
            plan.cert.parts.push_back(parts[a]);
            plan.cert.parts.push_back(parts[b]);
        }
        if (unpaired) {
            plan.cert.parts.push_back(parts[*unpaired]);
        }
        plan.witnesses = std::move(witnesses);
        return plan;
    };

    Budget budget(config.node_budget);
    SubsetSumConfig ss{config.table_bit_budget};
    std::optional<GoodDoublingPlan> found;

    if (k % 2 == 0) {
        std::vector<std::pair<std::size_t, std::size_t>> acc;
        std::vector<bool> taken(k, false);
        for_each_matching(acc, taken, [&](const auto& pairing) {
            for (const auto& [a, b] : pairing) {
                if (part_sum[a] + part_sum[b] != wtarget) {
                    return false;
                }
            }
            std::vector<std::vector<Natural>> wits;
            wits.reserve(pairing.size());
            for (const auto& [a, b] : pairing) {
                wits.push_back(pool_values(a, b));
            }
            found = assemble(pairing, std::move(wits), std::nullopt);
            return true;
        });
        return found;
    }

    for (std::size_t u = 0; u < k; ++u) {
        std::vector<std::size_t> rest;
        for (std::size_t j = 0; j < k; ++j) {
            if (j != u) {
                rest.push_back(j);
            }
        }
        std::vector<std::pair<std::size_t, std::size_t>> acc;
        std::vector<bool> taken(rest.size(), false);
        bool stopped = for_each_matching(acc, taken, [&](const auto& pairing) {
            std::vector<std::vector<Natural>> wits;
            std::vector<std::pair<std::size_t, std::size_t>> mapped;
            for (const auto& [ia, ib] : pairing) {
                std::size_t a = rest[ia];
                std::size_t b = rest[ib];
                std::vector<Natural> pool = pool_values(a, b);
                std::vector<uint64_t> vals = narrow_or_throw(pool, "plan_good_doubling");
                uint64_t t = narrow_or_throw(wtarget, "plan_good_doubling");
                SubsetSumResult res = subset_sum(vals, t, budget, ss);
                if (res.status == SearchStatus::kUnknown) {
                    throw ResourceError("plan_good_doubling: search budget exhausted");
                }
                if (res.status == SearchStatus::kNotFound) {
                    return false;
                }
                wits.push_back(ascending_from_search(res.chosen));
                mapped.emplace_back(a, b);
            }
            found = assemble(mapped, std::move(wits), u);
            return true;
        });
        if (stopped) {
            break;
        }
    }
    return found;
}

ThreeLayerDoubling three_layer_from_odd_almost_practical(const Natural& n,
                                                         const SolverConfig& config) {
    if (n < 1) {
        throw DomainError("three_layer_from_odd_almost_practical: n must be positive");
    }
    if (n % 2 == 0) {
        throw DomainError("three_layer_from_odd_almost_practical: n must be odd");
    }
    if (n == 3) {
        throw DomainError("three_layer_from_odd_almost_practical: n = 3 is excluded");
    }
    Factorization f = factorize(n);
    if (!is_almost_practical(f, config.table_bit_budget, config.divisor_cap)) {
        throw DomainError("three_layer_from_odd_almost_practical: n is not almost practical");
    }
    Natural s = sigma(f);
    if (s % 6 != 0) {
        throw DomainError("three_layer_from_odd_almost_practical: 6 must divide sigma(n)");
    }

    Decision split = decide_k_layered(n, 2, config);
    if (split.outcome == Outcome::kUnknown) {
        throw ResourceError("three_layer_from_odd_almost_practical: " + split.reason);
    }
    if (split.outcome == Outcome::kRefuted) {
        throw DomainError("three_layer_from_odd_almost_practical: no equal split of the divisors");
    }

    ThreeLayerDoubling out;
    out.cert.n = 2 * n;
    out.cert.k = 3;
    for (const auto& part : split.certificate->parts) {
        std::vector<Natural> doubled;
        doubled.reserve(part.size());
        for (const Natural& d : part) {
            doubled.push_back(2 * d);
        }
        out.cert.parts.push_back(std::move(doubled));
    }
    std::vector<Natural> divs = divisors(f, config.divisor_cap).divisors;
    out.cert.parts.push_back(divs);
    out.cert = finish(std::move(out.cert), "three_layer_from_odd_almost_practical",
                      config.divisor_cap);

    Budget budget(config.node_budget);
    SubsetSumConfig ss{config.table_bit_budget};
    std::vector<uint64_t> vals = narrow_or_throw(divs, "three_layer_from_odd_almost_practical");
    uint64_t t = narrow_or_throw((2 * s) / 3, "three_layer_from_odd_almost_practical");
    SubsetSumResult res = subset_sum(vals, t, budget, ss);
    if (res.status == SearchStatus::kUnknown) {
        throw ResourceError("three_layer_from_odd_almost_practical: search budget exhausted");
    }
    if (res.status == SearchStatus::kNotFound) {
        throw DomainError(
            "three_layer_from_odd_almost_practical: no divisor subset sums to 2*sigma(n)/3");
    }
    out.witness = ascending_from_search(res.chosen);
    return out;
}

Natural exponent_lift(const Factorization& f, const std::vector<unsigned>& lifts) {
    validate(f);
    if (lifts.size() != f.factors.size()) {
        throw DomainError("exponent_lift: one lift per prime factor required");
    }
    Natural out = 1;
    for (std::size_t i = 0; i < lifts.size(); ++i) {
        if (lifts[i] < 1) {
            throw DomainError("exponent_lift: lifts must be positive");
        }
        unsigned a = f.factors[i].exponent;
        out *= pow_natural(f.factors[i].prime, a + lifts[i] * (a + 1));
    }
    return out;
}

}  // namespace layered
