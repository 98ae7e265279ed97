#include "layered/search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>

#include "layered/construct.hpp"
#include "layered/errors.hpp"
#include "layered/predicates.hpp"

namespace layered {
namespace {

using std::uint64_t;

constexpr std::array<uint64_t, 15> kSmallPrimes = {2,  3,  5,  7,  11, 13, 17, 19,
                                                   23, 29, 31, 37, 41, 43, 47};

struct ShapeCandidate {
    uint64_t value;
    Natural sigma;
};

// Candidates with non-increasing exponents over an initial prime segment —
// the only shape an abundancy record can take (moving any exponent to a
// smaller prime lowers the value without lowering sigma(n)/n).
void shaped_candidates(std::size_t idx, unsigned max_exp, uint64_t value, const Natural& sig,
                       uint64_t bound, std::vector<ShapeCandidate>& out) {
    out.push_back({value, sig});
    if (idx == kSmallPrimes.size()) {
        return;
    }
    uint64_t p = kSmallPrimes[idx];
    uint64_t v = value;
    Natural ppow = 1;
    Natural psum = 1;
    for (unsigned e = 1; e <= max_exp; ++e) {
        if (v > bound / p) {
            break;
        }
        v *= p;
        ppow *= p;
        psum += ppow;  // 1 + p + ... + p^e
        shaped_candidates(idx + 1, e, v, sig * psum, bound, out);
    }
}

std::vector<SuperabundantEntry> records_up_to(uint64_t bound) {
    std::vector<ShapeCandidate> candidates;
    shaped_candidates(0, 63, 1, 1, bound, candidates);
    std::sort(candidates.begin(), candidates.end(),
              [](const ShapeCandidate& a, const ShapeCandidate& b) { return a.value < b.value; });
    std::vector<SuperabundantEntry> records;
    Natural best_sigma = 0;
    Natural best_value = 1;
    for (const ShapeCandidate& c : candidates) {
        if (c.sigma * best_value > best_sigma * c.value) {
            records.push_back({Natural(c.value), Ratio(c.sigma, Natural(c.value))});
            best_sigma = c.sigma;
            best_value = c.value;
        }
    }
    return records;
}

uint64_t integer_sqrt(uint64_t n) {
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) {
        --r;
    }
    while ((r + 1) * (r + 1) <= n) {
        ++r;
    }
    return r;
}

constexpr uint64_t kSieveWindow = uint64_t(1) << 20;

}  // namespace

std::vector<SuperabundantEntry> superabundant_list(std::size_t count, std::size_t max_count) {
    if (count < 1) {
        throw DomainError("superabundant_list: count must be positive");
    }
    if (count > max_count) {
        throw ResourceError("superabundant_list: count exceeds the configured maximum");
    }
    uint64_t bound = 1'000'000;
    while (true) {
        std::vector<SuperabundantEntry> records = records_up_to(bound);
        if (records.size() >= count) {
            records.resize(count);
            return records;
        }
        if (bound > std::numeric_limits<uint64_t>::max() / 8) {
            throw ResourceError("superabundant_list: enumeration bound overflow");
        }
        bound *= 8;
    }
}

Natural smallest_k_abundant(unsigned k) {
    if (k < 1) {
        throw DomainError("smallest_k_abundant: k must be positive");
    }
    if (k == 1) {
        return 1;
    }
    if (k > 5) {
        throw ResourceError("smallest_k_abundant: k beyond the confirmed range");
    }
    // The first abundancy record reaching k beats every smaller integer by
    // the record property, so it is the minimum.
    for (const SuperabundantEntry& e : superabundant_list(60)) {
        if (e.abundancy >= k) {
            return e.n;
        }
    }
    throw ResourceError("smallest_k_abundant: not reached within the record list");
}

std::vector<uint64_t> sigma_window(uint64_t lo, uint64_t hi) {
    if (lo < 1) {
        throw DomainError("sigma_window: range must start at 1 or above");
    }
    if (hi <= lo) {
        return {};
    }
    std::vector<uint64_t> sig(hi - lo, 0);
    uint64_t split = std::max<uint64_t>(integer_sqrt(hi - 1), 1);
    for (uint64_t d = 1; d <= split; ++d) {
        for (uint64_t v = (lo + d - 1) / d * d; v < hi; v += d) {
            sig[v - lo] += d;
        }
    }
    // divisors above the split, counted through their cofactor q = v / d
    for (uint64_t q = 1; q <= (hi - 1) / split; ++q) {
        uint64_t start = std::max(lo, q * split + 1);
        for (uint64_t v = (start + q - 1) / q * q; v < hi; v += q) {
            sig[v - lo] += v / q;
        }
    }
    return sig;
}

std::optional<Natural> first_good_k_abundant_in(unsigned k, uint64_t lo, uint64_t hi) {
    if (k < 1) {
        throw DomainError("first_good_k_abundant_in: k must be positive");
    }
    lo = std::max<uint64_t>(lo, 1);
    for (uint64_t wlo = lo; wlo < hi; wlo += kSieveWindow) {
        uint64_t whi = std::min(wlo + kSieveWindow, hi);
        std::vector<uint64_t> sig = sigma_window(wlo, whi);
        for (uint64_t n = wlo; n < whi; ++n) {
            uint64_t s = sig[n - wlo];
            if (s % k == 0 && s >= k * n) {
                return Natural(n);
            }
        }
    }
    return std::nullopt;
}

Natural smallest_good_k_abundant(unsigned k) {
    if (k < 1) {
        throw DomainError("smallest_good_k_abundant: k must be positive");
    }
    if (k == 1) {
        return 1;
    }
    if (k > 5) {
        throw ResourceError("smallest_good_k_abundant: k beyond the confirmed range");
    }
    Natural a = smallest_k_abundant(k);
    // Some abundancy record above a has k | sigma too, closing the range a
    // sieve has to cover.
    Natural upper = 0;
    for (const SuperabundantEntry& e : superabundant_list(60)) {
        if (e.n >= a && e.abundancy >= k && sigma(factorize(e.n)) % k == 0) {
            upper = e.n;
            break;
        }
    }
    if (upper == 0) {
        throw ResourceError("smallest_good_k_abundant: no bounding record found");
    }
    if (upper == a) {
        return a;
    }
    std::optional<Natural> found = first_good_k_abundant_in(
        k, a.convert_to<uint64_t>(), upper.convert_to<uint64_t>() + 1);
    return *found;  // upper itself qualifies, so the scan cannot miss
}

SmallestLayered smallest_k_layered(unsigned k, const SolverConfig& config) {
    if (k < 1) {
        throw DomainError("smallest_k_layered: k must be positive");
    }
    if (k == 1) {
        SmallestLayered out;
        out.n = 1;
        out.certificate.n = 1;
        out.certificate.k = 1;
        out.certificate.parts = {{Natural(1)}};
        return out;
    }
    if (k > 5) {
        throw ResourceError("smallest_k_layered: k beyond the confirmed range");
    }
    // k-layered implies k-abundant with k | sigma, so candidates are the
    // good-k-abundant integers in order.
    uint64_t lo = smallest_k_abundant(k).convert_to<uint64_t>();
    uint64_t limit = lo > (uint64_t(1) << 60) / 8 ? 0 : 8 * lo;
    for (uint64_t wlo = lo; wlo < limit; wlo += kSieveWindow) {
        uint64_t whi = std::min(wlo + kSieveWindow, limit);
        std::vector<uint64_t> sig = sigma_window(wlo, whi);
        for (uint64_t n = wlo; n < whi; ++n) {
            uint64_t s = sig[n - wlo];
            if (s % k != 0 || s < k * n) {
                continue;
            }
            Decision dec = decide_k_layered(Natural(n), k, config);
            if (dec.outcome == Outcome::kProven) {
                return {Natural(n), *dec.certificate};
            }
            if (dec.outcome == Outcome::kUnknown) {
                throw ResourceError("smallest_k_layered: candidate " + std::to_string(n) +
                                    " undecided within budget");
            }
        }
    }
    throw ResourceError("smallest_k_layered: scan limit reached");
}

std::vector<Natural> layered_sequence(unsigned k, uint64_t up_to, const SolverConfig& config) {
    if (k < 1) {
        throw DomainError("layered_sequence: k must be positive");
    }
    if (up_to > 1'000'000) {
        throw DomainError("layered_sequence: bound exceeds the supported range");
    }
    std::vector<Natural> out;
    if (k == 1) {
        out.reserve(up_to);
        for (uint64_t n = 1; n <= up_to; ++n) {
            out.emplace_back(n);
        }
        return out;
    }
    for (uint64_t wlo = 1; wlo <= up_to; wlo += kSieveWindow) {
        uint64_t whi = std::min(wlo + kSieveWindow, up_to + 1);
        std::vector<uint64_t> sig = sigma_window(wlo, whi);
        for (uint64_t n = wlo; n < whi; ++n) {
            uint64_t s = sig[n - wlo];
            if (s % k != 0 || s < k * n) {
                continue;
            }
            Decision dec = decide_k_layered(Natural(n), k, config);
            if (dec.outcome == Outcome::kProven) {
                out.emplace_back(n);
            } else if (dec.outcome == Outcome::kUnknown) {
                throw ResourceError("layered_sequence: " + std::to_string(n) +
                                    " undecided within budget");
            }
        }
    }
    return out;
}

std::vector<std::pair<unsigned, Decision>> factorial_layered_scan(unsigned k, unsigned n_max,
                                                                  const SolverConfig& config) {
    if (k < 1 || n_max < 1) {
        throw DomainError("factorial_layered_scan: k and n_max must be positive");
    }
    if (n_max > 14) {
        throw DomainError("factorial_layered_scan: n_max exceeds the supported range");
    }
    std::vector<std::pair<unsigned, Decision>> out;
    out.reserve(n_max);
    for (unsigned n = 1; n <= n_max; ++n) {
        Factorization f = factorial_factorization(n);
        Natural value = value_of(f);
        NecessaryCheck nec = necessary_k_layered(f, k);
        if (!nec.ok) {
            out.emplace_back(n, Decision{Outcome::kRefuted, std::nullopt, nec.reason, 0});
            continue;
        }
        if (k == 3 && n >= 9) {
            // odd part route: split once at the odd part, then double the
            // certificate back up through the full power of two
            Factorization fodd = f;
            fodd.factors.erase(fodd.factors.begin());  // factor 2 leads
            Natural modd = value_of(fodd);
            Natural sodd = sigma(fodd);
            unsigned alpha = f.factors.front().exponent;
            if (sodd % 6 == 0 &&
                is_almost_practical(fodd, config.table_bit_budget, config.divisor_cap)) {
                ThreeLayerDoubling step = three_layer_from_odd_almost_practical(modd, config);
                PartitionCertificate cert = step.cert;
                for (unsigned t = 2; t <= alpha; ++t) {
                    cert = double_certificate_3(cert, step.witness);
                }
                out.emplace_back(n, Decision{Outcome::kProven, std::move(cert), "", 0});
                continue;
            }
        }
        if (k == 4 && n >= 11) {
            // product route: n! = (2^a * p) * m with both halves 2-layered
            const PrimePower& top = f.factors.back();
            if (top.exponent == 1) {
                Natural left = pow_natural(2, f.factors.front().exponent) * top.prime;
                Natural right = value / left;
                Decision dl = is_zumkeller(left, config);
                Decision dr = is_zumkeller(right, config);
                if (dl.outcome == Outcome::kProven && dr.outcome == Outcome::kProven) {
                    PartitionCertificate cert =
                        product_certificate(*dl.certificate, *dr.certificate);
                    out.emplace_back(n, Decision{Outcome::kProven, std::move(cert), "", 0});
                    continue;
                }
            }
        }
        out.emplace_back(n, decide_k_layered(value, k, config));
    }
    return out;
}

F3Witness f3_witness(unsigned n) {
    if (n < 11) {
        throw DomainError("f3_witness: n must be at least 11");
    }
    Factorization f = factorial_factorization(n);
    F3Witness out;
    std::size_t count = f.factors.size();
    out.top_two_unit_exponent =
        count >= 2 && f.factors[count - 1].exponent == 1 && f.factors[count - 2].exponent == 1;
    out.largest_prime_bounded =
        f.factors.back().prime <= pow_natural(2, f.factors.front().exponent);
    out.q = 0;
    for (auto it = f.factors.rbegin(); it != f.factors.rend(); ++it) {
        if (it->exponent == 1 && it->prime % 3 == 2) {
            out.q = it->prime;
            break;
        }
    }
    return out;
}

std::vector<PqrRecord> pqr_scan(unsigned alpha_max, unsigned beta_max, uint64_t prime_bound,
                                const SolverConfig& config) {
    if (alpha_max < 1 || alpha_max > 8 || beta_max < 1 || beta_max > 4 || prime_bound < 5 ||
        prime_bound > 50) {
        throw DomainError("pqr_scan: bounds outside the supported desk scale");
    }
    std::vector<uint64_t> primes;
    for (uint64_t p = 5; p <= prime_bound; ++p) {
        if (is_prime_u64(p)) {
            primes.push_back(p);
        }
    }
    std::vector<PqrRecord> out;
    for (unsigned alpha = 1; alpha <= alpha_max; ++alpha) {
        for (unsigned beta = 1; beta <= beta_max; ++beta) {
            for (std::size_t i = 0; i < primes.size(); ++i) {
                for (std::size_t j = i + 1; j < primes.size(); ++j) {
                    Natural n = pow_natural(2, alpha) * pow_natural(3, beta) * primes[i] *
                                primes[j];
                    Decision dec = decide_k_layered(n, 4, config);
                    out.push_back({n, alpha, beta, primes[i], primes[j], dec.outcome});
                }
            }
        }
    }
    return out;
}

namespace {

void push_family(std::vector<NearPerfectEntry>& out, const Natural& n, const Natural& bound,
                 const char* family) {
    if (n < 1 || n > bound) {
        return;
    }
    Factorization f = factorize(n);
    std::optional<NearPerfectWitness> wit = is_near_perfect(f);
    if (!wit) {
        return;
    }
    out.push_back({n, wit->d, sigma(f) % 2 == 0, family});
}

std::vector<uint64_t> divisors_u64(uint64_t n) {
    Factorization f = factorize_u64(n);
    std::vector<uint64_t> divs = {1};
    for (const PrimePower& pp : f.factors) {
        uint64_t p = pp.prime.convert_to<uint64_t>();
        std::size_t base = divs.size();
        uint64_t ppow = 1;
        for (unsigned e = 1; e <= pp.exponent; ++e) {
            ppow *= p;
            for (std::size_t i = 0; i < base; ++i) {
                divs.push_back(divs[i] * ppow);
            }
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

}  // namespace

std::vector<NearPerfectEntry> near_perfect_families(unsigned alpha_max, const Natural& bound) {
    if (alpha_max < 1 || alpha_max > 40) {
        throw DomainError("near_perfect_families: alpha_max must be in [1, 40]");
    }
    std::vector<NearPerfectEntry> out;

    // 2^(t-1) * m with m = 2^t - 2^j - 1 prime
    for (unsigned t = 2; t <= alpha_max + 1; ++t) {
        for (unsigned j = 0; j < t; ++j) {
            Natural m = pow_natural(2, t) - pow_natural(2, j) - 1;
            if (m < 2 || !is_prime(m)) {
                continue;
            }
            push_family(out, pow_natural(2, t - 1) * m, bound, "2^(t-1)(2^t-2^j-1)");
        }
    }

    // Mersenne-built shapes
    for (unsigned p : {2, 3, 5, 7, 13, 17, 19, 31}) {
        Natural mp = pow_natural(2, p) - 1;
        if (!is_prime(mp)) {
            continue;
        }
        if (2 * p - 1 <= alpha_max) {
            push_family(out, pow_natural(2, 2 * p - 1) * mp, bound, "2^(2p-1)(2^p-1)");
        }
        if (p - 1 >= 1 && p - 1 <= alpha_max) {
            push_family(out, pow_natural(2, p - 1) * mp * mp, bound, "2^(p-1)(2^p-1)^2");
        }
    }

    push_family(out, 40, bound, "sporadic");

    // 2^a * p1 * p2 with the redundant divisor a power of two
    unsigned lcap = std::min(alpha_max, 28u);  // keeps 2^(2a+1) in range
    for (unsigned a = 2; a <= lcap; ++a) {
        uint64_t m = (uint64_t(1) << (a + 1)) - 1;
        for (unsigned b = 1; b <= a; ++b) {
            uint64_t d = uint64_t(1) << b;
            // shape (i): p2 = m / j, p1 = (m + j) / (2^b + 1 - j)
            for (uint64_t j : divisors_u64(m)) {
                if (j > d) {
                    break;
                }
                uint64_t denom = d + 1 - j;
                if ((m + j) % denom != 0) {
                    continue;
                }
                Natural p1 = (m + j) / denom;
                Natural p2 = m / j;
                if (p1 >= p2 || p1 < 3 || !is_prime(p1) || !is_prime(p2)) {
                    continue;
                }
                push_family(out, pow_natural(2, a) * p1 * p2, bound, "2^a*p1*p2 (i)");
            }
            // shape (ii): p1 = m + (2^a - 2^(b-1)) / j, p2 = m * (2j + 1) - 2^b
            uint64_t num2 = (uint64_t(1) << a) - (uint64_t(1) << (b - 1));
            for (uint64_t j : divisors_u64(num2)) {
                Natural p1 = Natural(m) + num2 / j;
                Natural p2 = Natural(m) * (2 * j + 1) - d;
                if (p1 == p2 || p1 < 3 || p2 < 3 || !is_prime(p1) || !is_prime(p2)) {
                    continue;
                }
                push_family(out, pow_natural(2, a) * p1 * p2, bound, "2^a*p1*p2 (ii)");
            }
            // shape (iii): p1 = 2j + m, p2 = m + (2^(2a+1) - 2^a - 2^(b-1)) / j
            uint64_t num3 = (uint64_t(1) << (2 * a + 1)) - (uint64_t(1) << a) -
                            (uint64_t(1) << (b - 1));
            for (uint64_t j : divisors_u64(num3)) {
                Natural p1 = Natural(2 * j) + m;
                Natural p2 = Natural(m) + num3 / j;
                if (p1 == p2 || !is_prime(p1) || !is_prime(p2)) {
                    continue;
                }
                push_family(out, pow_natural(2, a) * p1 * p2, bound, "2^a*p1*p2 (iii)");
            }
        }
    }

    std::sort(out.begin(), out.end(),
              [](const NearPerfectEntry& x, const NearPerfectEntry& y) { return x.n < y.n; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const NearPerfectEntry& x, const NearPerfectEntry& y) {
                              return x.n == y.n;
                          }),
              out.end());
    return out;
}

SearchRecord search_record(unsigned k, const SolverConfig& config) {
    SearchRecord rec;
    rec.k = k;
    rec.smallest_abundant = smallest_k_abundant(k);
    rec.abundant_provenance = "superabundant-shortcut";
    rec.smallest_good_abundant = smallest_good_k_abundant(k);
    rec.good_provenance =
        rec.smallest_good_abundant == rec.smallest_abundant ? "superabundant-shortcut"
                                                            : "sieve-exhaustive";
    SmallestLayered sl = smallest_k_layered(k, config);
    rec.smallest_layered = sl.n;
    rec.layered_provenance = "solver";
    return rec;
}

}  // namespace layered
