#include "layered/chains.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "layered/errors.hpp"
#include "layered/search.hpp"

namespace layered {
namespace {

using std::uint64_t;

// g = gcd(a, b) along with x, y solving a*x + b*y = g
Natural extended_gcd(const Natural& a, const Natural& b, Natural& x, Natural& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    Natural x1, y1;
    Natural g = extended_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

Natural mod_inverse(const Natural& a, const Natural& mod) {
    Natural x, y;
    extended_gcd(a % mod, mod, x, y);
    Natural inv = x % mod;
    if (inv < 0) {
        inv += mod;
    }
    return inv;
}

}  // namespace

std::optional<Natural> crt_solve(const std::vector<Congruence>& congruences) {
    Natural mod = 1;
    Natural res = 0;
    for (const Congruence& c : congruences) {
        if (c.modulus < 1) {
            throw DomainError("crt_solve: moduli must be positive");
        }
        Natural m = c.modulus;
        Natural r = c.residue % m;
        if (r < 0) {
            r += m;
        }
        Natural g = gcd(mod, m);
        Natural diff = r - res;
        if (diff % g != 0) {
            return std::nullopt;
        }
        Natural mg = m / g;
        if (mg == 1) {
            continue;  // this congruence is already implied
        }
        Natural t = (diff / g) % mg;
        if (t < 0) {
            t += mg;
        }
        t = t * mod_inverse((mod / g) % mg, mg) % mg;
        res += mod * t;
        mod *= mg;
        res %= mod;
    }
    return res;
}

PrimeTuple make_prime_tuple(const std::vector<Natural>& primes) {
    PrimeTuple tuple;
    tuple.primes = primes;
    std::sort(tuple.primes.begin(), tuple.primes.end());
    if (std::adjacent_find(tuple.primes.begin(), tuple.primes.end()) != tuple.primes.end()) {
        throw DomainError("make_prime_tuple: primes must be distinct");
    }
    for (const Natural& p : tuple.primes) {
        if (!is_prime(p)) {
            throw DomainError("make_prime_tuple: tuple contains a non-prime");
        }
    }
    return tuple;
}

bool validate_chain(const GcdChainWitness& witness) {
    if (witness.start < 1) {
        return false;
    }
    Natural product = 1;
    for (const Natural& p : witness.primes) {
        product *= p;
    }
    for (uint64_t j = 0; j < witness.length; ++j) {
        if (gcd(witness.start + j, product) == 1) {
            return false;
        }
    }
    return true;
}

GcdChainWitness crt_chain_start(const PrimeTuple& tuple) {
    if (tuple.primes.empty()) {
        throw DomainError("crt_chain_start: tuple must contain at least one prime");
    }
    std::vector<Congruence> system;
    system.reserve(tuple.primes.size());
    for (std::size_t i = 0; i < tuple.primes.size(); ++i) {
        const Natural& p = tuple.primes[i];
        Natural r = (p - Natural(i) % p) % p;  // start + i = 0 (mod p)
        system.push_back({p, r});
    }
    Natural start = *crt_solve(system);  // distinct primes: always consistent
    if (start == 0) {
        Natural product = 1;
        for (const Natural& p : tuple.primes) {
            product *= p;
        }
        start = product;
    }
    GcdChainWitness witness;
    witness.start = start;
    witness.length = tuple.primes.size();
    witness.primes = tuple.primes;
    return witness;
}

LmaxResult lmax(const PrimeTuple& tuple, uint64_t modulus_budget) {
    LmaxResult out;
    out.witness.primes = tuple.primes;
    if (tuple.primes.empty()) {
        out.witness.start = 1;
        return out;
    }
    Natural product = 1;
    for (const Natural& p : tuple.primes) {
        product *= p;
    }
    if (product > modulus_budget) {
        throw ResourceError("lmax: tuple product exceeds the scan budget");
    }
    uint64_t period = product.convert_to<uint64_t>();
    std::vector<uint64_t> primes;
    primes.reserve(tuple.primes.size());
    for (const Natural& p : tuple.primes) {
        primes.push_back(p.convert_to<uint64_t>());
    }

    // Runs are periodic with the product, and no run reaches a full period
    // (anything = 1 mod the product is coprime to it), so every maximal run
    // appears in full somewhere in [1, 2*period).
    const uint64_t kWindow = uint64_t(1) << 20;
    const uint64_t limit = 2 * period;
    std::vector<std::uint8_t> hit(std::min(kWindow, limit));
    uint64_t best_len = 0;
    uint64_t best_start = 0;
    uint64_t cur_len = 0;
    uint64_t cur_start = 0;
    for (uint64_t lo = 1; lo < limit; lo += kWindow) {
        uint64_t hi = std::min(lo + kWindow, limit);
        std::fill(hit.begin(), hit.begin() + (hi - lo), 0);
        for (uint64_t p : primes) {
            for (uint64_t v = (lo + p - 1) / p * p; v < hi; v += p) {
                hit[v - lo] = 1;
            }
        }
        for (uint64_t v = lo; v < hi; ++v) {
            if (hit[v - lo]) {
                if (cur_len == 0) {
                    cur_start = v;
                }
                ++cur_len;
            } else {
                if (cur_len > best_len) {
                    best_len = cur_len;
                    best_start = cur_start;
                }
                cur_len = 0;
            }
        }
    }
    if (cur_len > best_len) {
        best_len = cur_len;
        best_start = cur_start;
    }
    out.value = best_len;
    out.witness.start = best_start;
    out.witness.length = best_len;
    return out;
}

Natural gap_bound(const Factorization& smallest, bool good, uint64_t modulus_budget) {
    validate(smallest);
    Natural n = value_of(smallest);
    std::vector<Natural> primes;
    for (const PrimePower& pp : smallest.factors) {
        if (good && pp.prime == 2) {
            continue;
        }
        primes.push_back(pp.prime);
    }
    if (primes.empty()) {
        return 0;
    }
    PrimeTuple tuple;
    tuple.primes = std::move(primes);  // factorization output: already prime, ascending
    LmaxResult l = lmax(tuple, modulus_budget);
    return Natural(l.value + 1) * n;
}

GapScan verify_gap_empirically(unsigned k, uint64_t up_to, const SolverConfig& config) {
    if (k < 1) {
        throw DomainError("verify_gap_empirically: k must be positive");
    }
    GapScan scan;
    scan.k = k;
    if (k == 1) {
        if (up_to < 2) {
            throw DomainError("verify_gap_empirically: bound leaves fewer than two terms");
        }
        scan.max_gap = 1;
        scan.lower = 1;
        scan.upper = 2;
        return scan;
    }
    std::vector<Natural> terms = layered_sequence(k, up_to, config);
    if (terms.size() < 2) {
        throw DomainError("verify_gap_empirically: bound leaves fewer than two terms");
    }
    for (std::size_t i = 1; i < terms.size(); ++i) {
        Natural gap = terms[i] - terms[i - 1];
        if (gap > scan.max_gap) {
            scan.max_gap = gap;
            scan.lower = terms[i - 1];
            scan.upper = terms[i];
        }
    }
    return scan;
}

}  // namespace layered
