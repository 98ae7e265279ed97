#include "layered/arith.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>

namespace layered {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

bool miller_rabin_u64(u64 n, u64 a) {
    if (a % n == 0) return true;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

u64 pollard_rho_u64(u64 n) {
    if ((n & 1) == 0) return 2;
    // Brent's cycle variant with batched gcds.
    for (u64 c = 1;; ++c) {
        auto f = [&](u64 x) { return (mulmod(x, x, n) + c) % n; };
        u64 x = 2, y = 2, d = 1, q = 1, ys = 0;
        const unsigned m = 128;
        for (unsigned r = 1; d == 1; r <<= 1) {
            x = y;
            for (unsigned i = 0; i < r; ++i) y = f(y);
            for (unsigned k = 0; k < r && d == 1; k += m) {
                ys = y;
                for (unsigned i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                d = std::gcd(q, n);
            }
        }
        if (d == n) {
            do {
                ys = f(ys);
                d = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (d == 1);
        }
        if (d != n) return d;
    }
}

void factor_u64_into(u64 n, std::vector<u64>& primes) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        primes.push_back(n);
        return;
    }
    u64 d = pollard_rho_u64(n);
    factor_u64_into(d, primes);
    factor_u64_into(n / d, primes);
}

// Deterministic for n < 3.317e24; fixed extension beyond.
const std::array<unsigned, 12> kCertifiedBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
const std::array<unsigned, 12> kExtraBases = {41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};

bool miller_rabin_natural(const Natural& n, const Natural& a) {
    if (a % n == 0) return true;
    Natural d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    Natural x = boost::multiprecision::powm(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n - 1) return true;
    }
    return false;
}

Natural pollard_rho_natural(const Natural& n) {
    if ((n & 1) == 0) return 2;
    for (Natural c = 1;; ++c) {
        Natural x = 2, y = 2, d = 1;
        do {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Natural diff = x > y ? x - y : y - x;
            d = boost::multiprecision::gcd(diff, n);
        } while (d == 1);
        if (d != n) return d;
    }
}

void factor_natural_into(const Natural& n, std::vector<Natural>& primes) {
    if (n == 1) return;
    if (is_prime(n)) {
        primes.push_back(n);
        return;
    }
    Natural d = pollard_rho_natural(n);
    factor_natural_into(d, primes);
    factor_natural_into(n / d, primes);
}

Factorization from_prime_list_u64(std::vector<u64> primes) {
    std::sort(primes.begin(), primes.end());
    Factorization f;
    for (std::size_t i = 0; i < primes.size();) {
        std::size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        f.factors.push_back({Natural(primes[i]), static_cast<unsigned>(j - i)});
        i = j;
    }
    return f;
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    for (unsigned a : kCertifiedBases) {
        if (!miller_rabin_u64(n, a)) return false;
    }
    return true;
}

bool is_prime(const Natural& n) {
    if (auto small = to_u64(n)) return is_prime_u64(*small);
    if ((n & 1) == 0) return false;
    for (unsigned p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return false;
    }
    for (unsigned a : kCertifiedBases) {
        if (!miller_rabin_natural(n, a)) return false;
    }
    // n >= 3.3e24 only: extended fixed bases.
    if (n > Natural("3317044064679887385961981")) {
        for (unsigned a : kExtraBases) {
            if (!miller_rabin_natural(n, a)) return false;
        }
    }
    return true;
}

Factorization factorize_u64(u64 n) {
    if (n == 0) throw DomainError("factorize: n must be >= 1");
    Factorization f;
    for (u64 p : {2, 3, 5}) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.factors.push_back({Natural(p), e});
        }
    }
    // Wheel over 7, 11, 13, ... up to 10^6.
    static const std::array<unsigned, 8> wheel = {4, 2, 4, 2, 4, 6, 2, 6};
    std::size_t w = 0;
    for (u64 p = 7; p <= 1000000 && p * p <= n; p += wheel[w], w = (w + 1) % 8) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.factors.push_back({Natural(p), e});
        }
    }
    if (n > 1) {
        std::vector<u64> primes;
        factor_u64_into(n, primes);
        Factorization rest = from_prime_list_u64(std::move(primes));
        f.factors.insert(f.factors.end(), rest.factors.begin(), rest.factors.end());
    }
    std::sort(f.factors.begin(), f.factors.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    return f;
}

Factorization factorize(const Natural& n) {
    if (n < 1) throw DomainError("factorize: n must be >= 1");
    if (auto small = to_u64(n)) return factorize_u64(*small);

    Factorization f;
    Natural rest = n;
    for (u64 p : {u64(2), u64(3), u64(5)}) {
        if (rest % p == 0) {
            unsigned e = 0;
            while (rest % p == 0) { rest /= p; ++e; }
            f.factors.push_back({Natural(p), e});
        }
    }
    static const std::array<unsigned, 8> wheel = {4, 2, 4, 2, 4, 6, 2, 6};
    std::size_t w = 0;
    for (u64 p = 7; p <= 1000000; p += wheel[w], w = (w + 1) % 8) {
        if (rest <= std::numeric_limits<u64>::max()) break;  // drop to the fast path
        if (rest % p == 0) {
            unsigned e = 0;
            while (rest % p == 0) { rest /= p; ++e; }
            f.factors.push_back({Natural(p), e});
        }
    }
    if (rest > 1) {
        if (auto small = to_u64(rest)) {
            std::vector<u64> primes;
            factor_u64_into(*small, primes);
            Factorization tail = from_prime_list_u64(std::move(primes));
            f.factors.insert(f.factors.end(), tail.factors.begin(), tail.factors.end());
        } else {
            std::vector<Natural> primes;
            factor_natural_into(rest, primes);
            std::sort(primes.begin(), primes.end());
            for (std::size_t i = 0; i < primes.size();) {
                std::size_t j = i;
                while (j < primes.size() && primes[j] == primes[i]) ++j;
                f.factors.push_back({primes[i], static_cast<unsigned>(j - i)});
                i = j;
            }
        }
    }
    std::sort(f.factors.begin(), f.factors.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    return f;
}

void validate(const Factorization& f) {
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
        const auto& pp = f.factors[i];
        if (pp.exponent == 0) throw DomainError("factorization: exponent must be >= 1");
        if (pp.prime < 2 || !is_prime(pp.prime))
            throw DomainError("factorization: entries must be prime");
        if (i > 0 && !(f.factors[i - 1].prime < pp.prime))
            throw DomainError("factorization: primes must be strictly increasing");
    }
}

Natural value_of(const Factorization& f) {
    Natural v = 1;
    for (const auto& pp : f.factors) v *= pow_natural(pp.prime, pp.exponent);
    return v;
}

Natural pow_natural(const Natural& base, unsigned exponent) {
    Natural r = 1;
    for (unsigned i = 0; i < exponent; ++i) r *= base;
    return r;
}

Natural sigma(const Factorization& f) {
    // Product over prime powers of (p^(e+1) - 1) / (p - 1).
    Natural s = 1;
    for (const auto& pp : f.factors) {
        s *= (pow_natural(pp.prime, pp.exponent + 1) - 1) / (pp.prime - 1);
    }
    return s;
}

Natural euler_phi(const Factorization& f) {
    Natural r = 1;
    for (const auto& pp : f.factors) {
        r *= pow_natural(pp.prime, pp.exponent - 1) * (pp.prime - 1);
    }
    return r;
}

Natural divisor_count(const Factorization& f) {
    Natural c = 1;
    for (const auto& pp : f.factors) c *= pp.exponent + 1;
    return c;
}

Ratio abundancy(const Factorization& f) {
    return Ratio(sigma(f), value_of(f));
}

DivisorSet divisors(const Factorization& f, u64 max_count) {
    Natural count = divisor_count(f);
    if (count > max_count) {
        throw ResourceError("divisors: divisor count " + count.str() +
                            " exceeds cap " + std::to_string(max_count));
    }
    std::vector<Natural> divs = {Natural(1)};
    divs.reserve(static_cast<std::size_t>(count));
    for (const auto& pp : f.factors) {
        const std::size_t base_size = divs.size();
        Natural power = 1;
        for (unsigned e = 1; e <= pp.exponent; ++e) {
            power *= pp.prime;
            for (std::size_t i = 0; i < base_size; ++i) divs.push_back(divs[i] * power);
        }
    }
    std::sort(divs.begin(), divs.end());
    return DivisorSet{value_of(f), std::move(divs)};
}

Factorization factorial_factorization(unsigned n) {
    Factorization f;
    std::vector<bool> composite(n + 1, false);
    for (unsigned p = 2; p <= n; ++p) {
        if (composite[p]) continue;
        for (unsigned q = p * 2; q <= n; q += p) composite[q] = true;
        // Legendre: valuation of p in n! is sum over floor(n / p^i).
        unsigned long long e = 0;
        for (unsigned long long pk = p; pk <= n; pk *= p) {
            e += n / pk;
            if (pk > n / p) break;  // avoid overflow of pk *= p
        }
        f.factors.push_back({Natural(p), static_cast<unsigned>(e)});
    }
    return f;
}

std::optional<u64> to_u64(const Natural& n) {
    if (n < 0 || n > std::numeric_limits<u64>::max()) return std::nullopt;
    return static_cast<u64>(n);
}

std::optional<std::vector<u64>> to_u64(const std::vector<Natural>& values) {
    std::vector<u64> out;
    out.reserve(values.size());
    for (const auto& v : values) {
        auto small = to_u64(v);
        if (!small) return std::nullopt;
        out.push_back(*small);
    }
    return out;
}

}  // namespace layered
