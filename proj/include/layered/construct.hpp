#pragma once

#include <optional>
#include <vector>

#include "layered/arith.hpp"
#include "layered/partition.hpp"

namespace layered {

// Certificate transformers. Each one re-checks its hypotheses (invalid
// certificates would propagate silently otherwise) and runs its output
// through verify_certificate before returning, so a returned certificate is
// always valid. Hypothesis violations throw DomainError; searches that run
// out of budget throw ResourceError.

// n -> n*w for gcd(n, w) = 1, same k: every divisor of w multiplies into
// every part.
PartitionCertificate scale_coprime(const PartitionCertificate& cert, const Natural& w);

// (n, k) x (m, k') -> (n*m, k*k') for gcd(n, m) = 1: part (i, j) holds the
// pairwise products of part i of n and part j of m.
PartitionCertificate product_certificate(const PartitionCertificate& a,
                                         const PartitionCertificate& b);

// (n, k) -> (n*m, k+1) for gcd(n, m) = 1, given a subset of D_m summing to
// sigma(m)/(k+1): the complement multiplies into the old parts, the chosen
// subset against D_n forms the new part.
PartitionCertificate extend_by_fraction(const PartitionCertificate& cert, const Natural& m,
                                        const std::vector<Natural>& chosen);

// (n, k) with sigma(n) = k*n, and m with n | m, sigma(m) = (k+1)*m:
// scaling every part by m/n gives k parts of D_m summing to m each; the
// leftover divisors form the (k+1)-th part.
PartitionCertificate lift_multiperfect(const PartitionCertificate& cert, const Natural& m,
                                       std::uint64_t divisor_cap = kDefaultDivisorCap);

// sigma(n) = 3n: parts {witness, {n}, rest} where the witness is a set of
// proper divisors summing to n.
PartitionCertificate multiperfect_3layered(const Natural& n, const SolverConfig& config = {});

// sigma(n) = 4n: built from a divisor set of n/2 summing to n (n/2 practical)
// plus a scaled semiperfect witness of the odd part; falls back to the
// general solver when the structural shape is absent.
PartitionCertificate multiperfect_4layered(const Natural& n, const SolverConfig& config = {});

// sigma(n) = 5n: splits n = m*t with m = 2^a * p^b (p in {5, 7}) and builds
// four explicit parts from semiperfect witnesses of m and t; solver fallback
// when the shape is absent.
PartitionCertificate multiperfect_5layered(const Natural& n, const SolverConfig& config = {});

// Doubling transformers: from a certificate for 2^a * n (n odd) and
// equal-sum witness subsets of D_n, build a certificate for 2^(a+1) * n.
// The witness images {2^a * d} must land inside consecutive part pairs
// (parts 1-2, 3-4, ...) — use plan_good_doubling to reorder parts and derive
// witnesses that satisfy this. The output admits the same witnesses again,
// so doubling iterates indefinitely.
PartitionCertificate double_certificate_3(const PartitionCertificate& cert,
                                          const std::vector<Natural>& witness);
PartitionCertificate double_certificate_general(const PartitionCertificate& cert,
                                                const std::vector<std::vector<Natural>>& witnesses);

struct GoodDoublingPlan {
    PartitionCertificate cert;  // input parts, reordered to match the witnesses
    std::vector<std::vector<Natural>> witnesses;
};

// Searches for witnesses making the doubling transformers applicable:
// tries the possible part pairings and solves a constrained subset-sum per
// pair (odd k) or checks the forced pair pools (even k).
std::optional<GoodDoublingPlan> plan_good_doubling(const PartitionCertificate& cert,
                                                   const SolverConfig& config = {});

struct ThreeLayerDoubling {
    PartitionCertificate cert;     // 3-layered certificate for 2n
    std::vector<Natural> witness;  // subset of D_n summing to 2*sigma(n)/3
};

// For odd almost practical n (n != 3) with 6 | sigma(n): {2*A_1, 2*A_2, D_n}
// is a 3-layered partition of 2n, where {A_1, A_2} is an equal split of D_n.
// The returned witness feeds double_certificate_3 on the result.
ThreeLayerDoubling three_layer_from_odd_almost_practical(const Natural& n,
                                                         const SolverConfig& config = {});

// p_i^(a_i) -> p_i^(a_i + l_i*(a_i+1)) for positive lifts l_i; returns the
// lifted integer only — re-establish the partition by solver or construction
// at the call site, which stays exact where the blow-up is desk-scale.
Natural exponent_lift(const Factorization& f, const std::vector<unsigned>& lifts);

}  // namespace layered
