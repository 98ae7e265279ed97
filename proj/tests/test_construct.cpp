#include <doctest.h>

#include <layered/certificate_io.hpp>
#include <layered/construct.hpp>
#include <layered/errors.hpp>
#include <layered/partition.hpp>
#include <layered/subset_sum.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <string>

using namespace layered;

namespace {

std::string fixture(const char* name) {
    return std::string(LAYERED_FIXTURE_DIR) + "/" + name;
}

Natural part_sum(const std::vector<Natural>& part) {
    Natural s = 0;
    for (const auto& v : part) s += v;
    return s;
}

// Divisors of an odd number minus a chosen witness, as a sorted vector.
std::vector<Natural> complement_in(const DivisorSet& ds, const std::vector<Natural>& taken) {
    std::set<Natural> drop(taken.begin(), taken.end());
    std::vector<Natural> rest;
    for (const auto& d : ds.divisors)
        if (!drop.count(d)) rest.push_back(d);
    return rest;
}

}  // namespace

TEST_CASE("scale_coprime multiplies every divisor of w into every part") {
    const Decision base = decide_k_layered(Natural(6), 2);
    REQUIRE(base.outcome == Outcome::kProven);
    const PartitionCertificate scaled = scale_coprime(*base.certificate, Natural(35));
    CHECK(scaled.n == 210);
    CHECK(scaled.k == 2);
    CHECK(verify_certificate(scaled).valid);

    // Composition equals the single combined scaling (as divisor multisets).
    const PartitionCertificate two_step =
        scale_coprime(scale_coprime(*base.certificate, Natural(5)), Natural(7));
    auto canon = [](const PartitionCertificate& c) {
        auto parts = c.parts;
        for (auto& p : parts) std::sort(p.begin(), p.end());
        return parts;
    };
    CHECK(canon(two_step) == canon(scaled));

    CHECK_THROWS_AS(scale_coprime(*base.certificate, Natural(10)), DomainError);  // gcd != 1
}

TEST_CASE("product_certificate multiplies parts pairwise") {
    const Decision a = decide_k_layered(Natural(6), 2);
    const Decision b = decide_k_layered(Natural(35 * 7), 1);  // any coprime 1-part cert
    REQUIRE(a.outcome == Outcome::kProven);
    REQUIRE(b.outcome == Outcome::kProven);
    const PartitionCertificate prod = product_certificate(*a.certificate, *b.certificate);
    CHECK(prod.n == Natural(6) * 245);
    CHECK(prod.k == 2);
    CHECK(verify_certificate(prod).valid);

    // k x k' parts, each summing sigma(nm)/(k k'). 945 and 572 are coprime
    // and both admit equal splits.
    const Decision odd_half = decide_k_layered(Natural(945), 2);
    const Decision even_half = decide_k_layered(Natural(572), 2);
    REQUIRE(odd_half.outcome == Outcome::kProven);
    REQUIRE(even_half.outcome == Outcome::kProven);
    const PartitionCertificate q =
        product_certificate(*odd_half.certificate, *even_half.certificate);
    CHECK(q.n == 945 * 572);
    CHECK(q.k == 4);
    const Natural expected = sigma(factorize(q.n)) / 4;
    for (const auto& part : q.parts) CHECK(part_sum(part) == expected);

    CHECK_THROWS_AS(product_certificate(*a.certificate, *a.certificate), DomainError);  // gcd = 6
}

TEST_CASE("extend_by_fraction appends one part from a chosen divisor subset") {
    const Decision base = decide_k_layered(Natural(6), 2);
    REQUIRE(base.outcome == Outcome::kProven);
    // sigma(13)/3 is not an integer, so no chosen subset can qualify.
    CHECK_THROWS_AS(
        extend_by_fraction(*base.certificate, Natural(13), {Natural(1)}),
        DomainError);

    // Working instance: m = 1925 = 5^2*7*11 is coprime to 6, sigma(m) = 2976,
    // and {25, 55, 77, 175, 275, 385} sums to 2976/3 = 992.
    const std::vector<Natural> chosen{Natural(25),  Natural(55),  Natural(77),
                                      Natural(175), Natural(275), Natural(385)};
    const PartitionCertificate ext =
        extend_by_fraction(*base.certificate, Natural(1925), chosen);
    CHECK(ext.n == 11550);
    CHECK(ext.k == 3);
    CHECK(verify_certificate(ext).valid);

    // A claimed subset with the wrong sum is rejected.
    CHECK_THROWS_AS(extend_by_fraction(*base.certificate, Natural(1925), {Natural(1)}),
                    DomainError);
    // Sharing a prime with n is rejected.
    CHECK_THROWS_AS(extend_by_fraction(*base.certificate, Natural(3), {Natural(1)}),
                    DomainError);
}

TEST_CASE("multiperfect three-part construction on the known 3-perfect numbers") {
    for (const char* s : {"120", "672", "523776", "459818240"}) {
        const Natural n(s);
        const PartitionCertificate cert = multiperfect_3layered(n);
        CHECK(cert.n == n);
        CHECK(cert.k == 3);
        CHECK(verify_certificate(cert).valid);
        // Shape: one part is exactly {n}.
        bool has_singleton = false;
        for (const auto& part : cert.parts)
            has_singleton = has_singleton || (part.size() == 1 && part[0] == n);
        CHECK(has_singleton);
    }
    CHECK_THROWS_AS(multiperfect_3layered(Natural(121)), DomainError);  // not 3-perfect
}

TEST_CASE("multiperfect four- and five-part constructions") {
    const PartitionCertificate c4 = multiperfect_4layered(Natural(30240));
    CHECK(c4.k == 4);
    CHECK(verify_certificate(c4).valid);

    const PartitionCertificate c4b = multiperfect_4layered(Natural(32760));
    CHECK(verify_certificate(c4b).valid);

    const PartitionCertificate c5 = multiperfect_5layered(Natural("518666803200"));
    CHECK(c5.k == 5);
    CHECK(verify_certificate(c5).valid);

    CHECK_THROWS_AS(multiperfect_4layered(Natural(120)), DomainError);   // 3-perfect, not 4
    CHECK_THROWS_AS(multiperfect_5layered(Natural(30240)), DomainError); // 4-perfect, not 5
}

TEST_CASE("multiperfect lift along the divisibility chain") {
    // 6 | 120 | 30240 | 518666803200, each sigma(t) = (i+1) t.
    const Decision d6 = decide_k_layered(Natural(6), 2);
    REQUIRE(d6.outcome == Outcome::kProven);
    const PartitionCertificate l3 = lift_multiperfect(*d6.certificate, Natural(120));
    CHECK(l3.k == 3);
    CHECK(verify_certificate(l3).valid);
    const PartitionCertificate l4 = lift_multiperfect(l3, Natural(30240));
    CHECK(l4.k == 4);
    CHECK(verify_certificate(l4).valid);
    const PartitionCertificate l5 = lift_multiperfect(l4, Natural("518666803200"));
    CHECK(l5.k == 5);
    CHECK(verify_certificate(l5).valid);
    const PartitionCertificate l6 =
        lift_multiperfect(l5, Natural("36669339708545656151565926400"));
    CHECK(l6.k == 6);
    CHECK(verify_certificate(l6).valid);

    // 672 = 2^5 * 3 * 7 is also 3-perfect and divisible by 6; the lift does
    // not care which chain the target sits on.
    const PartitionCertificate l3b = lift_multiperfect(*d6.certificate, Natural(672));
    CHECK(l3b.n == 672);
    CHECK(l3b.k == 3);
    CHECK(verify_certificate(l3b).valid);

    // Refusals: target with the wrong perfection order, a multiple that is
    // not multiperfect at all, and a divisor cap that is too tight.
    CHECK_THROWS_AS(lift_multiperfect(l3, Natural("518666803200")), DomainError);
    CHECK_THROWS_AS(lift_multiperfect(*d6.certificate, Natural(60)), DomainError);
    CHECK_THROWS_AS(lift_multiperfect(l4, Natural("518666803200"), /*divisor_cap=*/100),
                    ResourceError);
}

TEST_CASE("three-layer doubling from an odd almost practical number") {
    const ThreeLayerDoubling t = three_layer_from_odd_almost_practical(Natural(945));
    CHECK(t.cert.n == 1890);
    CHECK(t.cert.k == 3);
    CHECK(verify_certificate(t.cert).valid);

    // The witness enables the 2n -> 4n -> 8n ladder.
    PartitionCertificate cur = t.cert;
    for (int i = 0; i < 3; ++i) {
        cur = double_certificate_3(cur, t.witness);
        CHECK(verify_certificate(cur).valid);
    }
    CHECK(cur.n == 15120);

    CHECK_THROWS_AS(three_layer_from_odd_almost_practical(Natural(9)), DomainError);
    CHECK_THROWS_AS(three_layer_from_odd_almost_practical(Natural(3)), DomainError);
    CHECK_THROWS_AS(three_layer_from_odd_almost_practical(Natural(10)), DomainError);
}

TEST_CASE("doubling a 3-partition with the published witness for 120") {
    const PartitionCertificate c120 = load_certificate(fixture("cert_120_k3.json"));
    REQUIRE(verify_certificate(c120).valid);
    // Witness {1, 15} sums to 2 sigma(15)/3 = 16; images {8, 120} sit in
    // parts 2 and 3 as printed, so parts are reordered by the planner path.
    const auto plan = plan_good_doubling(c120);
    REQUIRE(plan.has_value());
    REQUIRE(plan->witnesses.size() == 1);
    PartitionCertificate cur = plan->cert;
    for (int i = 0; i < 2; ++i) {
        cur = double_certificate_general(cur, plan->witnesses);
        CHECK(verify_certificate(cur).valid);
    }
    CHECK(cur.n == 480);
}

TEST_CASE("doubling the published 27720 4-partition with the published 3465 split") {
    const PartitionCertificate c = load_certificate(fixture("cert_27720_k4.json"));
    REQUIRE(verify_certificate(c).valid);

    const std::vector<Natural> w1{Natural(3), Natural(45), Natural(231), Natural(3465)};
    const DivisorSet odd = divisors(factorize(Natural(3465)));
    const std::vector<Natural> w2 = complement_in(odd, w1);
    REQUIRE(part_sum(w1) == 3744);  // sigma(3465)/2
    REQUIRE(part_sum(w2) == 3744);

    PartitionCertificate cur = c;
    for (int i = 0; i < 2; ++i) {
        cur = double_certificate_general(cur, {w1, w2});
        CHECK(verify_certificate(cur).valid);
        CHECK(cur.k == 4);
    }
    CHECK(cur.n == 110880);
}

TEST_CASE("doubling the published 30240 4-partition with the published 945 split") {
    const PartitionCertificate c = load_certificate(fixture("cert_30240_k4.json"));
    REQUIRE(verify_certificate(c).valid);

    const std::vector<Natural> w1{Natural(15), Natural(945)};
    const DivisorSet odd = divisors(factorize(Natural(945)));
    const std::vector<Natural> w2 = complement_in(odd, w1);
    REQUIRE(part_sum(w1) == 960);  // sigma(945)/2

    PartitionCertificate cur = c;
    for (int i = 0; i < 3; ++i) {
        cur = double_certificate_general(cur, {w1, w2});
        CHECK(verify_certificate(cur).valid);
    }
    CHECK(cur.n == 241920);
}

TEST_CASE("doubling the published 147026880 5-partition") {
    const PartitionCertificate c = load_certificate(fixture("cert_147026880_k5.json"));
    REQUIRE(verify_certificate(c).valid);

    // First witness as published (reading its last element as the odd part
    // itself); the second is derived by subset sum over the divisors whose
    // images sit in parts 3 and 4.
    const Natural m = Natural(147026880) >> 6;  // 2297295 = 3^3*5*7*11*13*17
    const std::vector<Natural> w1{Natural(1),     Natural(3),     Natural(143),
                                  Natural(1785),  Natural(23205), m};
    const Natural target = 2 * sigma(factorize(m)) / 5;
    REQUIRE(part_sum(w1) == target);

    std::vector<std::uint64_t> pool;
    {
        const DivisorSet odd = divisors(factorize(m));
        std::set<Natural> pair34;
        for (int pi : {2, 3})
            for (const auto& v : c.parts[pi]) pair34.insert(v);
        for (const auto& d : odd.divisors)
            if (pair34.count(d << 6)) pool.push_back(d.convert_to<std::uint64_t>());
    }
    Budget budget;
    const auto pick = subset_sum(pool, target.convert_to<std::uint64_t>(), budget);
    REQUIRE(pick.status == SearchStatus::kFound);
    std::vector<Natural> w2(pick.chosen.begin(), pick.chosen.end());

    PartitionCertificate cur = c;
    for (int i = 0; i < 2; ++i) {
        cur = double_certificate_general(cur, {w1, w2});
        CHECK(verify_certificate(cur).valid);
        CHECK(cur.k == 5);
    }
    CHECK(cur.n == Natural(147026880) * 4);
}

TEST_CASE("doubling rejects bad witnesses") {
    const PartitionCertificate c = load_certificate(fixture("cert_30240_k4.json"));
    const DivisorSet odd = divisors(factorize(Natural(945)));

    // Wrong sum.
    CHECK_THROWS_AS(
        double_certificate_general(c, {{Natural(945)}, complement_in(odd, {Natural(945)})}),
        DomainError);
    // Not a divisor of the odd part.
    std::vector<Natural> alien{Natural(2), Natural(958)};
    CHECK_THROWS_AS(double_certificate_general(c, {alien, complement_in(odd, alien)}),
                    DomainError);
    // Odd n cannot be doubled by this route at all.
    const Decision odd_cert = decide_k_layered(Natural(945), 2);
    REQUIRE(odd_cert.outcome == Outcome::kProven);
    CHECK_THROWS_AS(plan_good_doubling(*odd_cert.certificate), DomainError);
}

TEST_CASE("exponent_lift arithmetic") {
    CHECK(exponent_lift(factorize(Natural(6)), {1, 1}) == 216);  // 2^3 * 3^3
    CHECK(exponent_lift(factorize(Natural(120)), {1, 1, 1}) ==
          pow_natural(2, 7) * pow_natural(3, 3) * pow_natural(5, 3));
    CHECK(decide_k_layered(Natural(216), 2).outcome == Outcome::kProven);
    CHECK_THROWS_AS(exponent_lift(factorize(Natural(120)), {1, 0, 1}), DomainError);
    CHECK_THROWS_AS(exponent_lift(factorize(Natural(120)), {1, 1}), DomainError);  // arity
}

TEST_CASE("randomized transformer applications always verify") {
    std::mt19937_64 rng(424242);
    const std::uint64_t coprimes[] = {7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 49, 53};

    // Base certificates to transform; 945 and 572 keep the product branch
    // reachable (every other pair shares a factor).
    std::vector<PartitionCertificate> bases;
    for (std::uint64_t n : {6, 12, 20, 24, 28, 30, 40, 56, 120, 572, 945}) {
        const Decision d = decide_k_layered(Natural(n), 2);
        REQUIRE(d.outcome == Outcome::kProven);
        bases.push_back(*d.certificate);
    }

    int applications = 0;
    for (int round = 0; round < 60; ++round) {
        PartitionCertificate cur = bases[rng() % bases.size()];
        // scale by a random coprime w
        Natural w = 1;
        for (int i = 0; i < 2; ++i) {
            const Natural c = coprimes[rng() % std::size(coprimes)];
            if (gcd(cur.n * w, c) == 1) w *= c;
        }
        if (w != 1) {
            cur = scale_coprime(cur, w);
            ++applications;
            CHECK(verify_certificate(cur).valid);
        }
        // multiply with a second certificate whenever the draw is coprime
        const PartitionCertificate& other = bases[rng() % bases.size()];
        if (gcd(cur.n, other.n) == 1) {
            cur = product_certificate(cur, other);
            ++applications;
            CHECK(verify_certificate(cur).valid);
        }
    }
    CHECK(applications >= 40);
}

TEST_CASE("iterated doubling keeps certificates valid for ten rounds") {
    const ThreeLayerDoubling t = three_layer_from_odd_almost_practical(Natural(2835));
    PartitionCertificate cur = t.cert;
    for (int i = 0; i < 10; ++i) {
        cur = double_certificate_3(cur, t.witness);
        REQUIRE(verify_certificate(cur).valid);
    }
    CHECK(cur.n == Natural(2835) * 2 * 1024);
}
