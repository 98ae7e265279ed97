#include "layered/classify.hpp"

#include <string>

#include "layered/budget.hpp"
#include "layered/errors.hpp"
#include "layered/predicates.hpp"

namespace layered {
namespace {

using nlohmann::json;

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::kProven:
            return "proven";
        case Outcome::kRefuted:
            return "refuted";
        default:
            return "unknown";
    }
}

}  // namespace

json classification_report(const Natural& n, const SolverConfig& config) {
    if (n < 1) {
        throw DomainError("classification_report: n must be positive");
    }
    Factorization f = factorize(n);
    Natural sig = sigma(f);

    json j;
    j["n"] = n.str();
    json fac = json::array();
    for (const PrimePower& pp : f.factors) {
        fac.push_back({{"prime", pp.prime.str()}, {"exponent", pp.exponent}});
    }
    j["factorization"] = std::move(fac);
    j["sigma"] = sig.str();
    j["abundancy"] = abundancy(f).str();

    json flags;
    flags["practical"] = is_practical(f);
    try {
        flags["almost_practical"] = is_almost_practical(f, config.table_bit_budget,
                                                        config.divisor_cap);
    } catch (const ResourceError&) {
        flags["almost_practical"] = "unknown";
    }
    switch (classify_deficiency(f)) {
        case DeficiencyClass::kDeficient:
            flags["deficiency"] = "deficient";
            break;
        case DeficiencyClass::kPerfect:
            flags["deficiency"] = "perfect";
            break;
        default:
            flags["deficiency"] = "abundant";
            break;
    }
    if (auto np = is_near_perfect(f)) {
        flags["near_perfect"] = {{"d", np->d.str()}};
    } else {
        flags["near_perfect"] = nullptr;
    }
    if (auto mp = is_k_multiperfect(f)) {
        flags["multiperfect"] = {{"k", mp->k}};
    } else {
        flags["multiperfect"] = nullptr;
    }
    try {
        Budget budget(config.node_budget);
        flags["semiperfect"] = is_semiperfect(f, budget, config.table_bit_budget,
                                              config.divisor_cap);
    } catch (const ResourceError&) {
        flags["semiperfect"] = "unknown";
    }
    try {
        Budget budget(config.node_budget);
        flags["weird"] = is_weird(f, budget, config.table_bit_budget, config.divisor_cap);
    } catch (const ResourceError&) {
        flags["weird"] = "unknown";
    }
    j["flags"] = std::move(flags);

    json layered = json::object();
    unsigned k_top = (sig / n).convert_to<unsigned>();
    for (unsigned k = 1; k <= k_top; ++k) {
        json entry;
        try {
            Decision dec = decide_k_layered(n, k, config);
            entry["outcome"] = outcome_name(dec.outcome);
            entry["reason"] = dec.reason;
        } catch (const ResourceError& e) {
            entry["outcome"] = "unknown";
            entry["reason"] = e.what();
        }
        layered[std::to_string(k)] = std::move(entry);
    }
    j["layered"] = std::move(layered);
    return j;
}

}  // namespace layered
