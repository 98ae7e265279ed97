#include <unistd.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "layered/arith.hpp"
#include "layered/bfile.hpp"
#include "layered/certificate_io.hpp"
#include "layered/chains.hpp"
#include "layered/classify.hpp"
#include "layered/construct.hpp"
#include "layered/errors.hpp"
#include "layered/partition.hpp"
#include "layered/search.hpp"
#include "layered/version.hpp"

namespace {

using layered::Natural;
using nlohmann::json;

constexpr int kExitProven = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 3;

Natural parse_natural_arg(const std::string& text) {
    if (text.empty() || (text.size() > 1 && text[0] == '0')) {
        throw layered::DomainError("expected a positive decimal integer, got \"" + text + "\"");
    }
    for (char c : text) {
        if (c < '0' || c > '9') {
            throw layered::DomainError("expected a positive decimal integer, got \"" + text +
                                       "\"");
        }
    }
    return Natural(text);
}

std::vector<Natural> parse_natural_list(const std::string& text) {
    std::vector<Natural> out;
    std::string item;
    std::istringstream stream(text);
    while (std::getline(stream, item, ',')) {
        out.push_back(parse_natural_arg(item));
    }
    if (out.empty()) {
        throw layered::DomainError("expected a comma-separated list of integers");
    }
    return out;
}

const char* outcome_name(layered::Outcome o) {
    switch (o) {
        case layered::Outcome::kProven:
            return "proven";
        case layered::Outcome::kRefuted:
            return "refuted";
        default:
            return "unknown";
    }
}

int outcome_exit(layered::Outcome o) {
    switch (o) {
        case layered::Outcome::kProven:
            return kExitProven;
        case layered::Outcome::kRefuted:
            return kExitRefuted;
        default:
            return kExitUnknown;
    }
}

// --- result cache (sequence commands) ---------------------------------

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

struct Cache {
    std::string dir;  // empty: disabled

    std::filesystem::path entry_path(const std::string& key) const {
        char name[32];
        std::snprintf(name, sizeof(name), "%016llx.txt",
                      static_cast<unsigned long long>(fnv1a(key)));
        return std::filesystem::path(dir) / name;
    }

    std::optional<std::string> lookup(const std::string& key) const {
        if (dir.empty()) {
            return std::nullopt;
        }
        std::ifstream in(entry_path(key));
        if (!in) {
            return std::nullopt;
        }
        std::string header;
        if (!std::getline(in, header) || header != "# " + key) {
            return std::nullopt;  // hash collision or foreign file
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }

    void store(const std::string& key, const std::string& payload) const {
        if (dir.empty()) {
            return;
        }
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) {
            return;  // cache is best-effort
        }
        std::filesystem::path final_path = entry_path(key);
        std::filesystem::path tmp =
            final_path.string() + ".tmp" + std::to_string(::getpid());
        {
            std::ofstream out(tmp);
            if (!out) {
                return;
            }
            out << "# " << key << "\n" << payload;
        }
        std::filesystem::rename(tmp, final_path, ec);
        if (ec) {
            std::filesystem::remove(tmp, ec);
        }
    }
};

// --- command payloads --------------------------------------------------

void print_parts(std::ostream& os, const layered::PartitionCertificate& cert) {
    for (std::size_t i = 0; i < cert.parts.size(); ++i) {
        Natural sum = 0;
        for (const Natural& d : cert.parts[i]) {
            sum += d;
        }
        os << "part " << (i + 1) << " (sum " << sum.str() << "):";
        for (const Natural& d : cert.parts[i]) {
            os << ' ' << d.str();
        }
        os << '\n';
    }
}

json decision_json(const Natural& n, unsigned k, const layered::Decision& dec,
                   bool include_parts) {
    json j;
    j["n"] = n.str();
    j["k"] = k;
    j["outcome"] = outcome_name(dec.outcome);
    j["reason"] = dec.reason;
    j["budget_spent"] = dec.budget_spent;
    if (include_parts && dec.certificate) {
        json parts = json::array();
        for (const auto& part : dec.certificate->parts) {
            json jp = json::array();
            for (const Natural& d : part) {
                jp.push_back(d.str());
            }
            parts.push_back(std::move(jp));
        }
        j["parts"] = std::move(parts);
    }
    return j;
}

int run_decide(const std::string& n_text, unsigned k, const layered::SolverConfig& config,
               bool as_json, bool show_parts, const std::string& cert_out) {
    Natural n = parse_natural_arg(n_text);
    layered::Decision dec = layered::decide_k_layered(n, k, config);
    if (!cert_out.empty() && dec.certificate) {
        layered::store_certificate(*dec.certificate, cert_out);
    }
    if (as_json) {
        std::cout << decision_json(n, k, dec, show_parts).dump(2) << '\n';
    } else {
        std::cout << outcome_name(dec.outcome) << ": " << n.str() << " with k = " << k;
        if (!dec.reason.empty()) {
            std::cout << " (" << dec.reason << ")";
        }
        std::cout << '\n';
        if (show_parts && dec.certificate) {
            print_parts(std::cout, *dec.certificate);
        }
    }
    return outcome_exit(dec.outcome);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact divisor-partition toolkit"};
    app.set_version_flag("--version", layered::kVersion);
    app.require_subcommand(1);

    layered::SolverConfig config;
    std::string cache_flag;
    app.add_option("--budget", config.node_budget, "search node budget");
    app.add_option("--table-bits", config.table_bit_budget, "max bits for sum tables");
    app.add_option("--divisor-cap", config.divisor_cap, "max divisors to enumerate");
    app.add_option("--cache", cache_flag, "cache directory (or set LAYERED_CACHE)");

    int code = kExitProven;

    // check / partition
    std::string arg_n;
    unsigned arg_k = 2;
    bool arg_json = false;
    std::string arg_cert_out;
    CLI::App* check = app.add_subcommand("check", "decide whether n is k-layered");
    check->add_option("n", arg_n, "the integer, in decimal")->required();
    check->add_option("-k,--k", arg_k, "number of parts")->required();
    check->add_flag("--json", arg_json, "machine-readable output");
    check->add_option("--cert-out", arg_cert_out, "write the certificate to this file");
    check->callback([&] { code = run_decide(arg_n, arg_k, config, arg_json, false, arg_cert_out); });

    CLI::App* partition = app.add_subcommand("partition", "print a k-layered partition of n");
    partition->add_option("n", arg_n, "the integer, in decimal")->required();
    partition->add_option("-k,--k", arg_k, "number of parts")->required();
    partition->add_flag("--json", arg_json, "machine-readable output");
    partition->add_option("--cert-out", arg_cert_out, "write the certificate to this file");
    partition->callback(
        [&] { code = run_decide(arg_n, arg_k, config, arg_json, true, arg_cert_out); });

    // verify
    std::string arg_path;
    bool arg_proper = false;
    CLI::App* verify = app.add_subcommand("verify", "check a stored certificate");
    verify->add_option("path", arg_path, "certificate file")->required();
    verify->add_flag("--proper", arg_proper, "certificate covers proper divisors only");
    verify->add_flag("--json", arg_json, "machine-readable output");
    verify->callback([&] {
        layered::PartitionCertificate cert = layered::load_certificate(arg_path);
        layered::VerifyResult res =
            layered::verify_certificate(cert, arg_proper, config.divisor_cap);
        if (arg_json) {
            json j;
            j["valid"] = res.valid;
            j["diagnostic"] = res.diagnostic;
            std::cout << j.dump(2) << '\n';
        } else if (res.valid) {
            std::cout << "valid\n";
        } else {
            std::cout << "invalid: " << res.diagnostic << '\n';
        }
        code = res.valid ? kExitProven : kExitRefuted;
    });

    // classify
    CLI::App* classify = app.add_subcommand("classify", "full divisor-structure report");
    classify->add_option("n", arg_n, "the integer, in decimal")->required();
    classify->callback([&] {
        std::cout << layered::classification_report(parse_natural_arg(arg_n), config).dump(2)
                  << '\n';
    });

    // search
    CLI::App* search = app.add_subcommand("search", "record searches");
    search->require_subcommand(1);
    unsigned s_k = 2;
    std::size_t s_count = 10;
    unsigned s_alpha = 9;
    unsigned s_beta = 3;
    std::uint64_t s_prime_bound = 30;
    std::string s_bound = "1000000";

    CLI::App* s_sl = search->add_subcommand("smallest-layered", "smallest k-layered integer");
    s_sl->add_option("-k,--k", s_k)->required();
    s_sl->callback([&] {
        layered::SmallestLayered r = layered::smallest_k_layered(s_k, config);
        std::cout << r.n.str() << '\n';
    });

    CLI::App* s_sa = search->add_subcommand("smallest-abundant", "smallest n with sigma >= k*n");
    s_sa->add_option("-k,--k", s_k)->required();
    s_sa->callback([&] { std::cout << layered::smallest_k_abundant(s_k).str() << '\n'; });

    CLI::App* s_sg =
        search->add_subcommand("smallest-good-abundant", "... with k | sigma(n) as well");
    s_sg->add_option("-k,--k", s_k)->required();
    s_sg->callback([&] { std::cout << layered::smallest_good_k_abundant(s_k).str() << '\n'; });

    CLI::App* s_sup = search->add_subcommand("superabundant", "abundancy record list");
    s_sup->add_option("--count", s_count)->required();
    s_sup->callback([&] {
        auto list = layered::superabundant_list(s_count);
        for (std::size_t i = 0; i < list.size(); ++i) {
            std::cout << (i + 1) << ' ' << list[i].n.str() << '\n';
        }
    });

    CLI::App* s_rec = search->add_subcommand("record", "all three records for one k");
    s_rec->add_option("-k,--k", s_k)->required();
    s_rec->callback([&] {
        layered::SearchRecord r = layered::search_record(s_k, config);
        std::cout << "smallest " << s_k << "-abundant: " << r.smallest_abundant.str() << " ["
                  << r.abundant_provenance << "]\n";
        std::cout << "smallest good " << s_k << "-abundant: " << r.smallest_good_abundant.str()
                  << " [" << r.good_provenance << "]\n";
        std::cout << "smallest " << s_k << "-layered: " << r.smallest_layered.str() << " ["
                  << r.layered_provenance << "]\n";
    });

    CLI::App* s_np = search->add_subcommand("near-perfect", "parametric near-perfect families");
    s_np->add_option("--alpha-max", s_alpha);
    s_np->add_option("--bound", s_bound);
    s_np->callback([&] {
        auto entries = layered::near_perfect_families(s_alpha, parse_natural_arg(s_bound));
        for (const auto& e : entries) {
            std::cout << e.n.str() << " d=" << e.d.str() << " zumkeller="
                      << (e.zumkeller ? "yes" : "no") << " family=" << e.family << '\n';
        }
    });

    CLI::App* s_pqr = search->add_subcommand("pqr", "4-layered scan over 2^a 3^b p q");
    s_pqr->add_option("--alpha-max", s_alpha);
    s_pqr->add_option("--beta-max", s_beta);
    s_pqr->add_option("--prime-bound", s_prime_bound);
    s_pqr->callback([&] {
        auto records = layered::pqr_scan(s_alpha, s_beta, s_prime_bound, config);
        for (const auto& r : records) {
            std::cout << r.n.str() << " alpha=" << r.alpha << " beta=" << r.beta
                      << " p=" << r.p << " q=" << r.q << ' ' << outcome_name(r.outcome) << '\n';
        }
    });

    // sequence
    CLI::App* sequence = app.add_subcommand("sequence", "term listings with optional reference");
    sequence->require_subcommand(1);
    std::uint64_t q_max = 1000;
    std::string q_oeis;

    CLI::App* q_lay = sequence->add_subcommand("layered", "k-layered integers up to a bound");
    q_lay->add_option("-k,--k", s_k)->required();
    q_lay->add_option("--max", q_max)->required();
    q_lay->add_option("--oeis", q_oeis, "b-file to compare against");

    CLI::App* q_sup = sequence->add_subcommand("superabundant", "abundancy records");
    q_sup->add_option("--count", s_count)->required();
    q_sup->add_option("--oeis", q_oeis, "b-file to compare against");

    auto run_sequence = [&](const std::string& key,
                            const std::function<std::vector<Natural>()>& compute) {
        Cache cache;
        if (const char* env = std::getenv("LAYERED_CACHE"); env && *env) {
            cache.dir = env;
        }
        if (!cache_flag.empty()) {
            cache.dir = cache_flag;
        }
        std::string payload;
        std::vector<Natural> terms;
        if (auto hit = cache.lookup(key)) {
            payload = *hit;
            // reparse for the optional reference comparison
            std::istringstream in(payload);
            long long idx;
            std::string value;
            while (in >> idx >> value) {
                terms.emplace_back(value);
            }
        } else {
            terms = compute();
            std::ostringstream out;
            for (std::size_t i = 0; i < terms.size(); ++i) {
                out << (i + 1) << ' ' << terms[i].str() << '\n';
            }
            payload = out.str();
            cache.store(key, payload);
        }
        std::cout << payload;
        if (!q_oeis.empty()) {
            auto reference = layered::read_bfile(q_oeis);
            layered::PrefixComparison cmp = layered::compare_prefix(terms, reference);
            if (!cmp.match) {
                std::cout << "reference mismatch: " << cmp.divergence << '\n';
                code = kExitRefuted;
            } else {
                std::cout << "reference match (" << cmp.checked << " terms)\n";
            }
        }
    };

    q_lay->callback([&] {
        std::string key = "sequence layered v" + std::string(layered::kVersion) +
                          " k=" + std::to_string(s_k) + " max=" + std::to_string(q_max) +
                          " budget=" + std::to_string(config.node_budget);
        run_sequence(key, [&] { return layered::layered_sequence(s_k, q_max, config); });
    });
    q_sup->callback([&] {
        std::string key = "sequence superabundant v" + std::string(layered::kVersion) +
                          " count=" + std::to_string(s_count);
        run_sequence(key, [&] {
            std::vector<Natural> terms;
            for (const auto& e : layered::superabundant_list(s_count)) {
                terms.push_back(e.n);
            }
            return terms;
        });
    });

    // chains
    CLI::App* chains = app.add_subcommand("chains", "gcd covering runs and gap bounds");
    chains->require_subcommand(1);
    std::string c_primes;
    std::uint64_t c_modulus_budget = 1'000'000'000;
    bool c_good = false;
    std::uint64_t c_max = 100000;

    CLI::App* c_lmax = chains->add_subcommand("lmax", "longest covered run for a prime tuple");
    c_lmax->add_option("primes", c_primes, "comma-separated primes")->required();
    c_lmax->add_option("--modulus-budget", c_modulus_budget);
    c_lmax->callback([&] {
        layered::PrimeTuple tuple = layered::make_prime_tuple(parse_natural_list(c_primes));
        layered::LmaxResult r = layered::lmax(tuple, c_modulus_budget);
        std::cout << r.value << " starting at " << r.witness.start.str() << '\n';
    });

    CLI::App* c_start = chains->add_subcommand("chain-start", "run start hit by the primes in order");
    c_start->add_option("primes", c_primes, "comma-separated primes")->required();
    c_start->callback([&] {
        layered::PrimeTuple tuple = layered::make_prime_tuple(parse_natural_list(c_primes));
        layered::GcdChainWitness w = layered::crt_chain_start(tuple);
        std::cout << w.start.str() << " covers a run of length " << w.length << '\n';
    });

    CLI::App* c_bound = chains->add_subcommand("gap-bound", "(L+1)*n gap bound from n's primes");
    c_bound->add_option("n", arg_n, "the integer, in decimal")->required();
    c_bound->add_flag("--good", c_good, "drop the prime 2 from the tuple");
    c_bound->add_option("--modulus-budget", c_modulus_budget);
    c_bound->callback([&] {
        layered::Factorization f = layered::factorize(parse_natural_arg(arg_n));
        std::cout << layered::gap_bound(f, c_good, c_modulus_budget).str() << '\n';
    });

    CLI::App* c_scan = chains->add_subcommand("gap-scan", "largest observed gap up to a bound");
    c_scan->add_option("-k,--k", s_k)->required();
    c_scan->add_option("--max", c_max)->required();
    c_scan->callback([&] {
        layered::GapScan scan = layered::verify_gap_empirically(s_k, c_max, config);
        std::cout << scan.max_gap.str() << " between " << scan.lower.str() << " and "
                  << scan.upper.str() << '\n';
    });

    // factorial
    CLI::App* factorial = app.add_subcommand("factorial", "decide k-layered-ness of 1!..n!");
    factorial->add_option("-k,--k", s_k)->required();
    factorial->add_option("--max", q_max, "largest factorial argument")->required();
    factorial->callback([&] {
        auto rows = layered::factorial_layered_scan(s_k, static_cast<unsigned>(q_max), config);
        for (const auto& [n, dec] : rows) {
            std::cout << n << "! " << outcome_name(dec.outcome);
            if (!dec.reason.empty()) {
                std::cout << " (" << dec.reason << ")";
            }
            std::cout << '\n';
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int cli_code = app.exit(e);
        return cli_code == 0 ? 0 : kExitUsage;
    } catch (const layered::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const layered::ResourceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUnknown;
    } catch (const layered::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return code;
}
