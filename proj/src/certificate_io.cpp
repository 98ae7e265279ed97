#include "layered/certificate_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "layered/errors.hpp"
#include "layered/version.hpp"

namespace layered {
namespace {

using nlohmann::json;

bool decimal_form(const std::string& s) {
    if (s.empty() || (s.size() > 1 && s[0] == '0')) {
        return false;
    }
    for (char c : s) {
        if (c < '0' || c > '9') {
            return false;
        }
    }
    return true;
}

Natural parse_natural(const json& j, const char* where) {
    if (!j.is_string() || !decimal_form(j.get<std::string>())) {
        throw ParseError(std::string("parse_certificate: ") + where +
                         " must be a decimal string");
    }
    return Natural(j.get<std::string>());
}

}  // namespace

std::string serialize_certificate(const PartitionCertificate& cert) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = cert.n.str();
    j["k"] = cert.k;
    json parts = json::array();
    for (const auto& part : cert.parts) {
        json jp = json::array();
        for (const Natural& d : part) {
            jp.push_back(d.str());
        }
        parts.push_back(std::move(jp));
    }
    j["parts"] = std::move(parts);
    return j.dump(2) + "\n";
}

PartitionCertificate parse_certificate(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("parse_certificate: ") + e.what());
    }
    if (!j.is_object()) {
        throw ParseError("parse_certificate: top level must be an object");
    }
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
        j["schema_version"].get<int>() != kSchemaVersion) {
        throw ParseError("parse_certificate: unsupported schema_version");
    }
    if (!j.contains("n") || !j.contains("k") || !j.contains("parts")) {
        throw ParseError("parse_certificate: required fields: n, k, parts");
    }
    PartitionCertificate cert;
    cert.n = parse_natural(j["n"], "n");
    if (!j["k"].is_number_unsigned() || j["k"].get<std::uint64_t>() < 1 ||
        j["k"].get<std::uint64_t>() > 1'000'000) {
        throw ParseError("parse_certificate: k must be a positive integer");
    }
    cert.k = j["k"].get<unsigned>();
    if (!j["parts"].is_array()) {
        throw ParseError("parse_certificate: parts must be an array");
    }
    for (const json& jp : j["parts"]) {
        if (!jp.is_array()) {
            throw ParseError("parse_certificate: each part must be an array");
        }
        std::vector<Natural> part;
        part.reserve(jp.size());
        for (const json& jv : jp) {
            part.push_back(parse_natural(jv, "part value"));
        }
        cert.parts.push_back(std::move(part));
    }
    return cert;
}

PartitionCertificate load_certificate(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("load_certificate: cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_certificate(buf.str());
}

void store_certificate(const PartitionCertificate& cert, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("store_certificate: cannot open " + path + " for writing");
    }
    out << serialize_certificate(cert);
    if (!out) {
        throw ParseError("store_certificate: write to " + path + " failed");
    }
}

}  // namespace layered
