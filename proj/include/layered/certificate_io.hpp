#pragma once

#include <string>

#include "layered/partition.hpp"

namespace layered {

// JSON layout (schema_version 1):
//   {"schema_version": 1, "n": "<decimal>", "k": <int>, "parts": [["<decimal>", ...], ...]}
// Integers travel as decimal strings so arbitrary precision survives the
// trip; a leading zero or any non-digit is a ParseError. Parsing checks
// structure only — run verify_certificate for the mathematics.

std::string serialize_certificate(const PartitionCertificate& cert);
PartitionCertificate parse_certificate(const std::string& text);

PartitionCertificate load_certificate(const std::string& path);
void store_certificate(const PartitionCertificate& cert, const std::string& path);

}  // namespace layered
