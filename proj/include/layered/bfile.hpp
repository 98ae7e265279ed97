#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "layered/arith.hpp"

namespace layered {

struct BfileEntry {
    long long index;
    Natural value;
};

// OEIS b-file: "index value" per line, '#' comments and blank lines skipped.
// Malformed lines throw ParseError with the line number.
std::vector<BfileEntry> read_bfile(const std::string& path);

struct PrefixComparison {
    bool match = true;
    std::size_t checked = 0;          // entries compared
    std::string divergence;           // empty when match; else a description
};

// Compares computed terms against a b-file prefix (by position, starting at
// the b-file's first entry). Reports the first divergence.
PrefixComparison compare_prefix(const std::vector<Natural>& computed,
                                const std::vector<BfileEntry>& reference);

}  // namespace layered
