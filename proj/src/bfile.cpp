#include "layered/bfile.hpp"

#include <fstream>
#include <sstream>

#include "layered/errors.hpp"

namespace layered {

std::vector<BfileEntry> read_bfile(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("read_bfile: cannot open " + path);
    }
    std::vector<BfileEntry> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream fields(line);
        long long index;
        std::string value;
        if (!(fields >> index >> value)) {
            throw ParseError("read_bfile: " + path + ":" + std::to_string(lineno) +
                             ": expected \"index value\"");
        }
        std::string trailing;
        if (fields >> trailing) {
            throw ParseError("read_bfile: " + path + ":" + std::to_string(lineno) +
                             ": trailing fields");
        }
        try {
            entries.push_back({index, Natural(value)});
        } catch (const std::exception&) {
            throw ParseError("read_bfile: " + path + ":" + std::to_string(lineno) +
                             ": bad integer \"" + value + "\"");
        }
    }
    return entries;
}

PrefixComparison compare_prefix(const std::vector<Natural>& computed,
                                const std::vector<BfileEntry>& reference) {
    PrefixComparison cmp;
    cmp.checked = std::min(computed.size(), reference.size());
    for (std::size_t i = 0; i < cmp.checked; ++i) {
        if (computed[i] != reference[i].value) {
            cmp.match = false;
            cmp.divergence = "position " + std::to_string(i) + " (reference index " +
                             std::to_string(reference[i].index) + "): computed " +
                             computed[i].str() + ", reference " + reference[i].value.str();
            return cmp;
        }
    }
    return cmp;
}

}  // namespace layered
