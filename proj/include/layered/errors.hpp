#pragma once

#include <stdexcept>
#include <string>

namespace layered {

// Invalid input: a precondition on values (not on resources) was violated.
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// The request is well-formed but exceeds a configured resource cap
// (divisor count, reachability-table size, enumeration bound, ...).
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed serialized input (certificate JSON, b-file, ...).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace layered
