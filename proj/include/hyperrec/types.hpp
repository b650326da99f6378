// types.hpp - shared vocabulary types and error classes
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperrec {

using NodeId = std::uint32_t;
using Weight = std::uint64_t;
using Multiplicity = std::uint64_t;

/// Sorted, duplicate-free node list. Used both for hyperedges and clique
/// candidates; the canonical form is what makes them comparable as values.
using NodeSet = std::vector<NodeId>;

/// Pack an unordered pair into one key, smaller id in the high word.
inline std::uint64_t pair_key(NodeId u, NodeId v) noexcept {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

inline NodeId pair_first(std::uint64_t key) noexcept { return static_cast<NodeId>(key >> 32); }
inline NodeId pair_second(std::uint64_t key) noexcept { return static_cast<NodeId>(key & 0xffffffffu); }

inline std::uint64_t choose2(std::uint64_t n) noexcept { return n < 2 ? 0 : n * (n - 1) / 2; }

// Error hierarchy. The CLI maps ParseError/IoError to exit code 2 and the
// rest to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class ConfigError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ParseError : public IoError {
public:
    ParseError(const std::string& where, std::size_t line, const std::string& what)
        : IoError(where + ":" + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace hyperrec
