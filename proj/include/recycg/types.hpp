/// @file types.hpp
/// @brief Shared scalar/index aliases and error types for the recycg library.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace recycg {

/// Column/row index type. 32-bit keeps CSR index traffic at 4 bytes per entry.
using index_t = std::int32_t;

/// Dense vector of doubles.
using Vector = std::vector<double>;

/// Malformed input data: matrix files, run configuration, size mismatches
/// detected while loading. Mapped to exit code 2 by the CLI.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical breakdown: non-SPD operator, factorization pivot failure,
/// singular projected system. Mapped to exit code 3 by the CLI.
class BreakdownError : public std::runtime_error {
public:
    explicit BreakdownError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace recycg
