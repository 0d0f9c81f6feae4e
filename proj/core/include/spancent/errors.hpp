#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spancent {

/// Malformed or unusable input data (edge lists, caches, result files).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Edge-list syntax error; carries the 1-based line number.
class ParseError : public DataError {
public:
    ParseError(std::size_t line, const std::string& what)
        : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A numerical routine failed to reach its contract (e.g. eigensolver residual).
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace spancent
