#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ranksiege {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad arguments: out-of-range candidates, self-pairs, malformed configs.
class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

// Malformed input files; carries a 1-based line number when known.
class DataError : public Error {
public:
    explicit DataError(const std::string& what, long line = 0)
        : Error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
    long line() const { return line_; }

private:
    long line_ = 0;
};

// Solver failures: non-convergence, non-finite gradients.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what, double residual = 0.0)
        : Error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_ = 0.0;
};

// Aggregation on unusable graphs (disconnected, reducible chain).
// `components` lists one representative candidate set per component when known.
class AggregationError : public Error {
public:
    explicit AggregationError(const std::string& what,
                              std::vector<std::vector<int>> components = {})
        : Error(what), components_(std::move(components)) {}
    const std::vector<std::vector<int>>& components() const { return components_; }

private:
    std::vector<std::vector<int>> components_;
};

}  // namespace ranksiege
