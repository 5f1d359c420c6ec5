#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace varcap {

// Domain and validation errors. The CLI maps these to exit code 1;
// anything else escaping to main is an internal error (exit code 2).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input-parsing failure carrying the 1-based line number of the offending row.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

    explicit ParseError(const std::string& message) : Error(message), line_(0) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace varcap
