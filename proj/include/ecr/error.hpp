#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ecr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or configuration value.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Claim-store integrity violation (unknown id, dangling negation target, ...).
class ClaimStoreError : public Error {
public:
    using Error::Error;
};

/// Malformed persisted data. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace ecr
