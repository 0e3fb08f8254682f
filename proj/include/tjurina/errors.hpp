#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tjurina {

// Input text could not be parsed. `position` is a 0-based byte offset into the
// offending string. CLI exit code 1.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// The germ is not an isolated singularity (quotient dimension never
// stabilized below the degree cap), or is not singular at the origin at all.
// CLI exit code 2.
class NonIsolatedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two independent routes to the same quantity disagreed, or a structural
// invariant of a computed object failed. Always a bug, never a property of
// the input. CLI exit code 3.
class InternalCheckError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A verified identity failed on a concrete instance. CLI exit code 4.
class CheckFailedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configured size/degree guard refused the computation. CLI exit code 5.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A chosen prime divides some denominator in the matrix being reduced.
class BadPrimeError : public std::runtime_error {
public:
    explicit BadPrimeError(unsigned long long prime)
        : std::runtime_error("prime " + std::to_string(prime) +
                             " divides a denominator; pick another"),
          prime_(prime) {}
    unsigned long long prime() const noexcept { return prime_; }

private:
    unsigned long long prime_;
};

} // namespace tjurina
