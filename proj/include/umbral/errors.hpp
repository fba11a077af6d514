#ifndef UMBRAL_ERRORS_HPP
#define UMBRAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace umbral {

// Invalid arguments: empty inputs, zero orders, k > i, missing symbols.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Division by the zero coefficient.
class ArithmeticError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A coefficient denominator vanishes at the requested sample size.
class PoleError : public std::runtime_error {
public:
    PoleError(const std::string& what, long minimum_n)
        : std::runtime_error(what), minimum_n_(minimum_n) {}

    // Smallest sample size at which no denominator vanishes (0 if unknown).
    long minimum_n() const noexcept { return minimum_n_; }

private:
    long minimum_n_;
};

// Variable-count or column-count mismatch.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A size cap was exceeded (partition ground set, oracle expansion, generator order).
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unreadable or malformed input file.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace umbral

#endif
