#ifndef DRSYS_ERRORS_HPP
#define DRSYS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace drsys {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input file (graph, transducer, function, point literal).
struct ParseError : Error {
    ParseError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_number(line) {}
    int line_number;
};

// A point was fed to a shift iterate outside its domain.
struct DomainError : Error {
    using Error::Error;
};

// A function's support sticks out of dom(sigma) where it must not.
struct SupportError : Error {
    using Error::Error;
};

// Witness exponents do not satisfy sigma^m(x) = sigma^n(y).
struct WitnessError : Error {
    using Error::Error;
};

struct NotComposable : Error {
    using Error::Error;
};

struct NotAcyclic : Error {
    using Error::Error;
};

struct NotConjugacy : Error {
    using Error::Error;
};

struct UnverifiedMapError : Error {
    using Error::Error;
};

// Structural defect in a transducer (missing transition, bad composition,
// inconsistent emission lag, missing sink table entry).
struct ValidityError : Error {
    using Error::Error;
};

struct NotEventuallyConjugate : Error {
    NotEventuallyConjugate(const std::string& point, long bound)
        : Error("no eventual-conjugacy defect k <= " + std::to_string(bound) +
                " at point " + point),
          search_bound(bound) {}
    long search_bound;
};

}  // namespace drsys

#endif
