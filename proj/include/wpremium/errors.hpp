#pragma once

#include <stdexcept>
#include <string>

namespace wpremium {

// Base class for all library errors so callers can catch everything from this
// library with one handler while still distinguishing the cases below.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// The truncated integral kept growing under domain extension: the expectation
// is classified as divergent (infinite or non-existent).
struct DivergentExpectation : Error {
    explicit DivergentExpectation(const std::string& what) : Error(what) {}
};

// The adaptive integrator could not reach the requested accuracy within its
// subdivision budget.
struct QuadratureFailure : Error {
    explicit QuadratureFailure(const std::string& what) : Error(what) {}
};

// E[w(lambda, X)] is zero, so the weighted premium ratio is undefined.
struct ZeroNormalizer : Error {
    explicit ZeroNormalizer(const std::string& what) : Error(what) {}
};

// E[X w(lambda, X)] diverges (lambda lies outside the premium's domain).
struct DivergentPremium : Error {
    explicit DivergentPremium(const std::string& what) : Error(what) {}
};

// A finite-difference step would not fit inside the requested grid spacing.
struct GridDegenerate : Error {
    explicit GridDegenerate(const std::string& what) : Error(what) {}
};

// The reference weight slice w(theta, .) vanishes on the whole grid, so the
// likelihood ratio h(x) = w(lambda, x)/w(theta, x) is identically degenerate.
struct AllZeroWeights : Error {
    explicit AllZeroWeights(const std::string& what) : Error(what) {}
};

// No lambda with a finite premium was found when probing the domain.
struct DomainEmpty : Error {
    explicit DomainEmpty(const std::string& what) : Error(what) {}
};

// Root finding exhausted its iteration budget.
struct MaxIterExceeded : Error {
    explicit MaxIterExceeded(const std::string& what) : Error(what) {}
};

// Invalid parameter values (nonpositive rate, empty sample set, ...).
struct ValidationError : Error {
    explicit ValidationError(const std::string& what) : Error(what) {}
};

// A spec string ("exp:1.0", "esscher", ...) could not be parsed.  `position`
// is the byte offset of the offending token within the input.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t position)
        : Error(what), position(position) {}
    std::size_t position = 0;
};

// An input file could not be read or contains a bad record.  `line` is
// 1-based; 0 means the file itself could not be opened.
struct FileError : Error {
    FileError(const std::string& what, std::size_t line = 0) : Error(what), line(line) {}
    std::size_t line = 0;
};

}  // namespace wpremium
