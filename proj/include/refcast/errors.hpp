#pragma once

#include <stdexcept>
#include <string>

namespace refcast {

// Precondition or invariant violation on otherwise well-formed input
// (non-positive estimate, empty sample, unknown group, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Fatal problem with an input file as a whole: bad header, duplicate id.
// Row-level problems are collected in the reject log instead.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace refcast
