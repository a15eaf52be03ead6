#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rsym {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class UnboundSymbolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class InconsistentBindingError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NonPolynomialError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SingularMetricError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// On-shell substitution met a time derivative no rule covers.
class RuleSetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rsym
