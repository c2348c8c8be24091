#pragma once

#include <stdexcept>
#include <string>

namespace katofan {

/// Domain-level failure (bad monoid, invalid gluing, indeterminate order...).
/// The CLI maps these to exit code 1 with a machine-readable report; schema
/// problems use std::invalid_argument and exit code 2.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

}  // namespace katofan
