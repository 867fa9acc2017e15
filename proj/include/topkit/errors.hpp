#pragma once

#include <stdexcept>
#include <string>

namespace topkit {

/// Input data violates a domain invariant (bad score, duplicate id, ...).
/// Messages name the offending file/line/sample where applicable.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A file cannot be opened or does not match its expected format.
class format_error : public std::runtime_error {
public:
    explicit format_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace topkit
