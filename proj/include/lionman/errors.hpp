#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lionman {

/// Misuse of the API: mismatched spaces, misaligned intervals.
class UsageError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A point does not belong to the space it claims to belong to.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A parameter lies outside its admissible interval.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Invalid construction parameters (space descriptors, game configs, configs).
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
    ValidationError(const std::string& what, std::vector<std::string> details)
        : std::invalid_argument(what), details_(std::move(details)) {}

    const std::vector<std::string>& details() const noexcept { return details_; }

private:
    std::vector<std::string> details_;
};

}  // namespace lionman
