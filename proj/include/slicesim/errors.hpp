#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slicesim {

/// Thrown when a commit would push utilization past capacity. Callers that
/// check the fit first never see this.
class CapacityViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Thrown by metric computations whose value is undefined for the given
/// input (empty trace, zero baseline, too few samples).
class UndefinedMetric : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Thrown on malformed CSV input; carries the 1-based row number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t row, const std::string& what)
        : std::runtime_error("row " + std::to_string(row) + ": " + what), row_(row) {}

    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

} // namespace slicesim
