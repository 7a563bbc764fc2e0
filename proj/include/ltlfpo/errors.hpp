#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ltlfpo {

/// Raised by the formula and partition readers. Line and column are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

enum class ResourceKind { Timeout, StateBudget, PlayBudget };

/// A run exceeded its time or size allowance. Mirrors the timeouts and
/// memouts of a benchmark harness; never indicates a wrong answer.
class ResourceError : public std::runtime_error {
public:
    ResourceError(ResourceKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ResourceKind kind() const { return kind_; }

private:
    ResourceKind kind_;
};

} // namespace ltlfpo
