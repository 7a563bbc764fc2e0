#pragma once

#include <chrono>
#include <cstddef>
#include <optional>

namespace ltlfpo {

using Clock = std::chrono::steady_clock;

/// Resource allowance shared by the explicit and symbolic phases.
struct Limits {
    std::size_t max_states = std::size_t{1} << 20;
    /// Decision-diagram nodes per manager; the arena never shrinks.
    std::size_t max_nodes = std::size_t{1} << 25;
    std::optional<Clock::time_point> deadline;

    static Limits with_timeout(double seconds, std::size_t max_states = std::size_t{1} << 20);

    /// Throws ResourceError(Timeout) once the deadline has passed.
    void check_deadline() const;
    /// Throws ResourceError(StateBudget) if `states` exceeds max_states.
    void check_states(std::size_t states, const char* what) const;
    /// Throws ResourceError(StateBudget) if `nodes` exceeds max_nodes.
    void check_nodes(std::size_t nodes) const;
};

} // namespace ltlfpo
