#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ltlfpo/formula.hpp"

namespace ltlfpo {

using Assignment = std::map<std::string, bool>;
using Trace = std::vector<Assignment>;

/// Finite-trace satisfaction at position 0. X is false at the last
/// position, WX true; U needs its witness inside the trace.
///
/// Throws std::invalid_argument on an empty trace or when an assignment
/// misses a proposition of f.
bool eval_trace(const Formula& f, const Trace& t);

/// Compiled evaluator over traces whose letters are bitmasks: bit i of a
/// letter is the value of props[i]. Up to 64 propositions.
class TraceChecker {
public:
    TraceChecker(const Formula& f, std::vector<std::string> props);

    /// Requires a nonempty trace.
    bool holds(std::span<const std::uint64_t> letters) const;

    const std::vector<std::string>& props() const { return props_; }

private:
    struct Instr {
        Op op;
        std::uint32_t a = 0;
        std::uint32_t b = 0;
    };

    std::vector<std::string> props_;
    std::vector<Instr> program_;
};

} // namespace ltlfpo
