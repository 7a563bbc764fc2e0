#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "ltlfpo/formula.hpp"
#include "ltlfpo/game.hpp"
#include "ltlfpo/ltlf2aut.hpp"
#include "ltlfpo/partition.hpp"
#include "ltlfpo/strategy.hpp"
#include "ltlfpo/symbolic.hpp"

namespace ltlfpo {

struct SynthOptions {
    Approach approach = Approach::Belief;
    NfaMode nfa_mode = NfaMode::ReverseCanonical;
    /// Wall-clock seconds; 0 disables the deadline.
    double timeout_s = 300;
    std::size_t state_budget = std::size_t{1} << 20;
    bool extract = true;
    /// Run validate_strategy at this horizon when realizable.
    std::optional<std::size_t> validate_horizon;
    bool keep_dot = false;
    std::string instance = "instance";
};

/// One row of the statistics report. The explicit phase builds the explicit
/// automaton; the symbolic phase encodes it and runs the fixpoint.
struct RunStats {
    std::string instance;
    std::string approach;
    double explicit_ms = 0;
    std::size_t explicit_states = 0;
    double symbolic_ms = 0;
    std::size_t dd_nodes = 0;
    std::size_t state_vars = 0;
    std::size_t iterations = 0;
    std::optional<Verdict> verdict;
    /// Peak resident set of the process in KiB (0 where unavailable).
    std::size_t peak_memory_kb = 0;
    nlohmann::json construction;

    static std::string csv_header();
    std::string csv_row() const;
    nlohmann::json to_json() const;
};

/// validate_strategy found a losing play.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SynthResult {
    Verdict verdict = Verdict::Unrealizable;
    RunStats stats;
    std::optional<Strategy> strategy;
    std::optional<ValidationReport> validation;
    /// DOT of the explicit automaton handed to the symbolic phase.
    std::string dot;
};

/// Runs one approach end to end. Throws ParseError-free errors only:
/// ResourceError on timeout or state budget, ValidationError when a
/// requested validation fails, std::invalid_argument on a bad partition.
SynthResult synthesize(const Formula& spec, const Partition& p, const SynthOptions& options);

std::size_t peak_memory_kb();

} // namespace ltlfpo
