#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "ltlfpo/formula.hpp"
#include "ltlfpo/game.hpp"
#include "ltlfpo/partition.hpp"
#include "ltlfpo/symbolic.hpp"
#include "ltlfpo/trace.hpp"

namespace ltlfpo {

/// Finite-state transducer reading observations. The output of a memory
/// state is produced before the observation of the same step is read.
struct Strategy {
    struct State {
        std::vector<bool> memory;  ///< assignment to the game's state variables
        std::size_t rank = 0;      ///< fixpoint layer of the memory
        std::vector<bool> output;  ///< indexed like output_names
        std::vector<std::uint32_t> next; ///< indexed by observation bits (obs_names order)
    };

    std::vector<std::string> output_names;
    std::vector<std::string> obs_names;
    std::size_t initial = 0;
    std::vector<State> states;

    std::uint64_t output_bits(std::size_t s) const;
    Assignment output(std::size_t s) const;

    /// {initial, states:[{id, output:{y:0/1}, next:[{obs:{x:0/1}, to}]}]}
    nlohmann::json to_json() const;
};

/// Transducer over the memories reachable under the strategy. A memory of
/// rank r > 0 outputs the lexicographically smallest output assignment
/// (variable order) that moves every observation into a layer below r;
/// rank-0 memories output all-false and keep their memory.
Strategy extract_strategy(const SymbolicDFA& g, const GameResult& result, std::size_t max_states = 1u << 20);

enum class ValidationStatus { Valid, Invalid, Skipped };

struct ValidationReport {
    ValidationStatus status = ValidationStatus::Valid;
    /// The horizon is below the fixpoint iteration count.
    bool horizon_warning = false;
    /// Input sequences of full length covered (saturates at 2^64 - 1).
    std::uint64_t plays = 0;
    /// Distinct (memory, DFA state, depth) nodes examined.
    std::size_t nodes = 0;
    /// Complete prefixes whose satisfaction was confirmed by the trace checker.
    std::size_t confirmed = 0;
    /// On failure: the offending trace.
    Trace counterexample;
    std::string message;
};

/// Plays `s` against every input sequence (observable and unobservable) of
/// length `horizon` and checks that each play has a prefix satisfying
/// `spec`. Plays are merged when they reach the same strategy memory and the
/// same state of the minimal DFA of `spec`, which determines all future
/// verdicts; every first satisfying prefix found is also rechecked with the
/// finite-trace evaluator. Skipped when more than `node_budget` nodes would
/// be examined. `iterations` only feeds the horizon warning.
ValidationReport validate_strategy(const Strategy& s, const Formula& spec, const Partition& p, std::size_t horizon,
                                   std::size_t iterations = 0, std::size_t node_budget = 10'000'000);

} // namespace ltlfpo
