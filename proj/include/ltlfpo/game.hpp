#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ltlfpo/formula.hpp"
#include "ltlfpo/limits.hpp"
#include "ltlfpo/partition.hpp"
#include "ltlfpo/symbolic.hpp"

namespace ltlfpo {

enum class Verdict { Realizable, Unrealizable };

/// "REALIZABLE" / "UNREALIZABLE"
const char* verdict_name(Verdict v);

struct GameResult {
    Verdict verdict = Verdict::Unrealizable;
    /// Least fixpoint; a predicate over the state variables.
    bdd::Bdd winning;
    /// Index of the last layer that added states (0 if Phi is already closed).
    std::size_t iterations = 0;
    /// layers[k] = W_k, cumulative.
    std::vector<bdd::Bdd> layers;
    /// moves[k] (k >= 1) = forall Obs. W_{k-1}[Z <- Delta], over Z and
    /// outputs: the outputs that reach W_{k-1} whatever is observed.
    std::vector<bdd::Bdd> moves;

    /// Smallest k with the concrete state z in W_k, or npos.
    std::size_t rank(const SymbolicDFA& g, const std::vector<bool>& z) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// Reachability game in which the system picks outputs before seeing the
/// observable inputs of the same step:
///   W_0 = Phi,  W_k = W_{k-1} | exists Y. forall Obs. W_{k-1}[Z <- Delta].
GameResult solve_reachability(const SymbolicDFA& g, const Limits& limits = {});

struct OracleResult {
    Verdict verdict = Verdict::Unrealizable;
    std::size_t dfa_states = 0;
    std::size_t beliefs = 0;
};

/// Reference solver with no symbolic state: the DFA of `spec` is tabulated,
/// belief states (sets of DFA states consistent with what the system has
/// seen) are enumerated explicitly and a backward attractor is computed
/// over them. Throws ResourceError when more than `max_beliefs` beliefs
/// are reachable.
OracleResult oracle_solve_explicit(const Formula& spec, const Partition& p, std::size_t max_beliefs = 1u << 12,
                                   const Limits& limits = {});

} // namespace ltlfpo
