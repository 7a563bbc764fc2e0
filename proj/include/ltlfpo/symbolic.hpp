#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ltlfpo/automaton.hpp"
#include "ltlfpo/bdd.hpp"
#include "ltlfpo/limits.hpp"
#include "ltlfpo/partition.hpp"

namespace ltlfpo {

enum class Approach { Projection, Belief, Quantified };

const char* approach_name(Approach a);
std::optional<Approach> parse_approach(const std::string& name);

/// Deterministic automaton over Obs and outputs with a symbolic state space.
/// State z_j moves to Delta_j(Z, Obs, Y).
///
/// Variable order in the manager: (z_0, z_0'), (z_1, z_1'), ..., then
/// outputs, observable inputs and unobservable inputs, each in partition
/// order. Unobservables are registered but never occur in Delta or Phi.
struct SymbolicDFA {
    std::shared_ptr<bdd::Manager> manager;
    Approach approach = Approach::Belief;

    std::vector<bdd::Var> state_vars;
    std::vector<bdd::Var> next_state_vars;
    std::vector<bdd::Var> output_vars;
    std::vector<bdd::Var> obs_vars;
    std::vector<bdd::Var> unobs_vars;
    std::vector<std::string> output_names;
    std::vector<std::string> obs_names;
    std::vector<std::string> unobs_names;

    std::vector<bdd::Bdd> transition;
    bdd::Bdd accepting;
    std::vector<bool> initial;

    double build_ms = 0;

    bdd::Bdd state_minterm(const std::vector<bool>& z) const;
    bdd::Bdd initial_bdd() const { return state_minterm(initial); }

    /// Successor of a concrete state. Bits of `letter` are the outputs
    /// followed by the observable inputs.
    std::vector<bool> step(const std::vector<bool>& z, std::uint64_t letter) const;
    bool is_accepting(const std::vector<bool>& z) const;

    std::size_t dd_nodes_transition() const;
    std::size_t dd_nodes_accepting() const;
    /// {approach, n_state_vars, dd_nodes_transition, dd_nodes_accepting, build_ms}
    nlohmann::json stats() const;
};

/// Empty game over `n_state_vars` state variables, variables registered in
/// the documented order.
SymbolicDFA make_game(std::size_t n_state_vars, const Partition& p, Approach approach, const Limits& limits = {});

/// Symbolic subset construction on an NFA for the negated formula:
/// one-hot z_i per NFA state, Delta_j = OR_i (z_i & exists Unobs. T_ij),
/// Phi = !OR_{i in F} z_i, initial = {s_0}.
SymbolicDFA projection_construction(const ExplicitAutomaton& nfa, const Partition& p, const Limits& limits = {});

/// The projection construction started from the complement of the DFA of
/// the formula; states of the game are belief states and
/// Phi = AND_{s not in F} !z_s.
SymbolicDFA belief_construction(const ExplicitAutomaton& dfa, const Partition& p, const Limits& limits = {});

/// Minimal DFA over Obs and outputs accepting the words all of whose
/// unobservable extensions are accepted by `dfa`. Computed as complement,
/// then project and determinize-minimize once per unobservable (partition
/// order), then complement.
ExplicitAutomaton quantified_construction(const ExplicitAutomaton& dfa, const Partition& p, const Limits& limits = {});

/// Binary encoding of a complete DFA over ceil(log2 n) state variables.
SymbolicDFA log_encode(const ExplicitAutomaton& dfa, const Partition& p, const Limits& limits = {});

/// Reachable part of a symbolic game, decoded state by state.
struct ExpandedGame {
    std::vector<std::vector<bool>> states;
    std::vector<bool> accepting;
    /// successor[s][letter], letter bits as in SymbolicDFA::step
    std::vector<std::vector<std::uint32_t>> successor;
};

ExpandedGame expand_explicit(const SymbolicDFA& g, std::size_t max_states);

} // namespace ltlfpo
