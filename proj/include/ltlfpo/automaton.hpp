#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "ltlfpo/bdd.hpp"
#include "ltlfpo/limits.hpp"
#include "ltlfpo/trace.hpp"

namespace ltlfpo {

enum class AutomatonKind { Nfa, Dfa };

/// A letter packed as a bitmask: bit i is the value of alphabet()[i].
using Letter = std::uint64_t;

struct Edge {
    std::size_t target;
    bdd::Bdd guard;
};

/// Finite automaton over 2^alphabet with edges labelled by predicates. There
/// is at most one edge per ordered state pair; its guard is the set of
/// letters moving between the two states.
class ExplicitAutomaton {
public:
    /// Registers missing alphabet names as variables of `manager`.
    ExplicitAutomaton(AutomatonKind kind, std::shared_ptr<bdd::Manager> manager, std::vector<std::string> alphabet);

    static std::shared_ptr<bdd::Manager> make_manager(const std::vector<std::string>& alphabet);

    AutomatonKind kind() const { return kind_; }
    void set_kind(AutomatonKind kind) { kind_ = kind; }
    const std::shared_ptr<bdd::Manager>& manager() const { return manager_; }
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    const std::vector<bdd::Var>& alphabet_vars() const { return alphabet_vars_; }

    std::size_t add_state(bool accepting);
    /// ORs `guard` into the edge src -> dst. Zero guards are ignored.
    void add_edge(std::size_t src, std::size_t dst, const bdd::Bdd& guard);
    void set_initial(std::size_t s) { initial_ = s; }
    void set_accepting(std::size_t s, bool accepting) { accepting_.at(s) = accepting; }

    std::size_t num_states() const { return out_.size(); }
    std::size_t num_edges() const;
    std::size_t initial() const { return initial_; }
    bool is_accepting(std::size_t s) const { return accepting_.at(s); }
    std::size_t num_accepting() const;
    const std::vector<Edge>& edges(std::size_t s) const { return out_.at(s); }
    /// The predicate T(i,j); constant false when there is no edge.
    bdd::Bdd guard(std::size_t src, std::size_t dst) const;

    /// Every state has pairwise-disjoint outgoing guards covering all letters.
    bool is_complete_deterministic() const;

    bool eval_guard(const bdd::Bdd& guard, Letter letter) const;
    /// Unique successor; requires a complete DFA.
    std::size_t step(std::size_t state, Letter letter) const;
    std::vector<std::size_t> successors(std::size_t state, Letter letter) const;
    /// Acceptance of a packed word (existential over runs).
    bool accepts(std::span<const Letter> word) const;

    /// Packs an assignment; throws std::invalid_argument if it misses a
    /// letter of the alphabet.
    Letter pack(const Assignment& letter) const;

    /// Row-major table step(s, letter) for all 2^|alphabet| letters.
    /// Requires a complete DFA and at most 24 alphabet propositions.
    std::vector<std::uint32_t> dense_table() const;

    std::string to_dot(const std::string& name = "A") const;
    /// {kind, n_states, initial, accepting[], edges[{src,dst,pred}]}
    nlohmann::json to_json() const;

private:
    AutomatonKind kind_;
    std::shared_ptr<bdd::Manager> manager_;
    std::vector<std::string> alphabet_;
    std::vector<bdd::Var> alphabet_vars_;
    std::vector<int> var_position_;
    std::size_t initial_ = 0;
    std::vector<bool> accepting_;
    std::vector<std::vector<Edge>> out_;
};

/// Membership of a word given as assignments (existential over runs).
bool run_word(const ExplicitAutomaton& a, const std::vector<Assignment>& word);

/// Partition of the letters into classes that agree on every guard.
struct LetterClass {
    bdd::Bdd guard;
    std::vector<std::size_t> members; ///< indices of the guards holding on the class
};
std::vector<LetterClass> split_letters(bdd::Manager& manager, const std::vector<bdd::Bdd>& guards);

/// Reachable subset construction followed by minimization. The result is a
/// complete minimal DFA (an empty-subset sink is kept when reachable).
ExplicitAutomaton determinize_minimize(const ExplicitAutomaton& a, const Limits& limits = {});
ExplicitAutomaton determinize(const ExplicitAutomaton& a, const Limits& limits = {});
/// Partition refinement on a complete DFA; states are renumbered in a
/// canonical breadth-first order so isomorphic inputs give equal outputs.
ExplicitAutomaton minimize(const ExplicitAutomaton& dfa);

/// Language reversal. With several accepting states a fresh initial state
/// takes copies of their incoming edges, reversed.
ExplicitAutomaton reverse(const ExplicitAutomaton& a);
/// Throws std::invalid_argument unless `a` is a complete DFA.
ExplicitAutomaton complement_dfa(const ExplicitAutomaton& a);
/// Existential quantification of `vars` out of every edge guard. The result
/// is an NFA over the remaining alphabet.
ExplicitAutomaton project_explicit(const ExplicitAutomaton& a, const std::vector<std::string>& vars);
/// Same language plus the empty word. Adds a fresh initial state only when
/// the old one is rejecting and has incoming edges.
ExplicitAutomaton accept_empty_word(const ExplicitAutomaton& a);
ExplicitAutomaton trim_unreachable(const ExplicitAutomaton& a);
/// Copy of `a` whose guards live in `manager` (alphabet matched by name).
ExplicitAutomaton transfer(const ExplicitAutomaton& a, std::shared_ptr<bdd::Manager> manager);

/// Exact language equality (product of the determinized automata). The two
/// alphabets must name the same propositions.
bool language_equivalent(const ExplicitAutomaton& a, const ExplicitAutomaton& b, const Limits& limits = {});

/// Same states, same initial and accepting sets and equal guards after
/// mapping `b` into `a`'s manager.
bool structurally_equal(const ExplicitAutomaton& a, const ExplicitAutomaton& b);

} // namespace ltlfpo
