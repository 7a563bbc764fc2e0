#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ltlfpo/automaton.hpp"
#include "ltlfpo/formula.hpp"
#include "ltlfpo/limits.hpp"

namespace ltlfpo {

// LTLf to automata through the alternating automaton whose states are the
// obligations X psi (strong) and WX psi (weak) of the formula. An obligation
// still pending when the trace ends is violated if strong, met if weak.
//
// `alphabet` must contain every proposition of f; extra names are allowed.
// An empty alphabet means the sorted propositions of f. The result lives in
// `manager` when given, in a fresh manager otherwise.

/// NFA whose states are sets of obligations.
ExplicitAutomaton ltlf_to_nfa(const Formula& f, const std::vector<std::string>& alphabet = {},
                              std::shared_ptr<bdd::Manager> manager = nullptr, const Limits& limits = {});

/// Complete minimal DFA. States are built directly as positive Boolean
/// combinations of obligations, so no subset construction is needed.
ExplicitAutomaton ltlf_to_dfa(const Formula& f, const std::vector<std::string>& alphabet = {},
                              std::shared_ptr<bdd::Manager> manager = nullptr, const Limits& limits = {});

enum class NfaMode { Direct, ReverseCanonical };

/// NFA for the negation of `spec`. Direct: ltlf_to_nfa of the negation.
/// ReverseCanonical: the reversal of the minimal DFA of the reversed
/// language, that is reverse(determinize_minimize(reverse(A))) for any
/// automaton A of the negation.
ExplicitAutomaton negated_spec_nfa(const Formula& spec, const std::vector<std::string>& alphabet, NfaMode mode,
                                   std::shared_ptr<bdd::Manager> manager = nullptr, const Limits& limits = {});

} // namespace ltlfpo
