#include "ltlfpo/symbolic.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <stdexcept>

#include "ltlfpo/errors.hpp"

namespace ltlfpo {

using bdd::Bdd;
using bdd::Var;

const char* approach_name(Approach a) {
    switch (a) {
    case Approach::Projection: return "projection";
    case Approach::Belief: return "belief";
    case Approach::Quantified: return "quantified";
    }
    return "?";
}

std::optional<Approach> parse_approach(const std::string& name) {
    if (name == "projection") return Approach::Projection;
    if (name == "belief") return Approach::Belief;
    if (name == "quantified") return Approach::Quantified;
    return std::nullopt;
}

Bdd SymbolicDFA::state_minterm(const std::vector<bool>& z) const {
    if (z.size() != state_vars.size()) throw std::invalid_argument("state_minterm: wrong number of state bits");
    return manager->minterm(state_vars, z);
}

std::vector<bool> SymbolicDFA::step(const std::vector<bool>& z, std::uint64_t letter) const {
    std::vector<bool> values(manager->var_count(), false);
    for (std::size_t i = 0; i < state_vars.size(); ++i) values[state_vars[i]] = z.at(i);
    std::size_t bit = 0;
    for (Var v : output_vars) values[v] = (letter >> bit++) & 1u;
    for (Var v : obs_vars) values[v] = (letter >> bit++) & 1u;
    std::vector<bool> next(state_vars.size());
    for (std::size_t j = 0; j < transition.size(); ++j) next[j] = manager->evaluate_dense(transition[j], values);
    return next;
}

bool SymbolicDFA::is_accepting(const std::vector<bool>& z) const {
    std::vector<bool> values(manager->var_count(), false);
    for (std::size_t i = 0; i < state_vars.size(); ++i) values[state_vars[i]] = z.at(i);
    return manager->evaluate_dense(accepting, values);
}

std::size_t SymbolicDFA::dd_nodes_transition() const { return manager->node_count(transition); }
std::size_t SymbolicDFA::dd_nodes_accepting() const { return manager->node_count(accepting); }

nlohmann::json SymbolicDFA::stats() const {
    return {{"approach", approach_name(approach)},
            {"n_state_vars", state_vars.size()},
            {"dd_nodes_transition", dd_nodes_transition()},
            {"dd_nodes_accepting", dd_nodes_accepting()},
            {"build_ms", build_ms}};
}

SymbolicDFA make_game(std::size_t n_state_vars, const Partition& p, Approach approach, const Limits& limits) {
    p.validate();
    SymbolicDFA g;
    g.manager = std::make_shared<bdd::Manager>();
    g.approach = approach;
    auto& m = *g.manager;
    m.set_limits(limits);
    for (std::size_t i = 0; i < n_state_vars; ++i) {
        g.state_vars.push_back(m.new_var("z" + std::to_string(i)));
        g.next_state_vars.push_back(m.new_var("z" + std::to_string(i) + "'"));
    }
    for (const auto& y : p.outputs) g.output_vars.push_back(m.new_var(y));
    for (const auto& x : p.obs) g.obs_vars.push_back(m.new_var(x));
    for (const auto& u : p.unobs) g.unobs_vars.push_back(m.new_var(u));
    g.output_names = p.outputs;
    g.obs_names = p.obs;
    g.unobs_names = p.unobs;
    g.accepting = m.zero();
    g.initial.assign(n_state_vars, false);
    return g;
}

namespace {

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Map from the automaton's manager into the game's, by proposition name.
std::vector<std::optional<Var>> game_var_map(const ExplicitAutomaton& a, const SymbolicDFA& g) {
    std::vector<std::optional<Var>> map(a.manager()->var_count());
    for (std::size_t i = 0; i < a.alphabet().size(); ++i) {
        auto v = g.manager->find_var(a.alphabet()[i]);
        if (!v) throw std::invalid_argument("proposition '" + a.alphabet()[i] + "' has no role in the partition");
        map[a.alphabet_vars()[i]] = *v;
    }
    return map;
}

void require_in_alphabet(const ExplicitAutomaton& a, const std::vector<std::string>& names) {
    for (const auto& n : names)
        if (std::find(a.alphabet().begin(), a.alphabet().end(), n) == a.alphabet().end())
            throw std::invalid_argument("partition proposition '" + n + "' is not in the automaton alphabet");
}

SymbolicDFA subset_construction(const ExplicitAutomaton& nfa, const Partition& p, Approach approach,
                                const Limits& limits) {
    auto start = Clock::now();
    require_in_alphabet(nfa, p.all());
    const std::size_t n = nfa.num_states();
    SymbolicDFA g = make_game(n, p, approach, limits);
    auto& m = *g.manager;
    auto map = game_var_map(nfa, g);
    Bdd unobs_cube = m.cube(g.unobs_vars);

    std::vector<Bdd> delta(n, m.zero());
    for (std::size_t i = 0; i < n; ++i) {
        Bdd zi = m.var(g.state_vars[i]);
        for (const Edge& e : nfa.edges(i)) {
            Bdd t = m.exists(unobs_cube, m.import(e.guard, map));
            delta[e.target] |= zi & t;
        }
    }
    Bdd hit_final = m.zero();
    for (std::size_t i = 0; i < n; ++i)
        if (nfa.is_accepting(i)) hit_final |= m.var(g.state_vars[i]);
    g.transition = std::move(delta);
    g.accepting = ~hit_final;
    g.initial[nfa.initial()] = true;
    g.build_ms = ms_since(start);
    return g;
}

} // namespace

SymbolicDFA projection_construction(const ExplicitAutomaton& nfa, const Partition& p, const Limits& limits) {
    return subset_construction(nfa, p, Approach::Projection, limits);
}

SymbolicDFA belief_construction(const ExplicitAutomaton& dfa, const Partition& p, const Limits& limits) {
    return subset_construction(complement_dfa(dfa), p, Approach::Belief, limits);
}

ExplicitAutomaton quantified_construction(const ExplicitAutomaton& dfa, const Partition& p, const Limits& limits) {
    require_in_alphabet(dfa, p.all());
    ExplicitAutomaton cur = complement_dfa(dfa);
    for (const auto& u : p.unobs) {
        limits.check_deadline();
        cur = determinize_minimize(project_explicit(cur, {u}), limits);
    }
    return complement_dfa(cur);
}

SymbolicDFA log_encode(const ExplicitAutomaton& dfa, const Partition& p, const Limits& limits) {
    auto start = Clock::now();
    if (!dfa.is_complete_deterministic()) throw std::invalid_argument("log_encode: input is not a complete DFA");
    for (const auto& a : dfa.alphabet())
        if (p.is_unobs(a)) throw std::invalid_argument("log_encode: alphabet contains unobservable '" + a + "'");
    const std::size_t n = dfa.num_states();
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;

    SymbolicDFA g = make_game(bits, p, Approach::Quantified, limits);
    auto& m = *g.manager;
    auto map = game_var_map(dfa, g);
    auto code = [&](std::size_t s) {
        std::vector<bool> z(bits);
        for (std::size_t j = 0; j < bits; ++j) z[j] = (s >> j) & 1u;
        return z;
    };

    std::vector<Bdd> delta(bits, m.zero());
    Bdd accepting = m.zero();
    for (std::size_t s = 0; s < n; ++s) {
        Bdd at = g.state_minterm(code(s));
        if (dfa.is_accepting(s)) accepting |= at;
        for (std::size_t j = 0; j < bits; ++j) {
            Bdd moves_to_one = m.zero();
            for (const Edge& e : dfa.edges(s))
                if ((e.target >> j) & 1u) moves_to_one |= m.import(e.guard, map);
            delta[j] |= at & moves_to_one;
        }
    }
    g.transition = std::move(delta);
    g.accepting = accepting;
    g.initial = code(dfa.initial());
    g.build_ms = ms_since(start);
    return g;
}

ExpandedGame expand_explicit(const SymbolicDFA& g, std::size_t max_states) {
    const std::size_t letter_bits = g.output_vars.size() + g.obs_vars.size();
    if (letter_bits > 20) throw std::invalid_argument("expand_explicit: too many letters");
    const std::uint64_t letters = std::uint64_t{1} << letter_bits;
    ExpandedGame out;
    std::map<std::vector<bool>, std::uint32_t> index;
    auto intern = [&](const std::vector<bool>& z) {
        auto it = index.find(z);
        if (it != index.end()) return it->second;
        if (out.states.size() >= max_states)
            throw ResourceError(ResourceKind::StateBudget, "expand_explicit: state budget exceeded");
        auto id = static_cast<std::uint32_t>(out.states.size());
        index.emplace(z, id);
        out.states.push_back(z);
        out.accepting.push_back(g.is_accepting(z));
        out.successor.emplace_back();
        return id;
    };
    intern(g.initial);
    for (std::size_t k = 0; k < out.states.size(); ++k) {
        std::vector<std::uint32_t> row(letters);
        for (std::uint64_t l = 0; l < letters; ++l) row[l] = intern(g.step(out.states[k], l));
        out.successor[k] = std::move(row);
    }
    return out;
}

} // namespace ltlfpo
