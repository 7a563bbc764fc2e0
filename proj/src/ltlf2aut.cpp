#include "ltlfpo/ltlf2aut.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace ltlfpo {

using bdd::Bdd;
using bdd::NodeId;
using bdd::Var;

namespace {

std::vector<std::string> resolve_alphabet(const Formula& f, const std::vector<std::string>& alphabet) {
    auto props = f.props();
    if (alphabet.empty()) return {props.begin(), props.end()};
    for (const auto& p : props)
        if (std::find(alphabet.begin(), alphabet.end(), p) == alphabet.end())
            throw std::invalid_argument("proposition '" + p + "' is not in the alphabet");
    return alphabet;
}

// Obligation variables sit below the alphabet variables in the order, so a
// transition function splits into an alphabet prefix (the guard) and an
// obligation suffix (the successor).
class ObligationCompiler {
public:
    ObligationCompiler(const Formula& f, const std::vector<std::string>& alphabet, const Limits& limits)
        : root_(to_nnf(f)), m_(std::make_shared<bdd::Manager>()), alphabet_(alphabet) {
        m_->set_limits(limits);
        for (const auto& a : alphabet_) m_->new_var(a);
    }

    const std::shared_ptr<bdd::Manager>& manager() const { return m_; }
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    const Formula& root() const { return root_; }

    Var obligation(const Formula& f, bool strong) {
        auto& table = strong ? strong_ : weak_;
        if (auto it = table.find(f); it != table.end()) return it->second;
        Var v = m_->new_var((strong ? "@s" : "@w") + std::to_string(obligations_.size()));
        obligations_.push_back({f, strong});
        table.emplace(f, v);
        return v;
    }

    bool is_strong(Var v) const { return obligations_.at(v - alphabet_.size()).strong; }

    Bdd expand(const Formula& f) {
        if (auto it = expand_memo_.find(f); it != expand_memo_.end()) return it->second;
        Bdd r;
        switch (f.op()) {
        case Op::True: r = m_->one(); break;
        case Op::False: r = m_->zero(); break;
        case Op::Prop: r = m_->var(f.name()); break;
        case Op::Not:
            if (f.lhs().op() != Op::Prop) throw std::logic_error("expand: formula not in NNF");
            r = ~m_->var(f.lhs().name());
            break;
        case Op::And: r = expand(f.lhs()) & expand(f.rhs()); break;
        case Op::Or: r = expand(f.lhs()) | expand(f.rhs()); break;
        case Op::Next: r = m_->var(obligation(f.lhs(), true)); break;
        case Op::WeakNext: r = m_->var(obligation(f.lhs(), false)); break;
        case Op::Until:
            r = expand(f.rhs()) | (expand(f.lhs()) & m_->var(obligation(f, true)));
            break;
        case Op::Release:
            r = expand(f.rhs()) & (expand(f.lhs()) | m_->var(obligation(f, false)));
            break;
        default:
            throw std::logic_error("expand: formula not in NNF");
        }
        expand_memo_.emplace(f, r);
        return r;
    }

    Bdd obligation_expansion(Var v) {
        Formula f = obligations_.at(v - alphabet_.size()).formula; // expand may grow obligations_
        return expand(f);
    }

    /// One step of a state given as a positive function of obligations.
    Bdd step(const Bdd& state) {
        auto support = m_->support(state);
        std::vector<Bdd> images;
        for (Var v : support) images.push_back(obligation_expansion(v));
        std::vector<std::optional<Bdd>> by_var(m_->var_count());
        for (std::size_t i = 0; i < support.size(); ++i) by_var[support[i]] = images[i];
        return m_->compose(state, by_var);
    }

    /// Value of a state at the end of the trace.
    bool accepting(const Bdd& state) {
        std::vector<bool> values(m_->var_count(), false);
        for (std::size_t i = 0; i < obligations_.size(); ++i)
            values[alphabet_.size() + i] = !obligations_[i].strong;
        return m_->evaluate_dense(state, values);
    }

    /// Splits a transition function into (obligation node, alphabet guard).
    const std::vector<std::pair<NodeId, Bdd>>& cut(NodeId n) {
        if (auto it = cut_memo_.find(n); it != cut_memo_.end()) return it->second;
        std::vector<std::pair<NodeId, Bdd>> result;
        const auto& nd = m_->node(n);
        if (n <= 1 || nd.var >= alphabet_.size()) {
            result.emplace_back(n, m_->one());
        } else {
            Var v = nd.var;
            NodeId lo = nd.low, hi = nd.high;
            std::map<NodeId, Bdd> merged;
            for (const auto& [s, g] : cut(lo)) {
                Bdd part = m_->literal(v, false) & g;
                auto [it, fresh] = merged.emplace(s, part);
                if (!fresh) it->second |= part;
            }
            for (const auto& [s, g] : cut(hi)) {
                Bdd part = m_->literal(v, true) & g;
                auto [it, fresh] = merged.emplace(s, part);
                if (!fresh) it->second |= part;
            }
            result.assign(merged.begin(), merged.end());
        }
        return cut_memo_.emplace(n, std::move(result)).first->second;
    }

private:
    struct Obligation {
        Formula formula;
        bool strong;
    };

    Formula root_;
    std::shared_ptr<bdd::Manager> m_;
    std::vector<std::string> alphabet_;
    std::vector<Obligation> obligations_;
    std::unordered_map<Formula, Var, FormulaHash> strong_, weak_;
    std::unordered_map<Formula, Bdd, FormulaHash> expand_memo_;
    std::unordered_map<NodeId, std::vector<std::pair<NodeId, Bdd>>> cut_memo_;
};

ExplicitAutomaton rebind(const ExplicitAutomaton& a, std::shared_ptr<bdd::Manager> manager) {
    if (!manager) manager = ExplicitAutomaton::make_manager(a.alphabet());
    return transfer(a, std::move(manager));
}

} // namespace

ExplicitAutomaton ltlf_to_dfa(const Formula& f, const std::vector<std::string>& alphabet,
                              std::shared_ptr<bdd::Manager> manager, const Limits& limits) {
    ObligationCompiler c(f, resolve_alphabet(f, alphabet), limits);
    auto& m = *c.manager();
    Bdd init = m.var(c.obligation(c.root(), true));

    ExplicitAutomaton dfa(AutomatonKind::Dfa, c.manager(), c.alphabet());
    std::unordered_map<NodeId, std::size_t> index;
    std::vector<Bdd> states;
    auto intern = [&](const Bdd& s) {
        auto it = index.find(s.id());
        if (it != index.end()) return it->second;
        std::size_t id = dfa.add_state(c.accepting(s));
        limits.check_states(dfa.num_states(), "LTLf to DFA");
        index.emplace(s.id(), id);
        states.push_back(s);
        return id;
    };
    dfa.set_initial(intern(init));
    for (std::size_t k = 0; k < states.size(); ++k) {
        limits.check_deadline();
        Bdd image = c.step(states[k]);
        auto successors = c.cut(image.id());
        for (const auto& [succ, guard] : successors) {
            std::size_t dst = intern(Bdd(&m, succ));
            dfa.add_edge(k, dst, guard);
        }
    }
    return rebind(minimize(dfa), std::move(manager));
}

ExplicitAutomaton ltlf_to_nfa(const Formula& f, const std::vector<std::string>& alphabet,
                              std::shared_ptr<bdd::Manager> manager, const Limits& limits) {
    ObligationCompiler c(f, resolve_alphabet(f, alphabet), limits);
    auto& m = *c.manager();
    using State = std::vector<Var>;

    ExplicitAutomaton nfa(AutomatonKind::Nfa, c.manager(), c.alphabet());
    std::map<State, std::size_t> index;
    std::vector<State> states;
    auto intern = [&](State s) {
        auto it = index.find(s);
        if (it != index.end()) return it->second;
        bool acc = std::none_of(s.begin(), s.end(), [&](Var v) { return c.is_strong(v); });
        std::size_t id = nfa.add_state(acc);
        limits.check_states(nfa.num_states(), "LTLf to NFA");
        index.emplace(s, id);
        states.push_back(std::move(s));
        return id;
    };
    nfa.set_initial(intern({c.obligation(c.root(), true)}));

    // Minimal positive models of an obligation function, memoized per node.
    std::unordered_map<NodeId, std::vector<State>> models_memo;
    auto models = [&](NodeId n) -> const std::vector<State>& {
        if (auto it = models_memo.find(n); it != models_memo.end()) return it->second;
        std::set<State> found;
        m.for_each_cube(Bdd(&m, n), [&](const std::vector<std::pair<Var, bool>>& lits) {
            State s;
            for (auto [v, positive] : lits)
                if (positive) s.push_back(v);
            found.insert(std::move(s));
        });
        std::vector<State> minimal;
        for (const State& s : found) {
            bool subsumed = std::any_of(found.begin(), found.end(), [&](const State& t) {
                return t != s && std::includes(s.begin(), s.end(), t.begin(), t.end());
            });
            if (!subsumed) minimal.push_back(s);
        }
        return models_memo.emplace(n, std::move(minimal)).first->second;
    };

    for (std::size_t k = 0; k < states.size(); ++k) {
        limits.check_deadline();
        Bdd image = m.one();
        for (Var v : states[k]) image &= c.obligation_expansion(v);
        auto successors = c.cut(image.id());
        for (const auto& [succ, guard] : successors) {
            for (const State& s : models(succ)) {
                std::size_t dst = intern(s);
                nfa.add_edge(k, dst, guard);
            }
        }
    }
    return rebind(trim_unreachable(nfa), std::move(manager));
}

ExplicitAutomaton negated_spec_nfa(const Formula& spec, const std::vector<std::string>& alphabet, NfaMode mode,
                                   std::shared_ptr<bdd::Manager> manager, const Limits& limits) {
    Formula neg = Formula::negation(spec);
    if (mode == NfaMode::Direct) return ltlf_to_nfa(neg, alphabet, std::move(manager), limits);
    // The minimal DFA of the reversed language does not depend on which
    // automaton for the negation we start from; the DFA route is cheaper.
    ExplicitAutomaton d = ltlf_to_dfa(neg, alphabet, std::move(manager), limits);
    return reverse(determinize_minimize(reverse(d), limits));
}

} // namespace ltlfpo
