#include "ltlfpo/game.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "ltlfpo/errors.hpp"
#include "ltlfpo/ltlf2aut.hpp"

namespace ltlfpo {

using bdd::Bdd;
using bdd::Var;

const char* verdict_name(Verdict v) { return v == Verdict::Realizable ? "REALIZABLE" : "UNREALIZABLE"; }

std::size_t GameResult::rank(const SymbolicDFA& g, const std::vector<bool>& z) const {
    std::vector<bool> values(g.manager->var_count(), false);
    for (std::size_t i = 0; i < g.state_vars.size(); ++i) values[g.state_vars[i]] = z.at(i);
    for (std::size_t k = 0; k < layers.size(); ++k)
        if (g.manager->evaluate_dense(layers[k], values)) return k;
    return npos;
}

namespace {

// Controllable preimage ∀Obs. W[Z←Δ] as a function of (Z, Y). The transition
// vector is cofactored over the letter variables once, into a DAG whose leaves
// depend on state variables only; each iteration then composes W at the
// leaves and combines upwards.
class Preimage {
public:
    Preimage(const SymbolicDFA& g) : g_(g), m_(*g.manager) {
        for (Var v : g.output_vars) letters_.push_back({v, true});
        for (Var v : g.obs_vars) letters_.push_back({v, false});
        std::sort(letters_.begin(), letters_.end());
        by_var_.resize(m_.var_count());
        root_ = build(0, g.transition);
    }

    Bdd operator()(const Bdd& w) {
        std::vector<std::optional<Bdd>> value(nodes_.size());
        for (std::size_t k = 0; k < nodes_.size(); ++k) { // children precede parents
            const Node& n = nodes_[k];
            if (n.leaf) {
                for (std::size_t j = 0; j < g_.state_vars.size(); ++j) by_var_[g_.state_vars[j]] = n.delta[j];
                value[k] = m_.compose(w, by_var_);
            } else {
                const Bdd& lo = *value[n.low];
                const Bdd& hi = *value[n.high];
                value[k] = n.output ? m_.ite(m_.literal(n.var, true), hi, lo) : lo & hi;
            }
        }
        return *value[root_];
    }

private:
    struct Letter {
        Var var;
        bool output;
        bool operator<(const Letter& o) const { return var < o.var; }
    };
    struct Node {
        bool leaf = true;
        Var var = 0;
        bool output = false;
        std::size_t low = 0, high = 0;
        std::vector<Bdd> delta;
    };

    std::size_t build(std::size_t level, const std::vector<Bdd>& delta) {
        std::vector<bdd::NodeId> key{static_cast<bdd::NodeId>(level)};
        for (const Bdd& d : delta) key.push_back(d.id());
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        std::vector<bool> used(m_.var_count(), false);
        for (const Bdd& d : delta)
            for (Var v : m_.support(d)) used[v] = true;
        std::size_t next = level;
        while (next < letters_.size() && !used[letters_[next].var]) ++next;

        Node n;
        if (next == letters_.size()) {
            n.delta = delta;
        } else {
            const Letter& l = letters_[next];
            std::vector<Bdd> lo, hi;
            for (const Bdd& d : delta) {
                lo.push_back(m_.cofactor(d, l.var, false));
                hi.push_back(m_.cofactor(d, l.var, true));
            }
            n.leaf = false;
            n.var = l.var;
            n.output = l.output;
            n.low = build(next + 1, lo);
            n.high = build(next + 1, hi);
        }
        nodes_.push_back(std::move(n));
        memo_.emplace(std::move(key), nodes_.size() - 1);
        return nodes_.size() - 1;
    }

    const SymbolicDFA& g_;
    bdd::Manager& m_;
    std::vector<Letter> letters_;
    std::vector<std::optional<Bdd>> by_var_;
    std::vector<Node> nodes_;
    std::map<std::vector<bdd::NodeId>, std::size_t> memo_;
    std::size_t root_ = 0;
};

} // namespace

GameResult solve_reachability(const SymbolicDFA& g, const Limits& limits) {
    auto& m = *g.manager;
    m.set_limits(limits);
    Bdd out_cube = m.cube(g.output_vars);
    Preimage preimage(g);

    GameResult r;
    r.layers.push_back(g.accepting);
    r.moves.push_back(m.zero());
    Bdd w = g.accepting;
    while (true) {
        limits.check_deadline();
        Bdd moves = preimage(w);
        Bdd next = w | m.exists(out_cube, moves);
        if (next == w) break;
        r.layers.push_back(next);
        r.moves.push_back(moves);
        w = next;
    }
    r.winning = w;
    r.iterations = r.layers.size() - 1;
    r.verdict = m.evaluate(w, [&] {
        std::map<Var, bool> a;
        for (std::size_t i = 0; i < g.state_vars.size(); ++i) a[g.state_vars[i]] = g.initial[i];
        return a;
    }())
                    ? Verdict::Realizable
                    : Verdict::Unrealizable;
    return r;
}

OracleResult oracle_solve_explicit(const Formula& spec, const Partition& p, std::size_t max_beliefs,
                                   const Limits& limits) {
    p.validate();
    p.check_covers(spec);
    const std::size_t ny = p.outputs.size(), no = p.obs.size(), nu = p.unobs.size();
    if (ny + no + nu > 22) throw std::invalid_argument("oracle_solve_explicit: too many propositions");
    ExplicitAutomaton dfa = ltlf_to_dfa(spec, p.all(), nullptr, limits);
    const auto table = dfa.dense_table();
    const std::size_t letters = std::size_t{1} << (ny + no + nu);
    const std::size_t n = dfa.num_states();

    using Belief = std::vector<bool>;
    std::map<Belief, std::size_t> index;
    std::vector<Belief> beliefs;
    auto intern = [&](Belief b) {
        auto it = index.find(b);
        if (it != index.end()) return it->second;
        if (beliefs.size() >= max_beliefs)
            throw ResourceError(ResourceKind::StateBudget, "oracle: belief budget exceeded");
        index.emplace(b, beliefs.size());
        beliefs.push_back(std::move(b));
        return beliefs.size() - 1;
    };
    Belief init(n, false);
    init[dfa.initial()] = true;
    intern(init);

    // succ[b][y][o]
    std::vector<std::vector<std::vector<std::size_t>>> succ;
    for (std::size_t k = 0; k < beliefs.size(); ++k) {
        limits.check_deadline();
        std::vector<std::vector<std::size_t>> row(std::size_t{1} << ny, std::vector<std::size_t>(std::size_t{1} << no));
        for (std::size_t y = 0; y < (std::size_t{1} << ny); ++y) {
            for (std::size_t o = 0; o < (std::size_t{1} << no); ++o) {
                Belief next(n, false);
                for (std::size_t q = 0; q < n; ++q) {
                    if (!beliefs[k][q]) continue;
                    for (std::size_t u = 0; u < (std::size_t{1} << nu); ++u) {
                        std::size_t letter = y | (o << ny) | (u << (ny + no));
                        next[table[q * letters + letter]] = true;
                    }
                }
                row[y][o] = intern(std::move(next));
            }
        }
        succ.push_back(std::move(row));
    }

    std::vector<bool> win(beliefs.size(), false);
    for (std::size_t k = 0; k < beliefs.size(); ++k) {
        bool all_accepting = true;
        for (std::size_t q = 0; q < n; ++q)
            if (beliefs[k][q] && !dfa.is_accepting(q)) all_accepting = false;
        win[k] = all_accepting;
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t k = 0; k < beliefs.size(); ++k) {
            if (win[k]) continue;
            for (const auto& by_obs : succ[k]) {
                if (std::all_of(by_obs.begin(), by_obs.end(), [&](std::size_t t) { return win[t]; })) {
                    win[k] = true;
                    changed = true;
                    break;
                }
            }
        }
    }
    OracleResult r;
    r.verdict = win[0] ? Verdict::Realizable : Verdict::Unrealizable;
    r.dfa_states = n;
    r.beliefs = beliefs.size();
    return r;
}

} // namespace ltlfpo
