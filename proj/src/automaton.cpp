#include "ltlfpo/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ltlfpo {

using bdd::Bdd;
using bdd::NodeId;
using bdd::Var;

ExplicitAutomaton::ExplicitAutomaton(AutomatonKind kind, std::shared_ptr<bdd::Manager> manager,
                                     std::vector<std::string> alphabet)
    : kind_(kind), manager_(std::move(manager)), alphabet_(std::move(alphabet)) {
    if (alphabet_.size() > 64) throw std::invalid_argument("alphabets are limited to 64 propositions");
    for (const auto& name : alphabet_) {
        auto v = manager_->find_var(name);
        alphabet_vars_.push_back(v ? *v : manager_->new_var(name));
    }
    var_position_.assign(manager_->var_count(), -1);
    for (std::size_t i = 0; i < alphabet_vars_.size(); ++i) var_position_[alphabet_vars_[i]] = static_cast<int>(i);
}

std::shared_ptr<bdd::Manager> ExplicitAutomaton::make_manager(const std::vector<std::string>& alphabet) {
    auto m = std::make_shared<bdd::Manager>();
    for (const auto& name : alphabet) m->new_var(name);
    return m;
}

std::size_t ExplicitAutomaton::add_state(bool accepting) {
    out_.emplace_back();
    accepting_.push_back(accepting);
    return out_.size() - 1;
}

void ExplicitAutomaton::add_edge(std::size_t src, std::size_t dst, const Bdd& guard) {
    if (src >= out_.size() || dst >= out_.size()) throw std::out_of_range("add_edge: unknown state");
    if (guard.manager() != manager_.get()) throw std::invalid_argument("add_edge: guard from another manager");
    if (guard.is_zero()) return;
    for (Edge& e : out_[src]) {
        if (e.target == dst) {
            e.guard |= guard;
            return;
        }
    }
    out_[src].push_back({dst, guard});
}

std::size_t ExplicitAutomaton::num_edges() const {
    std::size_t n = 0;
    for (const auto& es : out_) n += es.size();
    return n;
}

std::size_t ExplicitAutomaton::num_accepting() const {
    return static_cast<std::size_t>(std::count(accepting_.begin(), accepting_.end(), true));
}

Bdd ExplicitAutomaton::guard(std::size_t src, std::size_t dst) const {
    for (const Edge& e : out_.at(src))
        if (e.target == dst) return e.guard;
    return manager_->zero();
}

bool ExplicitAutomaton::is_complete_deterministic() const {
    for (const auto& es : out_) {
        Bdd covered = manager_->zero();
        for (const Edge& e : es) {
            if (!(covered & e.guard).is_zero()) return false;
            covered |= e.guard;
        }
        if (!covered.is_one()) return false;
    }
    return !out_.empty();
}

bool ExplicitAutomaton::eval_guard(const Bdd& g, Letter letter) const {
    NodeId n = g.id();
    while (n > 1) {
        const auto& nd = manager_->node(n);
        int pos = nd.var < var_position_.size() ? var_position_[nd.var] : -1;
        if (pos < 0) throw std::invalid_argument("guard mentions a proposition outside the alphabet");
        n = ((letter >> pos) & 1u) ? nd.high : nd.low;
    }
    return n == 1;
}

std::size_t ExplicitAutomaton::step(std::size_t state, Letter letter) const {
    for (const Edge& e : out_.at(state))
        if (eval_guard(e.guard, letter)) return e.target;
    throw std::logic_error("step: automaton is not complete");
}

std::vector<std::size_t> ExplicitAutomaton::successors(std::size_t state, Letter letter) const {
    std::vector<std::size_t> out;
    for (const Edge& e : out_.at(state))
        if (eval_guard(e.guard, letter)) out.push_back(e.target);
    return out;
}

bool ExplicitAutomaton::accepts(std::span<const Letter> word) const {
    std::vector<char> cur(num_states(), 0), nxt(num_states(), 0);
    cur[initial_] = 1;
    for (Letter l : word) {
        std::fill(nxt.begin(), nxt.end(), 0);
        bool any = false;
        for (std::size_t s = 0; s < num_states(); ++s) {
            if (!cur[s]) continue;
            for (const Edge& e : out_[s]) {
                if (!nxt[e.target] && eval_guard(e.guard, l)) {
                    nxt[e.target] = 1;
                    any = true;
                }
            }
        }
        if (!any) return false;
        std::swap(cur, nxt);
    }
    for (std::size_t s = 0; s < num_states(); ++s)
        if (cur[s] && accepting_[s]) return true;
    return false;
}

Letter ExplicitAutomaton::pack(const Assignment& letter) const {
    Letter bits = 0;
    for (std::size_t i = 0; i < alphabet_.size(); ++i) {
        auto it = letter.find(alphabet_[i]);
        if (it == letter.end()) throw std::invalid_argument("letter does not assign '" + alphabet_[i] + "'");
        if (it->second) bits |= Letter{1} << i;
    }
    return bits;
}

std::vector<std::uint32_t> ExplicitAutomaton::dense_table() const {
    const std::size_t k = alphabet_.size();
    if (k > 24) throw std::invalid_argument("dense_table: alphabet too large");
    const std::size_t letters = std::size_t{1} << k;
    const Letter full = letters - 1;
    std::vector<std::uint32_t> table(num_states() * letters, 0xffffffffu);
    for (std::size_t s = 0; s < num_states(); ++s) {
        for (const Edge& e : out_[s]) {
            manager_->for_each_cube(e.guard, [&](const std::vector<std::pair<Var, bool>>& lits) {
                Letter fixed = 0, values = 0;
                for (auto [v, positive] : lits) {
                    int pos = v < var_position_.size() ? var_position_[v] : -1;
                    if (pos < 0) throw std::invalid_argument("guard mentions a proposition outside the alphabet");
                    fixed |= Letter{1} << pos;
                    if (positive) values |= Letter{1} << pos;
                }
                Letter free = full & ~fixed;
                for (Letter sub = free;; sub = (sub - 1) & free) {
                    table[s * letters + (values | sub)] = static_cast<std::uint32_t>(e.target);
                    if (sub == 0) break;
                }
            });
        }
    }
    for (auto t : table)
        if (t == 0xffffffffu) throw std::invalid_argument("dense_table: automaton is not complete");
    return table;
}

std::string ExplicitAutomaton::to_dot(const std::string& name) const {
    std::ostringstream out;
    out << "digraph \"" << name << "\" {\n  rankdir=LR;\n  init [shape=point];\n";
    for (std::size_t s = 0; s < num_states(); ++s)
        out << "  " << s << " [shape=" << (accepting_[s] ? "doublecircle" : "circle") << "];\n";
    out << "  init -> " << initial_ << ";\n";
    for (std::size_t s = 0; s < num_states(); ++s)
        for (const Edge& e : out_[s])
            out << "  " << s << " -> " << e.target << " [label=\"" << manager_->to_sop(e.guard) << "\"];\n";
    out << "}\n";
    return out.str();
}

nlohmann::json ExplicitAutomaton::to_json() const {
    nlohmann::json j;
    j["kind"] = kind_ == AutomatonKind::Dfa ? "DFA" : "NFA";
    j["n_states"] = num_states();
    j["initial"] = initial_;
    j["alphabet"] = alphabet_;
    auto acc = nlohmann::json::array();
    for (std::size_t s = 0; s < num_states(); ++s)
        if (accepting_[s]) acc.push_back(s);
    j["accepting"] = acc;
    auto edges = nlohmann::json::array();
    for (std::size_t s = 0; s < num_states(); ++s)
        for (const Edge& e : out_[s]) edges.push_back({{"src", s}, {"dst", e.target}, {"pred", manager_->to_sop(e.guard)}});
    j["edges"] = edges;
    return j;
}

bool run_word(const ExplicitAutomaton& a, const std::vector<Assignment>& word) {
    std::vector<Letter> packed;
    packed.reserve(word.size());
    for (const auto& l : word) packed.push_back(a.pack(l));
    return a.accepts(packed);
}

// ---------------------------------------------------------------------------
// letter classes

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<NodeId>& v) const {
        std::size_t h = v.size();
        for (NodeId x : v) h = h * 0x100000001B3ull ^ x;
        return h;
    }
};

using ClassList = std::vector<std::pair<Bdd, std::vector<std::size_t>>>;

} // namespace

std::vector<LetterClass> split_letters(bdd::Manager& m, const std::vector<Bdd>& guards) {
    std::unordered_map<std::vector<NodeId>, ClassList, VecHash> memo;
    auto rec = [&](auto&& self, const std::vector<NodeId>& ids) -> ClassList {
        if (auto it = memo.find(ids); it != memo.end()) return it->second;
        Var v = bdd::Manager::kTerminalVar;
        for (NodeId id : ids) v = std::min(v, m.node(id).var);
        ClassList result;
        if (v == bdd::Manager::kTerminalVar) {
            std::vector<std::size_t> members;
            for (std::size_t i = 0; i < ids.size(); ++i)
                if (ids[i] == 1) members.push_back(i);
            result.emplace_back(m.one(), std::move(members));
        } else {
            std::vector<NodeId> lo(ids), hi(ids);
            for (std::size_t i = 0; i < ids.size(); ++i) {
                const auto& nd = m.node(ids[i]);
                if (nd.var == v) {
                    lo[i] = nd.low;
                    hi[i] = nd.high;
                }
            }
            std::map<std::vector<std::size_t>, Bdd> merged;
            for (auto& [g, members] : self(self, lo)) {
                Bdd part = m.literal(v, false) & g;
                auto [it, fresh] = merged.emplace(members, part);
                if (!fresh) it->second |= part;
            }
            for (auto& [g, members] : self(self, hi)) {
                Bdd part = m.literal(v, true) & g;
                auto [it, fresh] = merged.emplace(members, part);
                if (!fresh) it->second |= part;
            }
            for (auto& [members, g] : merged) result.emplace_back(g, members);
        }
        memo.emplace(ids, result);
        return result;
    };
    std::vector<NodeId> ids;
    for (const Bdd& g : guards) {
        if (g.manager() != &m) throw std::invalid_argument("split_letters: guard from another manager");
        ids.push_back(g.id());
    }
    std::vector<LetterClass> out;
    for (auto& [g, members] : rec(rec, ids)) out.push_back({g, members});
    return out;
}

// ---------------------------------------------------------------------------
// determinization and minimization

ExplicitAutomaton determinize(const ExplicitAutomaton& a, const Limits& limits) {
    auto& m = *a.manager();
    ExplicitAutomaton d(AutomatonKind::Dfa, a.manager(), a.alphabet());
    std::map<std::vector<std::size_t>, std::size_t> index;
    std::deque<std::vector<std::size_t>> work;
    auto intern = [&](std::vector<std::size_t> subset) {
        auto it = index.find(subset);
        if (it != index.end()) return it->second;
        bool acc = std::any_of(subset.begin(), subset.end(), [&](std::size_t s) { return a.is_accepting(s); });
        std::size_t id = d.add_state(acc);
        limits.check_states(d.num_states(), "subset construction");
        index.emplace(subset, id);
        work.push_back(std::move(subset));
        return id;
    };
    d.set_initial(intern({a.initial()}));
    while (!work.empty()) {
        limits.check_deadline();
        std::vector<std::size_t> subset = std::move(work.front());
        work.pop_front();
        std::size_t src = index.at(subset);
        std::map<std::size_t, Bdd> to;
        for (std::size_t s : subset) {
            for (const Edge& e : a.edges(s)) {
                auto [it, fresh] = to.emplace(e.target, e.guard);
                if (!fresh) it->second |= e.guard;
            }
        }
        std::vector<std::size_t> targets;
        std::vector<Bdd> guards;
        for (auto& [t, g] : to) {
            targets.push_back(t);
            guards.push_back(g);
        }
        for (const LetterClass& cls : split_letters(m, guards)) {
            std::vector<std::size_t> next;
            for (std::size_t i : cls.members) next.push_back(targets[i]);
            std::size_t dst = intern(std::move(next));
            d.add_edge(src, dst, cls.guard);
        }
    }
    return d;
}

ExplicitAutomaton trim_unreachable(const ExplicitAutomaton& a) {
    std::vector<std::size_t> id(a.num_states(), SIZE_MAX);
    std::vector<std::size_t> order{a.initial()};
    id[a.initial()] = 0;
    for (std::size_t k = 0; k < order.size(); ++k)
        for (const Edge& e : a.edges(order[k]))
            if (id[e.target] == SIZE_MAX) {
                id[e.target] = order.size();
                order.push_back(e.target);
            }
    ExplicitAutomaton out(a.kind(), a.manager(), a.alphabet());
    for (std::size_t s : order) out.add_state(a.is_accepting(s));
    for (std::size_t s : order)
        for (const Edge& e : a.edges(s)) out.add_edge(id[s], id[e.target], e.guard);
    out.set_initial(0);
    return out;
}

namespace {

std::vector<bool> min_letter(const bdd::Manager& m, const Bdd& g, const std::vector<Var>& sorted_vars) {
    return m.pick_min(g, sorted_vars);
}

} // namespace

ExplicitAutomaton minimize(const ExplicitAutomaton& input) {
    if (!input.is_complete_deterministic()) throw std::invalid_argument("minimize: input is not a complete DFA");
    ExplicitAutomaton dfa = trim_unreachable(input);
    auto& m = *dfa.manager();
    const std::size_t n = dfa.num_states();

    std::vector<std::size_t> block(n);
    std::size_t blocks = 0;
    {
        std::map<bool, std::size_t> first;
        for (std::size_t s = 0; s < n; ++s) {
            auto [it, fresh] = first.emplace(dfa.is_accepting(s), first.size());
            block[s] = it->second;
        }
        blocks = first.size();
    }
    using Signature = std::pair<std::size_t, std::vector<std::pair<std::size_t, NodeId>>>;
    while (true) {
        std::map<Signature, std::size_t> sigs;
        std::vector<std::size_t> next(n);
        for (std::size_t s = 0; s < n; ++s) {
            std::map<std::size_t, Bdd> by_block;
            for (const Edge& e : dfa.edges(s)) {
                auto [it, fresh] = by_block.emplace(block[e.target], e.guard);
                if (!fresh) it->second |= e.guard;
            }
            Signature sig{block[s], {}};
            for (auto& [b, g] : by_block) sig.second.emplace_back(b, g.id());
            auto [it, fresh] = sigs.emplace(std::move(sig), sigs.size());
            next[s] = it->second;
        }
        block.swap(next);
        if (sigs.size() == blocks) break;
        blocks = sigs.size();
    }

    std::vector<Var> sorted_vars = dfa.alphabet_vars();
    std::sort(sorted_vars.begin(), sorted_vars.end());

    // Representatives, then canonical breadth-first numbering.
    std::vector<std::size_t> rep(blocks, SIZE_MAX);
    for (std::size_t s = 0; s < n; ++s)
        if (rep[block[s]] == SIZE_MAX) rep[block[s]] = s;
    auto block_edges = [&](std::size_t b) {
        std::map<std::size_t, Bdd> by_block;
        for (const Edge& e : dfa.edges(rep[b])) {
            auto [it, fresh] = by_block.emplace(block[e.target], e.guard);
            if (!fresh) it->second |= e.guard;
        }
        std::vector<std::pair<std::vector<bool>, std::pair<std::size_t, Bdd>>> sorted;
        for (auto& [t, g] : by_block) sorted.push_back({min_letter(m, g, sorted_vars), {t, g}});
        std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        return sorted;
    };
    std::vector<std::size_t> id(blocks, SIZE_MAX);
    std::vector<std::size_t> order{block[dfa.initial()]};
    id[order[0]] = 0;
    for (std::size_t k = 0; k < order.size(); ++k)
        for (auto& [key, tg] : block_edges(order[k]))
            if (id[tg.first] == SIZE_MAX) {
                id[tg.first] = order.size();
                order.push_back(tg.first);
            }
    ExplicitAutomaton out(AutomatonKind::Dfa, dfa.manager(), dfa.alphabet());
    for (std::size_t b : order) out.add_state(dfa.is_accepting(rep[b]));
    for (std::size_t b : order)
        for (auto& [key, tg] : block_edges(b)) out.add_edge(id[b], id[tg.first], tg.second);
    out.set_initial(0);
    return out;
}

ExplicitAutomaton determinize_minimize(const ExplicitAutomaton& a, const Limits& limits) {
    if (a.kind() == AutomatonKind::Dfa && a.is_complete_deterministic()) return minimize(a);
    return minimize(determinize(a, limits));
}

// ---------------------------------------------------------------------------
// reverse / complement / projection

ExplicitAutomaton reverse(const ExplicitAutomaton& a) {
    const std::size_t n = a.num_states();
    ExplicitAutomaton r(AutomatonKind::Nfa, a.manager(), a.alphabet());
    for (std::size_t s = 0; s < n; ++s) r.add_state(s == a.initial());
    for (std::size_t s = 0; s < n; ++s)
        for (const Edge& e : a.edges(s)) r.add_edge(e.target, s, e.guard);
    std::vector<std::size_t> finals;
    for (std::size_t s = 0; s < n; ++s)
        if (a.is_accepting(s)) finals.push_back(s);
    if (finals.size() == 1) {
        r.set_initial(finals[0]);
        return r;
    }
    std::size_t fresh = r.add_state(a.is_accepting(a.initial()));
    for (std::size_t s = 0; s < n; ++s)
        for (const Edge& e : a.edges(s))
            if (a.is_accepting(e.target)) r.add_edge(fresh, s, e.guard);
    r.set_initial(fresh);
    return r;
}

ExplicitAutomaton complement_dfa(const ExplicitAutomaton& a) {
    if (!a.is_complete_deterministic()) throw std::invalid_argument("complement_dfa: input is not a complete DFA");
    ExplicitAutomaton c(AutomatonKind::Dfa, a.manager(), a.alphabet());
    for (std::size_t s = 0; s < a.num_states(); ++s) c.add_state(!a.is_accepting(s));
    for (std::size_t s = 0; s < a.num_states(); ++s)
        for (const Edge& e : a.edges(s)) c.add_edge(s, e.target, e.guard);
    c.set_initial(a.initial());
    return c;
}

ExplicitAutomaton project_explicit(const ExplicitAutomaton& a, const std::vector<std::string>& vars) {
    std::vector<Var> hidden;
    std::vector<std::string> kept;
    for (const auto& v : vars)
        if (std::find(a.alphabet().begin(), a.alphabet().end(), v) == a.alphabet().end())
            throw std::invalid_argument("project_explicit: '" + v + "' is not in the alphabet");
    for (std::size_t i = 0; i < a.alphabet().size(); ++i) {
        if (std::find(vars.begin(), vars.end(), a.alphabet()[i]) != vars.end())
            hidden.push_back(a.alphabet_vars()[i]);
        else
            kept.push_back(a.alphabet()[i]);
    }
    auto& m = *a.manager();
    Bdd cube = m.cube(hidden);
    ExplicitAutomaton p(AutomatonKind::Nfa, a.manager(), kept);
    for (std::size_t s = 0; s < a.num_states(); ++s) p.add_state(a.is_accepting(s));
    for (std::size_t s = 0; s < a.num_states(); ++s)
        for (const Edge& e : a.edges(s)) p.add_edge(s, e.target, m.exists(cube, e.guard));
    p.set_initial(a.initial());
    return p;
}

ExplicitAutomaton accept_empty_word(const ExplicitAutomaton& a) {
    ExplicitAutomaton out(a.kind(), a.manager(), a.alphabet());
    for (std::size_t s = 0; s < a.num_states(); ++s) out.add_state(a.is_accepting(s));
    bool has_incoming = false;
    for (std::size_t s = 0; s < a.num_states(); ++s)
        for (const Edge& e : a.edges(s)) {
            out.add_edge(s, e.target, e.guard);
            has_incoming |= e.target == a.initial();
        }
    out.set_initial(a.initial());
    if (a.is_accepting(a.initial())) return out;
    if (!has_incoming) {
        out.set_accepting(a.initial(), true);
        return out;
    }
    std::size_t fresh = out.add_state(true);
    for (const Edge& e : a.edges(a.initial())) out.add_edge(fresh, e.target, e.guard);
    out.set_initial(fresh);
    return out;
}

namespace {

std::vector<std::optional<Var>> name_map(const ExplicitAutomaton& from, const ExplicitAutomaton& to) {
    std::vector<std::optional<Var>> map(from.manager()->var_count());
    for (std::size_t i = 0; i < from.alphabet().size(); ++i) {
        auto v = to.manager()->find_var(from.alphabet()[i]);
        if (!v) throw std::invalid_argument("alphabets differ: '" + from.alphabet()[i] + "'");
        map[from.alphabet_vars()[i]] = *v;
    }
    return map;
}

Bdd moved(const ExplicitAutomaton& from, const ExplicitAutomaton& to, const Bdd& g,
          const std::vector<std::optional<Var>>& map) {
    if (from.manager() == to.manager()) return g;
    return to.manager()->import(g, map);
}

} // namespace

ExplicitAutomaton transfer(const ExplicitAutomaton& a, std::shared_ptr<bdd::Manager> manager) {
    ExplicitAutomaton out(a.kind(), std::move(manager), a.alphabet());
    auto map = name_map(a, out);
    for (std::size_t s = 0; s < a.num_states(); ++s) out.add_state(a.is_accepting(s));
    for (std::size_t s = 0; s < a.num_states(); ++s)
        for (const Edge& e : a.edges(s)) out.add_edge(s, e.target, moved(a, out, e.guard, map));
    out.set_initial(a.initial());
    return out;
}

bool language_equivalent(const ExplicitAutomaton& a, const ExplicitAutomaton& b, const Limits& limits) {
    std::set<std::string> sa(a.alphabet().begin(), a.alphabet().end());
    std::set<std::string> sb(b.alphabet().begin(), b.alphabet().end());
    if (sa != sb) throw std::invalid_argument("language_equivalent: alphabets differ");
    ExplicitAutomaton da = a.kind() == AutomatonKind::Dfa && a.is_complete_deterministic() ? a : determinize(a, limits);
    ExplicitAutomaton db = b.kind() == AutomatonKind::Dfa && b.is_complete_deterministic() ? b : determinize(b, limits);
    auto map = name_map(db, da);
    std::vector<std::vector<Edge>> b_edges(db.num_states());
    for (std::size_t s = 0; s < db.num_states(); ++s)
        for (const Edge& e : db.edges(s)) b_edges[s].push_back({e.target, moved(db, da, e.guard, map)});
    std::set<std::pair<std::size_t, std::size_t>> seen{{da.initial(), db.initial()}};
    std::vector<std::pair<std::size_t, std::size_t>> work{{da.initial(), db.initial()}};
    while (!work.empty()) {
        auto [p, q] = work.back();
        work.pop_back();
        if (da.is_accepting(p) != db.is_accepting(q)) return false;
        for (const Edge& ea : da.edges(p))
            for (const Edge& eb : b_edges[q])
                if (!(ea.guard & eb.guard).is_zero() && seen.insert({ea.target, eb.target}).second)
                    work.emplace_back(ea.target, eb.target);
    }
    return true;
}

bool structurally_equal(const ExplicitAutomaton& a, const ExplicitAutomaton& b) {
    if (a.num_states() != b.num_states() || a.initial() != b.initial()) return false;
    auto map = name_map(b, a);
    for (std::size_t s = 0; s < a.num_states(); ++s) {
        if (a.is_accepting(s) != b.is_accepting(s)) return false;
        if (a.edges(s).size() != b.edges(s).size()) return false;
        for (const Edge& eb : b.edges(s))
            if (a.guard(s, eb.target) != moved(b, a, eb.guard, map)) return false;
    }
    return true;
}

} // namespace ltlfpo
