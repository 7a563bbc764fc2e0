#include "ltlfpo/strategy.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "ltlfpo/errors.hpp"
#include "ltlfpo/ltlf2aut.hpp"

namespace ltlfpo {

using bdd::Bdd;
using bdd::Var;

std::uint64_t Strategy::output_bits(std::size_t s) const {
    std::uint64_t bits = 0;
    const auto& out = states.at(s).output;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (out[i]) bits |= std::uint64_t{1} << i;
    return bits;
}

Assignment Strategy::output(std::size_t s) const {
    Assignment a;
    for (std::size_t i = 0; i < output_names.size(); ++i) a[output_names[i]] = states.at(s).output[i];
    return a;
}

nlohmann::json Strategy::to_json() const {
    nlohmann::json j;
    j["initial"] = initial;
    auto arr = nlohmann::json::array();
    for (std::size_t s = 0; s < states.size(); ++s) {
        nlohmann::json st;
        st["id"] = s;
        nlohmann::json out = nlohmann::json::object();
        for (std::size_t i = 0; i < output_names.size(); ++i) out[output_names[i]] = states[s].output[i] ? 1 : 0;
        st["output"] = out;
        auto next = nlohmann::json::array();
        for (std::size_t o = 0; o < states[s].next.size(); ++o) {
            nlohmann::json obs = nlohmann::json::object();
            for (std::size_t i = 0; i < obs_names.size(); ++i) obs[obs_names[i]] = (o >> i) & 1u;
            next.push_back({{"obs", obs}, {"to", states[s].next[o]}});
        }
        st["next"] = next;
        arr.push_back(st);
    }
    j["states"] = arr;
    return j;
}

Strategy extract_strategy(const SymbolicDFA& g, const GameResult& result, std::size_t max_states) {
    if (result.verdict != Verdict::Realizable) throw std::invalid_argument("extract_strategy: game is not realizable");
    if (g.obs_vars.size() > 20) throw std::invalid_argument("extract_strategy: too many observable inputs");
    auto& m = *g.manager;
    std::vector<Var> outputs_sorted = g.output_vars;
    std::sort(outputs_sorted.begin(), outputs_sorted.end());
    const std::size_t ny = g.output_vars.size();
    const std::size_t n_obs = std::size_t{1} << g.obs_vars.size();

    Strategy s;
    s.output_names = g.output_names;
    s.obs_names = g.obs_names;
    std::map<std::vector<bool>, std::uint32_t> index;
    auto intern = [&](const std::vector<bool>& z) {
        auto it = index.find(z);
        if (it != index.end()) return it->second;
        if (s.states.size() >= max_states)
            throw ResourceError(ResourceKind::StateBudget, "strategy: memory budget exceeded");
        Strategy::State st;
        st.memory = z;
        st.rank = result.rank(g, z);
        if (st.rank == GameResult::npos) throw std::logic_error("strategy left the winning region");
        auto id = static_cast<std::uint32_t>(s.states.size());
        index.emplace(z, id);
        s.states.push_back(std::move(st));
        return id;
    };
    s.initial = intern(g.initial);
    for (std::size_t k = 0; k < s.states.size(); ++k) {
        const std::size_t rank = s.states[k].rank;
        std::vector<bool> output(ny, false);
        std::vector<std::uint32_t> next(n_obs, static_cast<std::uint32_t>(k));
        if (rank > 0) {
            Bdd choices = m.restrict(result.moves.at(rank), g.state_vars, s.states[k].memory);
            std::vector<bool> pick = m.pick_min(choices, outputs_sorted);
            for (std::size_t i = 0; i < ny; ++i) {
                auto pos = std::find(outputs_sorted.begin(), outputs_sorted.end(), g.output_vars[i]) - outputs_sorted.begin();
                output[i] = pick[pos];
            }
            std::uint64_t ybits = 0;
            for (std::size_t i = 0; i < ny; ++i)
                if (output[i]) ybits |= std::uint64_t{1} << i;
            for (std::size_t o = 0; o < n_obs; ++o) {
                std::vector<bool> z = g.step(s.states[k].memory, ybits | (std::uint64_t{o} << ny));
                next[o] = intern(z);
                if (s.states[next[o]].rank >= rank) throw std::logic_error("strategy does not decrease the rank");
            }
        }
        s.states[k].output = std::move(output);
        s.states[k].next = std::move(next);
    }
    return s;
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

std::uint64_t sat_pow(std::uint64_t base, std::size_t exp) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
            return std::numeric_limits<std::uint64_t>::max();
        r *= base;
    }
    return r;
}

struct BudgetExceeded {};

} // namespace

ValidationReport validate_strategy(const Strategy& s, const Formula& spec, const Partition& p, std::size_t horizon,
                                   std::size_t iterations, std::size_t node_budget) {
    if (horizon == 0) throw std::invalid_argument("validate_strategy: horizon must be positive");
    p.validate();
    p.check_covers(spec);
    if (s.output_names != p.outputs || s.obs_names != p.obs)
        throw std::invalid_argument("validate_strategy: strategy does not match the partition");
    const std::size_t ny = p.outputs.size(), no = p.obs.size(), nu = p.unobs.size();
    const std::size_t ni = no + nu;
    if (ny + ni > 40) throw std::invalid_argument("validate_strategy: too many propositions");

    const auto props = p.all();
    ExplicitAutomaton dfa = ltlf_to_dfa(spec, props);
    const bool dense = ny + ni <= 20;
    std::vector<std::uint32_t> table;
    if (dense) table = dfa.dense_table();
    auto step = [&](std::size_t q, std::uint64_t letter) -> std::size_t {
        if (dense) return table[(q << (ny + ni)) + letter];
        return dfa.step(q, letter);
    };
    TraceChecker checker(spec, props);

    ValidationReport report;
    report.horizon_warning = horizon < iterations;
    const std::uint64_t inputs = std::uint64_t{1} << ni;
    const std::uint64_t obs_mask = (std::uint64_t{1} << no) - 1;

    struct Key {
        std::size_t mem, q, depth;
        bool operator<(const Key& o) const { return std::tie(mem, q, depth) < std::tie(o.mem, o.q, o.depth); }
    };
    std::map<Key, std::uint64_t> memo;
    std::vector<std::uint64_t> path;
    bool failed = false;

    auto to_trace = [&](const std::vector<std::uint64_t>& letters) {
        Trace t;
        for (auto l : letters) {
            Assignment a;
            for (std::size_t i = 0; i < props.size(); ++i) a[props[i]] = (l >> i) & 1u;
            t.push_back(std::move(a));
        }
        return t;
    };

    // Number of full-length plays below (mem, q, depth); sets `failed` on a
    // losing play.
    auto rec = [&](auto&& self, std::size_t mem, std::size_t q, std::size_t depth) -> std::uint64_t {
        Key key{mem, q, depth};
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        if (++report.nodes > node_budget) throw BudgetExceeded{};
        const std::uint64_t y = s.output_bits(mem);
        std::uint64_t plays = 0;
        for (std::uint64_t x = 0; x < inputs; ++x) {
            const std::uint64_t letter = y | (x << ny);
            const std::size_t q2 = step(q, letter);
            path.push_back(letter);
            if (dfa.is_accepting(q2)) {
                ++report.confirmed;
                if (!checker.holds(path)) {
                    report.status = ValidationStatus::Invalid;
                    report.message = "automaton and trace evaluator disagree";
                    report.counterexample = to_trace(path);
                    failed = true;
                    return 0;
                }
                plays = sat_add(plays, sat_pow(inputs, horizon - depth - 1));
            } else if (depth + 1 == horizon) {
                report.status = ValidationStatus::Invalid;
                report.message = "play without a satisfying prefix";
                report.counterexample = to_trace(path);
                failed = true;
                return 0;
            } else {
                const std::size_t mem2 = s.states[mem].next[x & obs_mask];
                plays = sat_add(plays, self(self, mem2, q2, depth + 1));
                if (failed) return 0;
            }
            path.pop_back();
        }
        memo.emplace(key, plays);
        return plays;
    };

    try {
        report.plays = rec(rec, s.initial, dfa.initial(), 0);
    } catch (const BudgetExceeded&) {
        report.status = ValidationStatus::Skipped;
        report.message = "node budget exceeded";
        report.plays = 0;
    }
    return report;
}

} // namespace ltlfpo
