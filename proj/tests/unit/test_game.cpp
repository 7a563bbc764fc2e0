#include <random>

#include "doctest.h"

#include "ltlfpo/bench.hpp"
#include "ltlfpo/errors.hpp"
#include "ltlfpo/game.hpp"
#include "ltlfpo/ltlf2aut.hpp"
#include "ltlfpo/parser.hpp"
#include "ltlfpo/pipeline.hpp"
#include "ltlfpo/strategy.hpp"
#include "ltlfpo/symbolic.hpp"
#include "oracles.hpp"

using namespace ltlfpo;
using bdd::Bdd;

namespace {

Partition partition(std::vector<std::string> obs, std::vector<std::string> unobs, std::vector<std::string> outputs) {
    Partition p;
    p.obs = std::move(obs);
    p.unobs = std::move(unobs);
    p.outputs = std::move(outputs);
    return p;
}

Verdict run(const Formula& f, const Partition& p, Approach a) {
    SynthOptions o;
    o.approach = a;
    o.extract = false;
    o.timeout_s = 60;
    return synthesize(f, p, o).verdict;
}

} // namespace

TEST_SUITE("game") {

TEST_CASE("trivial accepting sets") {
    auto p = partition({"x"}, {}, {"y"});
    SymbolicDFA g = make_game(1, p, Approach::Belief);
    auto& m = *g.manager;
    g.transition = {m.var(g.state_vars[0])};
    g.accepting = m.one();
    GameResult r = solve_reachability(g);
    CHECK(r.verdict == Verdict::Realizable);
    CHECK(r.iterations == 0);

    g.accepting = m.zero();
    CHECK(solve_reachability(g).verdict == Verdict::Unrealizable);
}

TEST_CASE("output forces the accepting state") {
    // z' = y; accepting = z. The system must output y = 1.
    auto p = partition({"x"}, {}, {"y"});
    SymbolicDFA g = make_game(1, p, Approach::Belief);
    auto& m = *g.manager;
    Bdd z = m.var(g.state_vars[0]);
    g.transition = {z | m.var("y")};
    g.accepting = z;
    GameResult r = solve_reachability(g);
    REQUIRE(r.verdict == Verdict::Realizable);
    CHECK(r.iterations == 1);
    Strategy s = extract_strategy(g, r);
    CHECK(s.states[s.initial].output == std::vector<bool>{true});
    CHECK(s.output(s.initial) == Assignment{{"y", true}});
    for (auto next : s.states[s.initial].next) CHECK(s.states[next].rank == 0);
    CHECK(s.to_json()["states"].size() == s.states.size());
}

TEST_CASE("accepting initial state gives a rank-0 strategy") {
    auto p = partition({"x"}, {}, {"y"});
    SymbolicDFA g = make_game(1, p, Approach::Belief);
    auto& m = *g.manager;
    g.transition = {m.zero()};
    g.accepting = ~m.var(g.state_vars[0]);
    GameResult r = solve_reachability(g);
    REQUIRE(r.verdict == Verdict::Realizable);
    Strategy s = extract_strategy(g, r);
    CHECK(s.states.size() == 1);
    CHECK(s.states[0].rank == 0);
    CHECK_THROWS_AS(extract_strategy(g, GameResult{}), std::invalid_argument);
}

TEST_CASE("fixpoint layers grow monotonically") {
    for (int n : {2, 3}) {
        auto inst = gen_moving_target(n);
        auto d = ltlf_to_dfa(inst.formula, inst.partition.all());
        SymbolicDFA g = belief_construction(d, inst.partition);
        GameResult r = solve_reachability(g);
        CHECK(r.verdict == Verdict::Realizable);
        CHECK(r.layers.size() == r.iterations + 1);
        for (std::size_t k = 1; k < r.layers.size(); ++k) {
            CHECK(r.layers[k - 1].implies(r.layers[k]));
            CHECK(r.layers[k - 1] != r.layers[k]);
        }
        CHECK(r.winning == r.layers.back());
        CHECK(r.iterations <= (std::size_t{1} << std::min<std::size_t>(g.state_vars.size(), 60)));
    }
}

TEST_CASE("coin-game n=3 is unrealizable") {
    auto inst = gen_coin_game(3);
    auto d = ltlf_to_dfa(inst.formula, inst.partition.all());
    CHECK(solve_reachability(belief_construction(d, inst.partition)).verdict == Verdict::Unrealizable);
}

TEST_CASE("oracle examples") {
    auto p = partition({}, {}, {"y"});
    CHECK(oracle_solve_explicit(parse_formula("F y"), p).verdict == Verdict::Realizable);
    auto pu = partition({}, {"u"}, {"y"});
    CHECK(oracle_solve_explicit(parse_formula("F u"), pu).verdict == Verdict::Unrealizable);
    auto coin = gen_coin_game(4);
    CHECK(oracle_solve_explicit(coin.formula, coin.partition).verdict == Verdict::Realizable);
    CHECK_THROWS_AS(oracle_solve_explicit(coin.formula, coin.partition, 3), ResourceError);
}

TEST_CASE("random games: constructions, explicit oracle and game-tree search agree") {
    std::mt19937_64 rng(41);
    auto p = partition({"o"}, {"u"}, {"y"});
    int realizable = 0, checked = 0;
    for (int k = 0; k < 60; ++k) {
        Formula f = oracle::random_formula(rng, p.all(), 3);
        CAPTURE(f.to_string());
        OracleResult o = oracle_solve_explicit(f, p);
        for (Approach a : {Approach::Belief, Approach::Projection, Approach::Quantified})
            CHECK(run(f, p, a) == o.verdict);
        if (o.beliefs <= 6) {
            CHECK(oracle::bounded_realizable(f, p, o.beliefs) == (o.verdict == Verdict::Realizable));
            ++checked;
        }
        realizable += o.verdict == Verdict::Realizable;
    }
    CHECK(realizable > 5);
    CHECK(realizable < 55);
    CHECK(checked > 20);
}

TEST_CASE("without hidden inputs the verdict is full-observability realizability") {
    std::mt19937_64 rng(42);
    auto p = partition({"a", "b"}, {}, {"y"});
    for (int k = 0; k < 30; ++k) {
        Formula f = oracle::random_formula(rng, p.all(), 3);
        CAPTURE(f.to_string());
        OracleResult o = oracle_solve_explicit(f, p);
        REQUIRE(o.beliefs <= o.dfa_states);
        CHECK(run(f, p, Approach::Belief) == o.verdict);
        if (o.beliefs <= 5) CHECK(oracle::bounded_realizable(f, p, o.beliefs) == (o.verdict == Verdict::Realizable));
    }
}

TEST_CASE("extracted strategies decrease the rank and validate") {
    struct Case {
        BenchInstance inst;
        std::size_t horizon;
    };
    for (auto [inst, horizon] : {Case{gen_moving_target(2), 6}, Case{gen_moving_target(3), 8}, Case{gen_coin_game(4), 10}}) {
        CAPTURE(inst.name());
        auto d = ltlf_to_dfa(inst.formula, inst.partition.all());
        SymbolicDFA g = belief_construction(d, inst.partition);
        GameResult r = solve_reachability(g);
        REQUIRE(r.verdict == Verdict::Realizable);
        Strategy s = extract_strategy(g, r);
        for (const auto& st : s.states) {
            CHECK(st.next.size() == (std::size_t{1} << s.obs_names.size()));
            if (st.rank == 0) continue;
            for (auto nx : st.next) CHECK(s.states[nx].rank < st.rank);
        }
        ValidationReport v = validate_strategy(s, inst.formula, inst.partition, horizon, r.iterations);
        CHECK(v.status == ValidationStatus::Valid);
        CHECK(v.plays > 0);
        CHECK(v.confirmed > 0);
    }
}

TEST_CASE("validation catches a losing strategy") {
    auto inst = gen_moving_target(2);
    auto d = ltlf_to_dfa(inst.formula, inst.partition.all());
    SymbolicDFA g = belief_construction(d, inst.partition);
    GameResult r = solve_reachability(g);
    Strategy s = extract_strategy(g, r);
    for (auto& st : s.states) std::fill(st.output.begin(), st.output.end(), false);
    ValidationReport v = validate_strategy(s, inst.formula, inst.partition, 6, r.iterations);
    CHECK(v.status == ValidationStatus::Invalid);
    CHECK_FALSE(v.counterexample.empty());

    ValidationReport low = validate_strategy(extract_strategy(g, r), inst.formula, inst.partition, 1, r.iterations);
    CHECK(low.horizon_warning);
}

TEST_CASE("validation reports an exhausted node budget") {
    auto inst = gen_coin_game(4);
    auto d = ltlf_to_dfa(inst.formula, inst.partition.all());
    SymbolicDFA g = belief_construction(d, inst.partition);
    GameResult r = solve_reachability(g);
    Strategy s = extract_strategy(g, r);
    ValidationReport full = validate_strategy(s, inst.formula, inst.partition, 10, r.iterations);
    REQUIRE(full.status == ValidationStatus::Valid);
    REQUIRE(full.nodes > 1);
    ValidationReport cut = validate_strategy(s, inst.formula, inst.partition, 10, r.iterations, full.nodes - 1);
    CHECK(cut.status == ValidationStatus::Skipped);
    CHECK(cut.plays == 0);
}

TEST_CASE("determinism") {
    auto inst = gen_coin_game(4);
    SynthOptions o;
    o.approach = Approach::Belief;
    auto a = synthesize(inst.formula, inst.partition, o);
    auto b = synthesize(inst.formula, inst.partition, o);
    CHECK(a.verdict == b.verdict);
    CHECK(a.stats.iterations == b.stats.iterations);
    REQUIRE(a.strategy);
    CHECK(a.strategy->to_json() == b.strategy->to_json());
}

TEST_CASE("pipeline statistics") {
    auto inst = gen_moving_target(3);
    SynthOptions o;
    o.approach = Approach::Quantified;
    o.instance = inst.name();
    auto r = synthesize(inst.formula, inst.partition, o);
    CHECK(r.stats.csv_row().rfind("moving-target_n3,quantified,", 0) == 0);
    CHECK(r.stats.csv_row().find(",REALIZABLE") != std::string::npos);
    CHECK(RunStats::csv_header() ==
          "instance,approach,explicit_ms,explicit_states,symbolic_ms,dd_nodes,state_vars,iterations,verdict");
    auto j = r.stats.to_json();
    CHECK(j["verdict"] == "REALIZABLE");
    CHECK(j["state_vars"] == r.stats.state_vars);
}

TEST_CASE("timeouts") {
    auto inst = gen_coin_game(5);
    SynthOptions o;
    o.approach = Approach::Projection;
    o.timeout_s = 1e-6;
    CHECK_THROWS_AS(synthesize(inst.formula, inst.partition, o), ResourceError);
}

}
