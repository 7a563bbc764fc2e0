#include <random>

#include "doctest.h"

#include "ltlfpo/errors.hpp"
#include "ltlfpo/formula.hpp"
#include "ltlfpo/parser.hpp"
#include "ltlfpo/partition.hpp"
#include "ltlfpo/trace.hpp"
#include "oracles.hpp"

using namespace ltlfpo;
using F = Formula;

namespace {

const std::vector<std::string> kProps{"a", "b", "c"};

Trace tr(std::initializer_list<Assignment> letters) { return Trace(letters); }

} // namespace

TEST_SUITE("ltlf") {

TEST_CASE("parser builds the expected trees") {
    CHECK(parse_formula("G(a -> X b)") == F::globally(F::implies(F::prop("a"), F::next(F::prop("b")))));
    CHECK(parse_formula("true U p") == F::until(F::tt(), F::prop("p")));
    CHECK(parse_formula("a U b U c") == F::until(F::prop("a"), F::until(F::prop("b"), F::prop("c"))));
    CHECK(parse_formula("a -> b -> c") == F::implies(F::prop("a"), F::implies(F::prop("b"), F::prop("c"))));
    CHECK(parse_formula("a | b & c") == F::disj(F::prop("a"), F::conj(F::prop("b"), F::prop("c"))));
    CHECK(parse_formula("!a U b") == F::until(F::negation(F::prop("a")), F::prop("b")));
    CHECK(parse_formula("a <-> b | c") == F::iff(F::prop("a"), F::disj(F::prop("b"), F::prop("c"))));
    CHECK(parse_formula("WX F a R b") == F::release(F::weak_next(F::eventually(F::prop("a"))), F::prop("b")));
    CHECK(parse_formula("# header\n  a # trailing\n") == F::prop("a"));
    CHECK(parse_formula("Xa") == F::prop("Xa"));
}

TEST_CASE("parse errors carry positions") {
    for (const char* bad : {"a U", "(a", "a b", "", "a & & b", "a $ b", "G"})
        CHECK_THROWS_AS(parse_formula(bad), ParseError);
    try {
        parse_formula("a &\n  )");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 3);
    }
}

TEST_CASE("printing round-trips") {
    std::mt19937_64 rng(1);
    for (int k = 0; k < 500; ++k) {
        F f = oracle::random_formula(rng, kProps, 4);
        CHECK(parse_formula(f.to_string()) == f);
    }
}

TEST_CASE("negation normal form") {
    F p = F::prop("p"), a = F::prop("a"), b = F::prop("b");
    CHECK(to_nnf(F::negation(F::next(p))) == F::weak_next(F::negation(p)));
    CHECK(to_nnf(F::negation(F::until(a, b))) == F::release(F::negation(a), F::negation(b)));
    CHECK(to_nnf(F::globally(p)) == F::release(F::ff(), p));
    CHECK(to_nnf(F::eventually(p)) == F::until(F::tt(), p));
    std::mt19937_64 rng(2);
    for (int k = 0; k < 300; ++k) {
        F f = oracle::random_formula(rng, kProps, 4);
        F n = to_nnf(f);
        CHECK(is_nnf(n));
        CHECK(to_nnf(n) == n);
    }
}

TEST_CASE("eval_trace basics") {
    F p = F::prop("p"), a = F::prop("a"), b = F::prop("b");
    CHECK_FALSE(eval_trace(F::next(p), tr({{{"p", false}}})));
    CHECK(eval_trace(F::weak_next(p), tr({{{"p", false}}})));
    CHECK(eval_trace(F::until(a, b), tr({{{"a", true}, {"b", false}}, {{"a", true}, {"b", true}}})));
    CHECK_FALSE(eval_trace(F::until(a, b), tr({{{"a", true}, {"b", false}}})));
    CHECK(eval_trace(F::release(a, b), tr({{{"a", false}, {"b", true}}})));
    CHECK_FALSE(eval_trace(F::release(a, b), tr({{{"a", true}, {"b", false}}})));
    CHECK(eval_trace(F::globally(p), tr({{{"p", true}}, {{"p", true}}})));
    CHECK_THROWS_AS(eval_trace(p, Trace{}), std::invalid_argument);
    CHECK_THROWS_AS(eval_trace(p, tr({{{"q", true}}})), std::invalid_argument);
}

TEST_CASE("normal form and negation preserve the semantics") {
    // Exhaustive over traces of length <= 4 on three propositions.
    std::mt19937_64 rng(3);
    for (int k = 0; k < 40; ++k) {
        F f = oracle::random_formula(rng, kProps, 4);
        F n = to_nnf(f), neg = to_nnf(F::negation(f));
        oracle::for_each_word(3, 1, 4, [&](const oracle::Word& w) {
            Trace t = oracle::to_trace(kProps, w);
            bool v = eval_trace(f, t);
            CHECK(eval_trace(n, t) == v);
            CHECK(eval_trace(neg, t) == !v);
        });
    }
}

TEST_CASE("compiled checker agrees with eval_trace") {
    std::mt19937_64 rng(4);
    for (int k = 0; k < 100; ++k) {
        F f = oracle::random_formula(rng, kProps, 4);
        TraceChecker check(f, kProps);
        oracle::for_each_word(3, 1, 3, [&](const oracle::Word& w) {
            CHECK(check.holds(w) == eval_trace(f, oracle::to_trace(kProps, w)));
        });
    }
}

TEST_CASE("formula queries") {
    F f = parse_formula("G(a -> X b) & F c");
    CHECK(f.props() == std::set<std::string>{"a", "b", "c"});
    CHECK(f.size() == 8);
    CHECK(F::conj_all({}) == F::tt());
    CHECK(F::disj_all({}) == F::ff());
    CHECK(f.hash() == parse_formula(f.to_string()).hash());
}

TEST_CASE("partition files") {
    Partition p = parse_partition("# c\ninputs: a b u\nunobservables: u\noutputs: y z\n");
    CHECK(p.obs == std::vector<std::string>{"a", "b"});
    CHECK(p.unobs == std::vector<std::string>{"u"});
    CHECK(p.outputs == std::vector<std::string>{"y", "z"});
    CHECK(p.all() == std::vector<std::string>{"y", "z", "a", "b", "u"});
    CHECK(parse_partition(p.to_text()).all() == p.all());

    Partition q = parse_partition(".inputs: a\n.outputs: y\n");
    CHECK(q.unobs.empty());
    CHECK(parse_partition("inputs: a\nunobservables: u\noutputs: y\n").unobs == std::vector<std::string>{"u"});
    CHECK_THROWS_AS(parse_partition("inputs: a\noutputs: a\n"), std::exception);
    CHECK_THROWS_AS(parse_partition("colors: red\n"), ParseError);

    CHECK_NOTHROW(p.check_covers(parse_formula("a U y")));
    CHECK_THROWS_AS(p.check_covers(parse_formula("a U w")), std::invalid_argument);
}

}
