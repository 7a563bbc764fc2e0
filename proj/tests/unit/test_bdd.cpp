#include <map>
#include <random>

#include "doctest.h"

#include "ltlfpo/bdd.hpp"
#include "ltlfpo/errors.hpp"

using namespace ltlfpo::bdd;

namespace {

// Functions over four variables as 16-bit truth tables: bit a is the value
// on the assignment whose variable i is bit i of a.
using Table = std::uint16_t;

Table var_table(int i) {
    Table t = 0;
    for (int a = 0; a < 16; ++a)
        if ((a >> i) & 1) t |= Table(1u << a);
    return t;
}

Table table_of(Manager& m, const Bdd& f) {
    Table t = 0;
    for (int a = 0; a < 16; ++a) {
        std::vector<bool> values(m.var_count(), false);
        for (int i = 0; i < 4; ++i) values[i] = (a >> i) & 1;
        if (m.evaluate_dense(f, values)) t |= Table(1u << a);
    }
    return t;
}

struct Pair {
    Bdd f;
    Table t;
};

Pair random_function(Manager& m, std::mt19937_64& rng, int depth) {
    if (depth == 0 || rng() % 5 == 0) {
        int i = static_cast<int>(rng() % 4);
        return {m.var(Var(i)), var_table(i)};
    }
    Pair a = random_function(m, rng, depth - 1), b = random_function(m, rng, depth - 1);
    switch (rng() % 5) {
    case 0: return {a.f & b.f, Table(a.t & b.t)};
    case 1: return {a.f | b.f, Table(a.t | b.t)};
    case 2: return {a.f ^ b.f, Table(a.t ^ b.t)};
    case 3: return {~a.f, Table(~a.t)};
    default: {
        Pair c = random_function(m, rng, depth - 1);
        return {m.ite(a.f, b.f, c.f), Table((a.t & b.t) | (~a.t & c.t))};
    }
    }
}

Manager& four_vars(Manager& m) {
    for (const char* n : {"a", "b", "c", "d"}) m.new_var(n);
    return m;
}

} // namespace

TEST_SUITE("bdd") {

TEST_CASE("constants and literals") {
    Manager m;
    four_vars(m);
    CHECK(m.zero().is_zero());
    CHECK(m.one().is_one());
    CHECK((m.var("a") & ~m.var("a")).is_zero());
    CHECK((m.var("a") | ~m.var("a")).is_one());
    CHECK(m.literal(0, false) == ~m.var(0));
    CHECK(m.var("b").var() == 1);
    CHECK(m.var("b").low().is_zero());
    CHECK(m.var("b").high().is_one());
}

TEST_CASE("canonicity against truth tables") {
    // Two functions get the same handle exactly when their tables agree.
    Manager m;
    four_vars(m);
    std::mt19937_64 rng(11);
    std::map<Table, NodeId> seen;
    for (int k = 0; k < 3000; ++k) {
        Pair p = random_function(m, rng, 5);
        REQUIRE(table_of(m, p.f) == p.t);
        auto [it, fresh] = seen.emplace(p.t, p.f.id());
        CHECK(it->second == p.f.id());
    }
    CHECK(seen.size() > 200);
}

TEST_CASE("quantification matches cofactor tables") {
    Manager m;
    four_vars(m);
    std::mt19937_64 rng(5);
    for (int k = 0; k < 300; ++k) {
        Pair p = random_function(m, rng, 5);
        Var v = Var(rng() % 4);
        Bdd lo = m.cofactor(p.f, v, false), hi = m.cofactor(p.f, v, true);
        Table tlo = 0, thi = 0;
        for (int a = 0; a < 16; ++a) {
            int a0 = a & ~(1 << v), a1 = a | (1 << v);
            if ((p.t >> a0) & 1) tlo |= Table(1u << a);
            if ((p.t >> a1) & 1) thi |= Table(1u << a);
        }
        CHECK(table_of(m, lo) == tlo);
        CHECK(table_of(m, hi) == thi);
        Bdd cube = m.var(v);
        CHECK(m.exists(cube, p.f) == (lo | hi));
        CHECK(m.forall(cube, p.f) == (lo & hi));
        std::vector<Var> vs{v};
        CHECK(m.quantify(Quantifier::Exists, vs, p.f) == (lo | hi));
        CHECK(m.restrict(p.f, vs, {true}) == hi);
    }
}

TEST_CASE("compose substitutes functions simultaneously") {
    Manager m;
    four_vars(m);
    Bdd a = m.var("a"), b = m.var("b"), c = m.var("c");
    std::vector<std::optional<Bdd>> by_var(m.var_count());
    by_var[0] = b;
    by_var[1] = a;
    CHECK(m.compose(a & ~b, by_var) == (b & ~a));
    by_var[1] = b & c;
    CHECK(m.compose(a | b, by_var) == b);
    std::mt19937_64 rng(3);
    for (int k = 0; k < 200; ++k) {
        Pair f = random_function(m, rng, 4), g = random_function(m, rng, 4);
        std::vector<std::optional<Bdd>> sub(m.var_count());
        sub[2] = g.f;
        CHECK(m.compose(f.f, sub) == m.ite(g.f, m.cofactor(f.f, 2, true), m.cofactor(f.f, 2, false)));
    }
}

TEST_CASE("substitute renames and rejects collisions") {
    Manager m;
    four_vars(m);
    Bdd f = m.var("a") & ~m.var("c");
    CHECK(m.substitute(f, {{0, 1}, {2, 3}}) == (m.var("b") & ~m.var("d")));
    CHECK_THROWS_AS(m.substitute(f, {{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(m.substitute(f, {{0, 1}, {2, 1}}), std::invalid_argument);
}

TEST_CASE("support, node count, evaluation") {
    Manager m;
    four_vars(m);
    Bdd f = (m.var("a") & m.var("c")) | m.var("d");
    CHECK(m.support(f) == std::vector<Var>{0, 2, 3});
    CHECK(m.node_count(m.var("a")) == 3);
    CHECK(m.node_count(f) == 5);
    CHECK(m.evaluate(f, {{0, true}, {2, true}, {3, false}}));
    CHECK_THROWS_AS(m.evaluate(f, {{0, true}}), std::invalid_argument);
}

TEST_CASE("pick_min prefers zeros in variable order") {
    Manager m;
    four_vars(m);
    std::vector<Var> all{0, 1, 2, 3};
    CHECK(m.pick_min(m.var("a") | m.var("b"), all) == std::vector<bool>{false, true, false, false});
    CHECK(m.pick_min(m.one(), all) == std::vector<bool>(4, false));
    CHECK_THROWS_AS(m.pick_min(m.zero(), all), std::invalid_argument);
    std::vector<Var> only_a{0};
    CHECK_THROWS_AS(m.pick_min(m.var("b"), only_a), std::invalid_argument);
}

TEST_CASE("cubes cover the function disjointly") {
    Manager m;
    four_vars(m);
    std::mt19937_64 rng(8);
    for (int k = 0; k < 100; ++k) {
        Pair p = random_function(m, rng, 5);
        Table covered = 0;
        m.for_each_cube(p.f, [&](const std::vector<std::pair<Var, bool>>& lits) {
            Bdd c = m.one();
            for (auto [v, pos] : lits) c &= m.literal(v, pos);
            Table t = table_of(m, c);
            CHECK((covered & t) == 0);
            covered |= t;
        });
        CHECK(covered == p.t);
    }
    CHECK(m.to_sop(m.zero()) == "false");
    CHECK(m.to_sop(m.one()) == "true");
    CHECK(m.to_sop(m.var("a") & ~m.var("b")) == "a & !b");
}

TEST_CASE("import maps between managers") {
    Manager src, dst;
    four_vars(src);
    dst.new_var("x");
    Var b2 = dst.new_var("b"), a2 = dst.new_var("a");
    Bdd f = src.var("a") & ~src.var("b");
    std::vector<std::optional<Var>> map(src.var_count());
    map[0] = a2;
    map[1] = b2;
    CHECK(dst.import(f, map) == (dst.var("a") & ~dst.var("b")));
    CHECK_THROWS_AS(dst.import(src.var("c"), map), std::invalid_argument);
    CHECK_THROWS_AS(dst.var("a") & src.var("a"), std::invalid_argument);
}

TEST_CASE("node budget raises a resource error") {
    Manager m;
    ltlfpo::Limits limits;
    limits.max_nodes = 1000;
    m.set_limits(limits);
    std::vector<Var> vs;
    for (int i = 0; i < 40; ++i) vs.push_back(m.new_var("v" + std::to_string(i)));
    // Hidden-weighted-bit style blowup: x_i <-> x_{i+20} for all i.
    CHECK_THROWS_AS(
        [&] {
            Bdd f = m.one();
            for (int i = 0; i < 20; ++i) f &= ~(m.var(vs[i]) ^ m.var(vs[i + 20]));
            return f;
        }(),
        ltlfpo::ResourceError);
}

TEST_CASE("errors on unknown variables") {
    Manager m;
    four_vars(m);
    CHECK_THROWS_AS(m.var(7), std::out_of_range);
    CHECK_THROWS_AS(m.var("zz"), std::out_of_range);
    CHECK_THROWS_AS(m.new_var("a"), std::invalid_argument);
}

}
