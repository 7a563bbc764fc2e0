#include "ltlfpo/bench.hpp"

#include <fstream>
#include <random>
#include <stdexcept>

namespace ltlfpo {

namespace {

using F = Formula;

F p(const std::string& name) { return F::prop(name); }
F p(const std::string& base, int i) { return F::prop(base + "_" + std::to_string(i)); }

std::vector<F> props(const std::string& base, int n) {
    std::vector<F> out;
    for (int i = 1; i <= n; ++i) out.push_back(p(base, i));
    return out;
}

std::vector<std::string> names(const std::string& base, int from, int to) {
    std::vector<std::string> out;
    for (int i = from; i <= to; ++i) out.push_back(base + "_" + std::to_string(i));
    return out;
}

F exclusions(const std::vector<F>& xs) {
    std::vector<F> parts;
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j) parts.push_back(F::negation(F::conj(xs[i], xs[j])));
    return F::conj_all(parts);
}

} // namespace

const char* family_name(Family f) {
    switch (f) {
    case Family::MovingTarget: return "moving-target";
    case Family::CoinGame: return "coin-game";
    case Family::PrivatePeek: return "private-peek";
    }
    return "?";
}

std::optional<Family> parse_family(const std::string& name) {
    if (name == "moving-target") return Family::MovingTarget;
    if (name == "coin-game") return Family::CoinGame;
    if (name == "private-peek") return Family::PrivatePeek;
    return std::nullopt;
}

const char* expected_name(Expected e) {
    switch (e) {
    case Expected::Realizable: return "REALIZABLE";
    case Expected::Unrealizable: return "UNREALIZABLE";
    case Expected::Unknown: return "UNKNOWN";
    }
    return "?";
}

std::string BenchInstance::name() const {
    std::string s = std::string(family_name(family)) + "_n" + std::to_string(n);
    if (family == Family::PrivatePeek) s += "_m" + std::to_string(m) + "_s" + std::to_string(seed);
    return s;
}

std::string BenchInstance::header() const {
    return "# family=" + std::string(family_name(family)) + " n=" + std::to_string(n) + " m=" + std::to_string(m) +
           " seed=" + std::to_string(seed) + " expected=" + expected_name(expected) + "\n";
}

std::string BenchInstance::formula_text() const { return header() + formula.to_string() + "\n"; }
std::string BenchInstance::partition_text() const { return header() + partition.to_text(); }

F exactly_one(const std::vector<F>& xs) {
    if (xs.empty()) return F::ff();
    return F::conj(exclusions(xs), F::disj_all(xs));
}

F at_most_one(const std::vector<F>& xs) { return exclusions(xs); }

BenchInstance gen_moving_target(int n) {
    if (n < 2) throw std::invalid_argument("moving-target needs n >= 2");
    auto target = props("target", n);
    auto guess = props("guess", n);
    F hit = p("hit");

    // Every step after the first moves the target to an adjacent position.
    std::vector<F> moves;
    for (int i = 0; i < n; ++i) {
        std::vector<F> from;
        if (i > 0) from.push_back(target[i - 1]);
        if (i + 1 < n) from.push_back(target[i + 1]);
        moves.push_back(F::implies(F::next(target[i]), F::disj_all(from)));
    }
    F move = F::globally(F::implies(F::next(F::tt()), F::conj_all(moves)));

    std::vector<F> hits;
    for (int i = 0; i < n; ++i) hits.push_back(F::globally(F::implies(F::conj(target[i], guess[i]), hit)));

    F assumptions = F::conj_all({F::globally(exactly_one(target)), move, F::conj_all(hits)});
    F guarantee = F::conj(F::globally(exactly_one(guess)), F::eventually(hit));

    BenchInstance inst;
    inst.family = Family::MovingTarget;
    inst.n = n;
    inst.formula = F::implies(assumptions, guarantee);
    inst.partition.obs = {"hit"};
    inst.partition.unobs = names("target", 1, n);
    inst.partition.outputs = names("guess", 1, n);
    inst.expected = Expected::Realizable;
    return inst;
}

BenchInstance gen_coin_game(int n) {
    if (n < 3) throw std::invalid_argument("coin-game needs n >= 3");
    auto coin = props("coin", n);
    auto flip = props("flip", n);
    F swap = p("swap"), valid = p("valid"), heads = p("heads");
    auto at = [&](const std::vector<F>& v, int i) { return v[((i % n) + n) % n]; };

    // The assumptions start with a weak next: a strong one would be violated
    // by every one-letter trace and hand the system a trivial win.
    std::vector<F> tails;
    for (const F& c : coin) tails.push_back(F::negation(c));
    F init = exactly_one(tails);
    F valid_spec = F::weak_next(F::globally(F::iff(valid, exactly_one(flip))));

    // Next value of coin i after a valid move: a flip of coin i toggles it;
    // a flip of a neighbour with swap set exchanges coin i with the coin on
    // the far side of that neighbour; otherwise it keeps its value.
    std::vector<F> updates;
    for (int i = 0; i < n; ++i) {
        F flipped = F::next(at(flip, i));
        F by_right = F::conj(F::next(at(flip, i + 1)), F::next(swap));
        F by_left = F::conj(F::next(at(flip, i - 1)), F::next(swap));
        F next_coin = F::next(at(coin, i));
        F rule = F::conj_all({
            F::implies(flipped, F::iff(next_coin, F::negation(at(coin, i)))),
            F::implies(by_right, F::iff(next_coin, at(coin, i + 2))),
            F::implies(by_left, F::iff(next_coin, at(coin, i - 2))),
            F::implies(F::negation(F::disj_all({flipped, by_right, by_left})), F::iff(next_coin, at(coin, i))),
        });
        updates.push_back(F::globally(F::implies(F::next(valid), rule)));
    }

    std::vector<F> flipped_heads;
    for (int i = 0; i < n; ++i) flipped_heads.push_back(F::conj(flip[i], coin[i]));
    F heads_spec = F::weak_next(F::globally(F::implies(valid, F::iff(heads, F::disj_all(flipped_heads)))));

    F assumptions = F::conj_all({init, valid_spec, heads_spec, F::conj_all(updates)});
    BenchInstance inst;
    inst.family = Family::CoinGame;
    inst.n = n;
    inst.formula = F::implies(assumptions, F::eventually(F::conj_all(coin)));
    inst.partition.obs = {"valid", "heads"};
    inst.partition.unobs = names("coin", 1, n);
    inst.partition.unobs.push_back("swap");
    inst.partition.outputs = names("flip", 1, n);
    inst.expected = n == 3 ? Expected::Unrealizable : Expected::Realizable;
    return inst;
}

BenchInstance gen_private_peek(int n, int m, std::uint64_t seed) {
    if (n < 1 || m < 1) throw std::invalid_argument("private-peek needs n >= 1 and m >= 1");
    std::mt19937_64 rng(seed);
    auto draw = [&rng] { return (rng() >> 63) != 0; };

    std::vector<F> plates;
    for (const char* side : {"plate_e", "plate_s"})
        for (int i = 1; i <= n; ++i) plates.push_back(p(side, i));

    auto random_cube = [&] {
        std::vector<F> lits;
        for (const F& v : plates) {
            if (!draw()) continue;
            lits.push_back(draw() ? F::negation(v) : v);
        }
        return F::conj_all(lits);
    };

    auto player = [&](const std::string& who) {
        auto plate = props("plate_" + who, n);
        F turn = p("turn_" + who);
        F in = F::conj_all(plate);
        std::vector<F> wait, changes;
        for (int i = 0; i < n; ++i) {
            wait.push_back(F::globally(F::implies(F::next(F::negation(turn)), F::iff(F::next(plate[i]), plate[i]))));
            changes.push_back(F::iff(F::next(plate[i]), F::negation(plate[i])));
        }
        F move = F::globally(F::implies(F::next(turn), at_most_one(changes)));
        return std::vector<F>{in, F::conj_all(wait), move};
    };

    // Cubes are drawn for all environment holes first, then the system's.
    std::vector<F> peek_e, peek_s;
    for (int j = 1; j <= m; ++j) peek_e.push_back(F::globally(F::iff(p("peek_e", j), random_cube())));
    for (int j = 1; j <= m; ++j) peek_s.push_back(F::globally(F::iff(p("peek_s", j), random_cube())));

    F turn_s = p("turn_s"), turn_e = p("turn_e");
    F turn = F::conj_all({F::negation(turn_e), F::negation(turn_s), F::next(turn_s),
                          F::next(F::globally(F::iff(turn_s, F::negation(turn_e)))),
                          F::next(F::globally(F::implies(F::next(F::tt()), F::iff(F::next(turn_s), turn_e))))});

    std::vector<F> env_safe, sys_peeks;
    for (int j = 1; j <= m; ++j) {
        env_safe.push_back(F::implies(turn_e, F::negation(p("peek_e", j))));
        sys_peeks.push_back(p("peek_s", j));
    }
    F goal = F::until(F::conj_all(env_safe), F::conj(turn_s, F::disj_all(sys_peeks)));

    auto env = player("e");
    auto sys = player("s");
    F assumptions = F::conj_all({env[0], env[1], env[2], F::conj_all(peek_e), F::conj_all(peek_s)});
    F guarantees = F::conj_all({turn, sys[0], sys[1], sys[2], goal});

    BenchInstance inst;
    inst.family = Family::PrivatePeek;
    inst.n = n;
    inst.m = m;
    inst.seed = seed;
    inst.formula = F::implies(assumptions, guarantees);
    const int hidden = (n + 1) / 2;
    inst.partition.unobs = names("peek_e", 1, m);
    for (auto& s : names("plate_e", 1, hidden)) inst.partition.unobs.push_back(s);
    inst.partition.obs = names("plate_e", hidden + 1, n);
    for (auto& s : names("peek_s", 1, m)) inst.partition.obs.push_back(s);
    inst.partition.outputs = {"turn_s", "turn_e"};
    for (auto& s : names("plate_s", 1, n)) inst.partition.outputs.push_back(s);
    inst.expected = Expected::Unknown;
    return inst;
}

BenchInstance generate(Family family, int n, int m, std::uint64_t seed) {
    switch (family) {
    case Family::MovingTarget: return gen_moving_target(n);
    case Family::CoinGame: return gen_coin_game(n);
    case Family::PrivatePeek: return gen_private_peek(n, m, seed);
    }
    throw std::invalid_argument("unknown family");
}

std::pair<std::filesystem::path, std::filesystem::path> write_instance(const BenchInstance& inst,
                                                                       const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto f = dir / (inst.name() + ".ltlf");
    auto part = dir / (inst.name() + ".part");
    auto write = [](const std::filesystem::path& path, const std::string& text) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << text;
    };
    write(f, inst.formula_text());
    write(part, inst.partition_text());
    return {f, part};
}

} // namespace ltlfpo
