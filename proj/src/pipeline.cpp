#include "ltlfpo/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "ltlfpo/automaton.hpp"

namespace ltlfpo {

namespace {

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fixed(double v) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(3);
    out << v;
    return out.str();
}

} // namespace

std::size_t peak_memory_kb() {
    std::ifstream in("/proc/self/status");
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("VmHWM:", 0) == 0) return std::stoul(line.substr(6));
    }
    return 0;
}

std::string RunStats::csv_header() {
    return "instance,approach,explicit_ms,explicit_states,symbolic_ms,dd_nodes,state_vars,iterations,verdict";
}

std::string RunStats::csv_row() const {
    std::ostringstream out;
    out << instance << "," << approach << "," << fixed(explicit_ms) << "," << explicit_states << ","
        << fixed(symbolic_ms) << "," << dd_nodes << "," << state_vars << "," << iterations << ","
        << (verdict ? verdict_name(*verdict) : "");
    return out.str();
}

nlohmann::json RunStats::to_json() const {
    nlohmann::json j = {{"instance", instance},
                        {"approach", approach},
                        {"explicit_ms", explicit_ms},
                        {"explicit_states", explicit_states},
                        {"symbolic_ms", symbolic_ms},
                        {"dd_nodes", dd_nodes},
                        {"state_vars", state_vars},
                        {"iterations", iterations},
                        {"peak_memory_kb", peak_memory_kb}};
    j["verdict"] = verdict ? nlohmann::json(verdict_name(*verdict)) : nlohmann::json(nullptr);
    if (!construction.is_null()) j["construction"] = construction;
    return j;
}

SynthResult synthesize(const Formula& spec, const Partition& p, const SynthOptions& options) {
    p.validate();
    p.check_covers(spec);
    const Limits limits = Limits::with_timeout(options.timeout_s, options.state_budget);
    const auto alphabet = p.all();

    SynthResult result;
    RunStats& stats = result.stats;
    stats.instance = options.instance;
    stats.approach = approach_name(options.approach);

    // Explicit phase.
    auto start = Clock::now();
    std::optional<ExplicitAutomaton> automaton;
    switch (options.approach) {
    case Approach::Belief:
        automaton = ltlf_to_dfa(spec, alphabet, nullptr, limits);
        break;
    case Approach::Projection:
        // The subset construction starts from the empty prefix, which the
        // automaton of the negation must accept: no strategy has won before
        // the first step.
        automaton = accept_empty_word(negated_spec_nfa(spec, alphabet, options.nfa_mode, nullptr, limits));
        break;
    case Approach::Quantified:
        automaton = quantified_construction(ltlf_to_dfa(spec, alphabet, nullptr, limits), p, limits);
        break;
    }
    stats.explicit_ms = ms_since(start);
    stats.explicit_states = automaton->num_states();
    if (options.keep_dot) result.dot = automaton->to_dot(options.instance);

    // Symbolic phase.
    start = Clock::now();
    limits.check_deadline();
    SymbolicDFA game = options.approach == Approach::Belief       ? belief_construction(*automaton, p, limits)
                       : options.approach == Approach::Projection ? projection_construction(*automaton, p, limits)
                                                                  : log_encode(*automaton, p, limits);
    automaton.reset();
    GameResult solved = solve_reachability(game, limits);
    stats.symbolic_ms = ms_since(start);
    stats.dd_nodes = game.manager->node_count([&] {
        auto all = game.transition;
        all.push_back(game.accepting);
        return all;
    }());
    stats.state_vars = game.state_vars.size();
    stats.iterations = solved.iterations;
    stats.verdict = solved.verdict;
    stats.construction = game.stats();
    result.verdict = solved.verdict;

    if (solved.verdict == Verdict::Realizable && (options.extract || options.validate_horizon)) {
        result.strategy = extract_strategy(game, solved);
        if (options.validate_horizon) {
            result.validation =
                validate_strategy(*result.strategy, spec, p, *options.validate_horizon, solved.iterations);
            if (result.validation->status == ValidationStatus::Invalid)
                throw ValidationError("strategy validation failed: " + result.validation->message);
        }
    }
    stats.peak_memory_kb = peak_memory_kb();
    return result;
}

} // namespace ltlfpo
