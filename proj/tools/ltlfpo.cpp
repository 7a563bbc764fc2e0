// Command-line front end: synthesis, batch runs and benchmark generation.
//
//   ltlfpo synth spec.ltlf spec.part --approach belief --validate 12
//   ltlfpo batch bench/ --approach all --jobs 4 --stats-out runs.csv
//   ltlfpo gen coin-game --n 4 --out bench/
//
// Exit status: 0 realizable, 1 unrealizable, 2 usage/parse/other errors,
// 3 timeout, 4 state or node budget (memout), 5 failed validation.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <new>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "ltlfpo/bench.hpp"
#include "ltlfpo/errors.hpp"
#include "ltlfpo/parser.hpp"
#include "ltlfpo/partition.hpp"
#include "ltlfpo/pipeline.hpp"

namespace fs = std::filesystem;
using namespace ltlfpo;

namespace {

enum Exit { kRealizable = 0, kUnrealizable = 1, kError = 2, kTimeout = 3, kMemout = 4, kInvalid = 5 };

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void append_csv(const fs::path& path, const std::vector<std::string>& rows) {
    bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    if (fresh) out << RunStats::csv_header() << "\n";
    for (const auto& r : rows) out << r << "\n";
}

struct Outcome {
    int code = kError;
    std::string message;
    std::optional<SynthResult> result;
};

Outcome run_one(const fs::path& formula_path, const fs::path& partition_path, const SynthOptions& options) {
    Outcome o;
    try {
        Formula spec = [&] {
            try {
                return parse_formula(read_file(formula_path));
            } catch (const ParseError& e) {
                throw ParseError(formula_path.string() + ": " + e.what(), e.line(), e.column());
            }
        }();
        Partition part = parse_partition(read_file(partition_path));
        o.result = synthesize(spec, part, options);
        o.code = o.result->verdict == Verdict::Realizable ? kRealizable : kUnrealizable;
    } catch (const ResourceError& e) {
        o.code = e.kind() == ResourceKind::Timeout ? kTimeout : kMemout;
        o.message = e.kind() == ResourceKind::Timeout ? "timeout" : std::string("memout: ") + e.what();
    } catch (const ValidationError& e) {
        o.code = kInvalid;
        o.message = e.what();
    } catch (const std::bad_alloc&) {
        o.code = kMemout;
        o.message = "memout: out of memory";
    } catch (const std::exception& e) {
        o.code = kError;
        o.message = e.what();
    }
    return o;
}

std::optional<NfaMode> parse_nfa_mode(const std::string& s) {
    if (s == "direct") return NfaMode::Direct;
    if (s == "reverse-canonical") return NfaMode::ReverseCanonical;
    return std::nullopt;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"LTLf synthesis under partial observability"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "decide realizability of one formula");
    std::string formula_file, partition_file, approach = "belief", nfa_mode = "reverse-canonical";
    double timeout = 300;
    std::size_t state_budget = std::size_t{1} << 20;
    std::string strategy_out, stats_out, stats_json, dot_out;
    std::optional<std::size_t> validate;
    synth->add_option("formula", formula_file, "LTLf formula file")->required()->check(CLI::ExistingFile);
    synth->add_option("partition", partition_file, "partition file")->required()->check(CLI::ExistingFile);
    synth->add_option("--approach", approach, "belief, projection or quantified")
        ->check(CLI::IsMember({"belief", "projection", "quantified"}));
    synth->add_option("--nfa-mode", nfa_mode, "direct or reverse-canonical (projection only)")
        ->check(CLI::IsMember({"direct", "reverse-canonical"}));
    synth->add_option("--timeout", timeout, "wall-clock limit in seconds (0 = none)");
    synth->add_option("--state-budget", state_budget, "maximum explicit automaton states");
    synth->add_option("--strategy-out", strategy_out, "write the strategy as JSON");
    synth->add_option("--stats-out", stats_out, "append a CSV statistics row");
    synth->add_option("--stats-json", stats_json, "write statistics as JSON");
    synth->add_option("--validate", validate, "check the strategy on all plays up to this length");
    synth->add_option("--dot-out", dot_out, "write the explicit automaton as DOT");

    // batch
    auto* batch = app.add_subcommand("batch", "run every instance pair of a directory");
    std::string batch_dir, batch_approach = "all";
    unsigned jobs = 1;
    batch->add_option("dir", batch_dir, "directory with <name>.ltlf / <name>.part pairs")
        ->required()
        ->check(CLI::ExistingDirectory);
    batch->add_option("--approach", batch_approach, "belief, projection, quantified or all")
        ->check(CLI::IsMember({"belief", "projection", "quantified", "all"}));
    batch->add_option("--jobs", jobs, "concurrent runs")->check(CLI::PositiveNumber);
    batch->add_option("--nfa-mode", nfa_mode)->check(CLI::IsMember({"direct", "reverse-canonical"}));
    batch->add_option("--timeout", timeout);
    batch->add_option("--state-budget", state_budget);
    batch->add_option("--stats-out", stats_out, "append CSV statistics rows");

    // gen
    auto* gen = app.add_subcommand("gen", "write a benchmark instance");
    std::string family, out_dir = ".";
    int n = 0, m = 1;
    std::uint64_t seed = 0;
    gen->add_option("family", family, "moving-target, coin-game or private-peek")
        ->required()
        ->check(CLI::IsMember({"moving-target", "coin-game", "private-peek"}));
    gen->add_option("--n", n, "size parameter")->required();
    gen->add_option("--m", m, "holes per player (private-peek)");
    gen->add_option("--seed", seed, "PRNG seed (private-peek)");
    gen->add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kError;
    }

    SynthOptions options;
    options.nfa_mode = *parse_nfa_mode(nfa_mode);
    options.timeout_s = timeout;
    options.state_budget = state_budget;

    if (*synth) {
        options.approach = *parse_approach(approach);
        options.extract = !strategy_out.empty() || validate.has_value();
        options.validate_horizon = validate;
        options.keep_dot = !dot_out.empty();
        options.instance = fs::path(formula_file).stem().string();
        Outcome o = run_one(formula_file, partition_file, options);
        try {
            if (o.result) {
                const SynthResult& r = *o.result;
                std::cout << verdict_name(r.verdict) << std::endl;
                if (r.validation) {
                    if (r.validation->horizon_warning)
                        std::cerr << "warning: validation horizon is below the fixpoint iteration count\n";
                    if (r.validation->status == ValidationStatus::Skipped)
                        std::cerr << "warning: validation skipped (" << r.validation->message << ")\n";
                    else
                        std::cerr << "validation: " << r.validation->plays << " plays, " << r.validation->nodes
                                  << " nodes\n";
                }
                if (!strategy_out.empty()) {
                    nlohmann::json j = r.strategy ? r.strategy->to_json() : nlohmann::json(nullptr);
                    write_file(strategy_out, j.dump(2) + "\n");
                }
                if (!stats_out.empty()) append_csv(stats_out, {r.stats.csv_row()});
                if (!stats_json.empty()) write_file(stats_json, r.stats.to_json().dump(2) + "\n");
                if (!dot_out.empty()) write_file(dot_out, r.dot);
            } else {
                std::cerr << "error: " << o.message << std::endl;
            }
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << std::endl;
            return kError;
        }
        return o.code;
    }

    if (*batch) {
        std::vector<fs::path> instances;
        for (const auto& entry : fs::directory_iterator(batch_dir)) {
            if (entry.path().extension() != ".ltlf") continue;
            fs::path part = entry.path();
            part.replace_extension(".part");
            if (fs::exists(part)) instances.push_back(entry.path());
        }
        std::sort(instances.begin(), instances.end());
        std::vector<Approach> approaches;
        if (batch_approach == "all")
            approaches = {Approach::Belief, Approach::Projection, Approach::Quantified};
        else
            approaches = {*parse_approach(batch_approach)};

        struct Job {
            fs::path formula;
            Approach approach;
        };
        std::vector<Job> work;
        for (const auto& f : instances)
            for (Approach a : approaches) work.push_back({f, a});
        std::vector<Outcome> outcomes(work.size());
        std::atomic<std::size_t> next{0};
        std::mutex print;
        auto worker = [&] {
            for (std::size_t k; (k = next++) < work.size();) {
                SynthOptions o = options;
                o.approach = work[k].approach;
                o.extract = false;
                o.instance = work[k].formula.stem().string();
                fs::path part = work[k].formula;
                part.replace_extension(".part");
                outcomes[k] = run_one(work[k].formula, part, o);
                std::lock_guard lock(print);
                std::cout << o.instance << " " << approach_name(o.approach) << " "
                          << (outcomes[k].result ? verdict_name(outcomes[k].result->verdict) : "ERROR") << " "
                          << outcomes[k].message << std::endl;
            }
        };
        std::vector<std::thread> threads;
        for (unsigned t = 0; t < std::max(1u, jobs); ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();

        std::vector<std::string> rows;
        int code = 0;
        for (const auto& o : outcomes) {
            if (o.result)
                rows.push_back(o.result->stats.csv_row());
            else
                code = kError;
        }
        try {
            if (!stats_out.empty()) append_csv(stats_out, rows);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << std::endl;
            return kError;
        }
        return code;
    }

    if (*gen) {
        try {
            BenchInstance inst = generate(*parse_family(family), n, m, seed);
            auto [f, p] = write_instance(inst, out_dir);
            std::cout << f.string() << "\n" << p.string() << std::endl;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << std::endl;
            return kError;
        }
        return 0;
    }
    return kError;
}
