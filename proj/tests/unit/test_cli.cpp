#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run cli(const std::string& args) {
    std::string cmd = std::string(LTLFPO_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

struct Dir {
    fs::path path;
    explicit Dir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~Dir() { fs::remove_all(path); }
    std::string operator/(const std::string& f) const { return (path / f).string(); }
};

} // namespace

TEST_SUITE("cli") {

TEST_CASE("gen and synth") {
    Dir d("ltlfpo_cli_synth");
    CHECK(cli("gen coin-game --n 3 --out " + d.path.string()).code == 0);
    CHECK(cli("gen moving-target --n 2 --out " + d.path.string()).code == 0);
    CHECK(cli("gen coin-game --n 2 --out " + d.path.string()).code == 2);
    CHECK(cli("gen chess --n 2").code == 2);

    Run coin = cli("synth " + (d / "coin-game_n3.ltlf") + " " + (d / "coin-game_n3.part") + " --approach belief");
    CHECK(coin.code == 1);
    CHECK(coin.out == "UNREALIZABLE\n");

    for (const char* a : {"belief", "projection", "quantified"}) {
        Run mt = cli("synth " + (d / "moving-target_n2.ltlf") + " " + (d / "moving-target_n2.part") +
                     " --approach " + a + " --stats-out " + (d / "stats.csv"));
        CHECK(mt.code == 0);
        CHECK(mt.out == "REALIZABLE\n");
    }
    std::string csv = slurp(d / "stats.csv");
    CHECK(csv.rfind("instance,approach,explicit_ms,explicit_states,symbolic_ms,dd_nodes,state_vars,iterations,verdict\n",
                    0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("strategy, validation and exports") {
    Dir d("ltlfpo_cli_strategy");
    cli("gen moving-target --n 3 --out " + d.path.string());
    std::string files = (d / "moving-target_n3.ltlf") + " " + (d / "moving-target_n3.part");
    Run r = cli("synth " + files + " --validate 8 --strategy-out " + (d / "s.json") + " --stats-json " +
                (d / "stats.json") + " --dot-out " + (d / "a.dot"));
    CHECK(r.code == 0);
    auto s = nlohmann::json::parse(slurp(d / "s.json"));
    CHECK(s.contains("initial"));
    CHECK(s["states"].size() > 0);
    CHECK(s["states"][0]["output"].contains("guess_1"));
    CHECK(s["states"][0]["next"][0]["obs"].contains("hit"));
    auto st = nlohmann::json::parse(slurp(d / "stats.json"));
    CHECK(st["verdict"] == "REALIZABLE");
    CHECK(st["construction"]["approach"] == "belief");
    CHECK(slurp(d / "a.dot").rfind("digraph", 0) == 0);
}

TEST_CASE("quantified approach on a hidden goal") {
    Dir d("ltlfpo_cli_hidden");
    write(d / "u.ltlf", "u\n");
    write(d / "u.part", "inputs: u\nunobservables: u\noutputs:\n");
    Run r = cli("synth " + (d / "u.ltlf") + " " + (d / "u.part") + " --approach quantified");
    CHECK(r.code == 1);
    CHECK(r.out == "UNREALIZABLE\n");
}

TEST_CASE("error exit codes") {
    Dir d("ltlfpo_cli_errors");
    write(d / "bad.ltlf", "a U\n");
    write(d / "a.part", "inputs: a\noutputs: b\n");
    write(d / "ok.ltlf", "a U b\n");
    write(d / "missing.part", "inputs: a\noutputs:\n");
    CHECK(cli("synth " + (d / "bad.ltlf") + " " + (d / "a.part")).code == 2);
    CHECK(cli("synth " + (d / "ok.ltlf") + " " + (d / "missing.part")).code == 2);
    CHECK(cli("synth " + (d / "ok.ltlf") + " " + (d / "a.part") + " --approach magic").code == 2);
    CHECK(cli("").code == 2);

    cli("gen coin-game --n 5 --out " + d.path.string());
    std::string coin = (d / "coin-game_n5.ltlf") + " " + (d / "coin-game_n5.part");
    CHECK(cli("synth " + coin + " --approach projection --timeout 0.001").code == 3);
    CHECK(cli("synth " + coin + " --approach quantified --state-budget 4").code == 4);
}

TEST_CASE("batch") {
    Dir d("ltlfpo_cli_batch");
    cli("gen moving-target --n 2 --out " + d.path.string());
    cli("gen coin-game --n 3 --out " + d.path.string());
    Run r = cli("batch " + d.path.string() + " --approach all --jobs 2 --stats-out " + (d / "runs.csv"));
    CHECK(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 6);
    CHECK(r.out.find("coin-game_n3 projection UNREALIZABLE") != std::string::npos);
    std::string csv = slurp(d / "runs.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
}

}
