#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ltlfpo/formula.hpp"
#include "ltlfpo/partition.hpp"

namespace ltlfpo {

enum class Family { MovingTarget, CoinGame, PrivatePeek };
enum class Expected { Realizable, Unrealizable, Unknown };

const char* family_name(Family f);
std::optional<Family> parse_family(const std::string& name);
const char* expected_name(Expected e);

struct BenchInstance {
    Family family = Family::MovingTarget;
    int n = 0;
    int m = 0;
    std::uint64_t seed = 0;
    Formula formula = Formula::tt();
    Partition partition;
    Expected expected = Expected::Unknown;

    /// e.g. moving-target_n3, private-peek_n2_m1_s7
    std::string name() const;
    /// `# family=... n=... m=... seed=... expected=...`
    std::string header() const;
    std::string formula_text() const;
    std::string partition_text() const;
};

/// Pairwise exclusion plus the disjunction of all arguments.
Formula exactly_one(const std::vector<Formula>& xs);
/// Pairwise exclusion.
Formula at_most_one(const std::vector<Formula>& xs);

/// Throw std::invalid_argument on out-of-range parameters.
BenchInstance gen_moving_target(int n);
BenchInstance gen_coin_game(int n);
/// Peek conditions are random cubes drawn from std::mt19937_64 seeded with
/// `seed`: for each player (e, then s) and hole j, each of plate_e_1..n,
/// plate_s_1..n is selected on one draw and negated on a second draw when
/// selected. A draw is the top bit of the next 64-bit output.
BenchInstance gen_private_peek(int n, int m, std::uint64_t seed);
BenchInstance generate(Family family, int n, int m = 1, std::uint64_t seed = 0);

/// Writes <name>.ltlf and <name>.part into `dir`; returns both paths.
std::pair<std::filesystem::path, std::filesystem::path> write_instance(const BenchInstance& inst,
                                                                       const std::filesystem::path& dir);

} // namespace ltlfpo
