#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ltlfpo/formula.hpp"

namespace ltlfpo {

/// Roles of the propositions of a formula. Inputs are split into
/// observable and unobservable ones; outputs belong to the system.
struct Partition {
    std::vector<std::string> obs;
    std::vector<std::string> unobs;
    std::vector<std::string> outputs;

    /// obs followed by unobs.
    std::vector<std::string> inputs() const;
    /// outputs, obs, unobs: the order used for explicit alphabets.
    std::vector<std::string> all() const;

    bool is_output(const std::string& p) const;
    bool is_obs(const std::string& p) const;
    bool is_unobs(const std::string& p) const;

    /// Throws std::invalid_argument if the sets overlap or repeat a name.
    void validate() const;
    /// Throws std::invalid_argument if some free proposition of f has no role.
    void check_covers(const Formula& f) const;

    /// `inputs:` lists every input, `unobservables:` the hidden subset.
    std::string to_text() const;
};

/// Reads the partition format:
///
///   inputs: a b u1
///   unobservables: u1
///   outputs: c d
///
/// The `unobservables:` line is optional. Names listed as unobservable are
/// inputs whether or not they also appear on the `inputs:` line. Lines
/// starting with `#` are comments; a leading `.` on a keyword is accepted.
Partition parse_partition(std::string_view text);

} // namespace ltlfpo
