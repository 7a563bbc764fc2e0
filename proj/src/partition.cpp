#include "ltlfpo/partition.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ltlfpo/errors.hpp"

namespace ltlfpo {

std::vector<std::string> Partition::inputs() const {
    std::vector<std::string> out = obs;
    out.insert(out.end(), unobs.begin(), unobs.end());
    return out;
}

std::vector<std::string> Partition::all() const {
    std::vector<std::string> out = outputs;
    out.insert(out.end(), obs.begin(), obs.end());
    out.insert(out.end(), unobs.begin(), unobs.end());
    return out;
}

namespace {
bool contains(const std::vector<std::string>& v, const std::string& p) {
    return std::find(v.begin(), v.end(), p) != v.end();
}
} // namespace

bool Partition::is_output(const std::string& p) const { return contains(outputs, p); }
bool Partition::is_obs(const std::string& p) const { return contains(obs, p); }
bool Partition::is_unobs(const std::string& p) const { return contains(unobs, p); }

void Partition::validate() const {
    std::set<std::string> seen;
    for (const auto& p : all()) {
        if (!seen.insert(p).second) throw std::invalid_argument("proposition '" + p + "' has more than one role");
    }
}

void Partition::check_covers(const Formula& f) const {
    auto names = all();
    std::set<std::string> known(names.begin(), names.end());
    for (const auto& p : f.props()) {
        if (!known.count(p)) throw std::invalid_argument("proposition '" + p + "' is neither an input nor an output");
    }
}

std::string Partition::to_text() const {
    std::ostringstream out;
    auto line = [&out](const char* key, const std::vector<std::string>& names) {
        out << key << ":";
        for (const auto& n : names) out << " " << n;
        out << "\n";
    };
    line("inputs", inputs());
    line("unobservables", unobs);
    line("outputs", outputs);
    return out.str();
}

Partition parse_partition(std::string_view text) {
    std::vector<std::string> inputs, unobs, outputs;
    bool saw_inputs = false, saw_outputs = false, saw_unobs = false;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto first = raw.find_first_not_of(" \t\r");
        if (first == std::string::npos || raw[first] == '#') continue;
        auto colon = raw.find(':', first);
        if (colon == std::string::npos) throw ParseError("expected 'key: names'", line_no, first + 1);
        std::string key = raw.substr(first, colon - first);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        if (!key.empty() && key.front() == '.') key.erase(0, 1);
        std::istringstream names(raw.substr(colon + 1));
        std::vector<std::string> list;
        for (std::string n; names >> n;) {
            try {
                Formula::prop(n);
            } catch (const std::invalid_argument&) {
                throw ParseError("invalid proposition name '" + n + "'", line_no, raw.find(n, colon) + 1);
            }
            list.push_back(n);
        }
        bool* seen = nullptr;
        std::vector<std::string>* target = nullptr;
        if (key == "inputs") {
            seen = &saw_inputs;
            target = &inputs;
        } else if (key == "unobservables") {
            seen = &saw_unobs;
            target = &unobs;
        } else if (key == "outputs") {
            seen = &saw_outputs;
            target = &outputs;
        } else {
            throw ParseError("unknown key '" + key + "'", line_no, first + 1);
        }
        if (*seen) throw ParseError("duplicate '" + key + "' line", line_no, first + 1);
        *seen = true;
        *target = std::move(list);
    }
    if (!saw_inputs) throw ParseError("missing 'inputs:' line", line_no + 1, 1);
    if (!saw_outputs) throw ParseError("missing 'outputs:' line", line_no + 1, 1);

    Partition p;
    for (const auto& n : inputs)
        if (std::find(unobs.begin(), unobs.end(), n) == unobs.end()) p.obs.push_back(n);
    p.unobs = unobs;
    p.outputs = outputs;
    p.validate();
    return p;
}

} // namespace ltlfpo
