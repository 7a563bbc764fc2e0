#include "ltlfpo/trace.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace ltlfpo {

TraceChecker::TraceChecker(const Formula& f, std::vector<std::string> props) : props_(std::move(props)) {
    if (props_.size() > 64) throw std::invalid_argument("TraceChecker supports at most 64 propositions");
    std::unordered_map<std::string, std::uint32_t> index;
    for (std::uint32_t i = 0; i < props_.size(); ++i) index.emplace(props_[i], i);
    std::unordered_map<const FormulaNode*, std::uint32_t> slot;
    // Post-order: children get lower slots than their parents.
    auto rec = [&](auto&& self, const Formula& g) -> std::uint32_t {
        if (auto it = slot.find(g.raw()); it != slot.end()) return it->second;
        Instr in{g.op()};
        if (g.op() == Op::Prop) {
            auto it = index.find(g.name());
            if (it == index.end()) throw std::invalid_argument("proposition '" + g.name() + "' is not assigned");
            in.a = it->second;
        } else {
            if (g.arity() >= 1) in.a = self(self, g.lhs());
            if (g.arity() == 2) in.b = self(self, g.rhs());
        }
        auto id = static_cast<std::uint32_t>(program_.size());
        program_.push_back(in);
        slot.emplace(g.raw(), id);
        return id;
    };
    rec(rec, f);
}

bool TraceChecker::holds(std::span<const std::uint64_t> letters) const {
    if (letters.empty()) throw std::invalid_argument("satisfaction is undefined on the empty trace");
    const std::size_t n = letters.size();
    std::vector<char> later(program_.size(), 0), now(program_.size(), 0);
    for (std::size_t pos = n; pos-- > 0;) {
        const bool last = pos + 1 == n;
        const std::uint64_t letter = letters[pos];
        for (std::size_t k = 0; k < program_.size(); ++k) {
            const Instr& in = program_[k];
            char v = 0;
            switch (in.op) {
            case Op::True: v = 1; break;
            case Op::False: v = 0; break;
            case Op::Prop: v = (letter >> in.a) & 1u; break;
            case Op::Not: v = !now[in.a]; break;
            case Op::And: v = now[in.a] && now[in.b]; break;
            case Op::Or: v = now[in.a] || now[in.b]; break;
            case Op::Implies: v = !now[in.a] || now[in.b]; break;
            case Op::Iff: v = now[in.a] == now[in.b]; break;
            case Op::Next: v = !last && later[in.a]; break;
            case Op::WeakNext: v = last || later[in.a]; break;
            case Op::Until: v = now[in.b] || (now[in.a] && !last && later[k]); break;
            case Op::Release: v = now[in.b] && (now[in.a] || last || later[k]); break;
            case Op::Eventually: v = now[in.a] || (!last && later[k]); break;
            case Op::Globally: v = now[in.a] && (last || later[k]); break;
            }
            now[k] = v;
        }
        std::swap(now, later);
    }
    return later.back();
}

bool eval_trace(const Formula& f, const Trace& t) {
    if (t.empty()) throw std::invalid_argument("satisfaction is undefined on the empty trace");
    auto props = f.props();
    std::vector<std::string> names(props.begin(), props.end());
    if (names.size() > 64) throw std::invalid_argument("eval_trace supports at most 64 propositions");
    std::vector<std::uint64_t> letters;
    letters.reserve(t.size());
    for (std::size_t pos = 0; pos < t.size(); ++pos) {
        std::uint64_t bits = 0;
        for (std::size_t i = 0; i < names.size(); ++i) {
            auto it = t[pos].find(names[i]);
            if (it == t[pos].end())
                throw std::invalid_argument("proposition '" + names[i] + "' missing at position " + std::to_string(pos));
            if (it->second) bits |= std::uint64_t{1} << i;
        }
        letters.push_back(bits);
    }
    return TraceChecker(f, std::move(names)).holds(letters);
}

} // namespace ltlfpo
