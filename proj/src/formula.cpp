#include "ltlfpo/formula.hpp"

#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "ltlfpo/errors.hpp"
#include "ltlfpo/limits.hpp"

namespace ltlfpo {

struct FormulaNode {
    Op op;
    std::string name;
    std::vector<Formula> children;
    std::size_t hash;
    std::size_t size;
};

namespace {

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(s[0])) return false;
    for (char c : s)
        if (!alpha(c) && !digit(c)) return false;
    return true;
}

} // namespace

// ---------------------------------------------------------------------------
// errors / limits live here to keep the library target small

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line), column_(column) {}

Limits Limits::with_timeout(double seconds, std::size_t max_states) {
    Limits l;
    l.max_states = max_states;
    if (seconds > 0)
        l.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
    return l;
}

void Limits::check_deadline() const {
    if (deadline && Clock::now() > *deadline) throw ResourceError(ResourceKind::Timeout, "timeout");
}

void Limits::check_states(std::size_t states, const char* what) const {
    if (states > max_states)
        throw ResourceError(ResourceKind::StateBudget,
                            std::string("state budget exceeded (") + what + ", " + std::to_string(max_states) + ")");
}

void Limits::check_nodes(std::size_t nodes) const {
    if (nodes > max_nodes)
        throw ResourceError(ResourceKind::StateBudget,
                            "decision-diagram node budget exceeded (" + std::to_string(max_nodes) + ")");
}

// ---------------------------------------------------------------------------
// Formula

Formula Formula::make(Op op, std::string name, const Formula* a, const Formula* b) {
    auto node = std::make_shared<FormulaNode>();
    node->op = op;
    node->name = std::move(name);
    std::size_t h = std::hash<int>()(static_cast<int>(op)) * 0x9E3779B97F4A7C15ull;
    std::size_t size = 1;
    if (op == Op::Prop) h ^= std::hash<std::string>()(node->name);
    for (const Formula* c : {a, b}) {
        if (!c) continue;
        if (!c->node_) throw std::invalid_argument("formula operand is empty");
        node->children.push_back(*c);
        h = (h ^ c->hash()) * 0x100000001B3ull + 0x7F4A7C15;
        size += c->size();
    }
    node->hash = h;
    node->size = size;
    return Formula(std::move(node));
}

Formula Formula::tt() {
    static const Formula f = make(Op::True, "", nullptr, nullptr);
    return f;
}
Formula Formula::ff() {
    static const Formula f = make(Op::False, "", nullptr, nullptr);
    return f;
}
Formula Formula::prop(const std::string& name) {
    if (!is_identifier(name)) throw std::invalid_argument("invalid proposition name '" + name + "'");
    return make(Op::Prop, name, nullptr, nullptr);
}
Formula Formula::negation(Formula f) { return make(Op::Not, "", &f, nullptr); }
Formula Formula::conj(Formula a, Formula b) { return make(Op::And, "", &a, &b); }
Formula Formula::disj(Formula a, Formula b) { return make(Op::Or, "", &a, &b); }
Formula Formula::implies(Formula a, Formula b) { return make(Op::Implies, "", &a, &b); }
Formula Formula::iff(Formula a, Formula b) { return make(Op::Iff, "", &a, &b); }
Formula Formula::next(Formula f) { return make(Op::Next, "", &f, nullptr); }
Formula Formula::weak_next(Formula f) { return make(Op::WeakNext, "", &f, nullptr); }
Formula Formula::until(Formula a, Formula b) { return make(Op::Until, "", &a, &b); }
Formula Formula::release(Formula a, Formula b) { return make(Op::Release, "", &a, &b); }
Formula Formula::eventually(Formula f) { return make(Op::Eventually, "", &f, nullptr); }
Formula Formula::globally(Formula f) { return make(Op::Globally, "", &f, nullptr); }

namespace {
Formula fold_balanced(const std::vector<Formula>& fs, std::size_t lo, std::size_t hi, bool conjunction) {
    if (hi - lo == 1) return fs[lo];
    std::size_t mid = lo + (hi - lo) / 2;
    Formula l = fold_balanced(fs, lo, mid, conjunction);
    Formula r = fold_balanced(fs, mid, hi, conjunction);
    return conjunction ? Formula::conj(l, r) : Formula::disj(l, r);
}
} // namespace

Formula Formula::conj_all(const std::vector<Formula>& fs) {
    return fs.empty() ? tt() : fold_balanced(fs, 0, fs.size(), true);
}

Formula Formula::disj_all(const std::vector<Formula>& fs) {
    return fs.empty() ? ff() : fold_balanced(fs, 0, fs.size(), false);
}

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::lhs() const { return node_->children.at(0); }
const Formula& Formula::rhs() const { return node_->children.at(1); }
std::size_t Formula::arity() const { return node_->children.size(); }
std::size_t Formula::hash() const { return node_->hash; }
std::size_t Formula::size() const { return node_->size; }

bool Formula::operator==(const Formula& other) const {
    if (node_ == other.node_) return true;
    if (!node_ || !other.node_) return false;
    if (node_->op != other.node_->op || node_->hash != other.node_->hash || node_->size != other.node_->size)
        return false;
    if (node_->name != other.node_->name) return false;
    for (std::size_t i = 0; i < node_->children.size(); ++i)
        if (node_->children[i] != other.node_->children[i]) return false;
    return true;
}

std::set<std::string> Formula::props() const {
    std::set<std::string> out;
    std::unordered_map<const FormulaNode*, bool> seen;
    std::vector<const FormulaNode*> stack{node_.get()};
    while (!stack.empty()) {
        const FormulaNode* n = stack.back();
        stack.pop_back();
        if (!seen.emplace(n, true).second) continue;
        if (n->op == Op::Prop) out.insert(n->name);
        for (const Formula& c : n->children) stack.push_back(c.raw());
    }
    return out;
}

const char* op_symbol(Op op) {
    switch (op) {
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Prop: return "";
    case Op::Not: return "!";
    case Op::And: return "&";
    case Op::Or: return "|";
    case Op::Implies: return "->";
    case Op::Iff: return "<->";
    case Op::Next: return "X";
    case Op::WeakNext: return "WX";
    case Op::Until: return "U";
    case Op::Release: return "R";
    case Op::Eventually: return "F";
    case Op::Globally: return "G";
    }
    return "?";
}

std::string Formula::to_string() const {
    std::string out;
    auto rec = [&out](auto&& self, const Formula& f) -> void {
        switch (f.op()) {
        case Op::True:
        case Op::False:
            out += op_symbol(f.op());
            return;
        case Op::Prop:
            out += f.name();
            return;
        case Op::Not:
            out += "(!";
            self(self, f.lhs());
            out += ")";
            return;
        case Op::Next:
        case Op::WeakNext:
        case Op::Eventually:
        case Op::Globally:
            out += "(";
            out += op_symbol(f.op());
            out += " ";
            self(self, f.lhs());
            out += ")";
            return;
        default:
            out += "(";
            self(self, f.lhs());
            out += " ";
            out += op_symbol(f.op());
            out += " ";
            self(self, f.rhs());
            out += ")";
        }
    };
    rec(rec, *this);
    return out;
}

// ---------------------------------------------------------------------------
// NNF

bool is_nnf(const Formula& f) {
    switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Prop:
        return true;
    case Op::Not:
        return f.lhs().op() == Op::Prop;
    case Op::Implies:
    case Op::Iff:
    case Op::Eventually:
    case Op::Globally:
        return false;
    case Op::Next:
    case Op::WeakNext:
        return is_nnf(f.lhs());
    default:
        return is_nnf(f.lhs()) && is_nnf(f.rhs());
    }
}

namespace {

class NnfConverter {
public:
    Formula convert(const Formula& f, bool negated) {
        auto key = std::make_pair(f.raw(), negated);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Formula r = build(f, negated);
        memo_.emplace(key, r);
        keep_.push_back(f);
        return r;
    }

private:
    struct KeyHash {
        std::size_t operator()(const std::pair<const FormulaNode*, bool>& k) const {
            return std::hash<const void*>()(k.first) * 2 + k.second;
        }
    };

    Formula build(const Formula& f, bool neg) {
        switch (f.op()) {
        case Op::True:
            return neg ? Formula::ff() : f;
        case Op::False:
            return neg ? Formula::tt() : f;
        case Op::Prop:
            return neg ? Formula::negation(f) : f;
        case Op::Not:
            return convert(f.lhs(), !neg);
        case Op::And:
        case Op::Or: {
            Formula a = convert(f.lhs(), neg), b = convert(f.rhs(), neg);
            bool is_and = (f.op() == Op::And) != neg;
            return is_and ? Formula::conj(a, b) : Formula::disj(a, b);
        }
        case Op::Implies: {
            // a -> b == !a | b
            Formula a = convert(f.lhs(), !neg), b = convert(f.rhs(), neg);
            return neg ? Formula::conj(a, b) : Formula::disj(a, b);
        }
        case Op::Iff: {
            Formula a = convert(f.lhs(), false), na = convert(f.lhs(), true);
            Formula b = convert(f.rhs(), false), nb = convert(f.rhs(), true);
            if (!neg) return Formula::disj(Formula::conj(a, b), Formula::conj(na, nb));
            return Formula::disj(Formula::conj(a, nb), Formula::conj(na, b));
        }
        case Op::Next:
            return neg ? Formula::weak_next(convert(f.lhs(), true)) : Formula::next(convert(f.lhs(), false));
        case Op::WeakNext:
            return neg ? Formula::next(convert(f.lhs(), true)) : Formula::weak_next(convert(f.lhs(), false));
        case Op::Until: {
            Formula a = convert(f.lhs(), neg), b = convert(f.rhs(), neg);
            return neg ? Formula::release(a, b) : Formula::until(a, b);
        }
        case Op::Release: {
            Formula a = convert(f.lhs(), neg), b = convert(f.rhs(), neg);
            return neg ? Formula::until(a, b) : Formula::release(a, b);
        }
        case Op::Eventually: {
            Formula c = convert(f.lhs(), neg);
            return neg ? Formula::release(Formula::ff(), c) : Formula::until(Formula::tt(), c);
        }
        case Op::Globally: {
            Formula c = convert(f.lhs(), neg);
            return neg ? Formula::until(Formula::tt(), c) : Formula::release(Formula::ff(), c);
        }
        }
        throw std::logic_error("to_nnf: unknown operator");
    }

    std::unordered_map<std::pair<const FormulaNode*, bool>, Formula, KeyHash> memo_;
    std::vector<Formula> keep_;
};

} // namespace

Formula to_nnf(const Formula& f) {
    NnfConverter conv;
    return conv.convert(f, false);
}

} // namespace ltlfpo
