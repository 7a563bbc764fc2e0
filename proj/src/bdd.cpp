#include "ltlfpo/bdd.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ltlfpo/errors.hpp"

namespace ltlfpo::bdd {

namespace {

inline std::size_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t h = a * 0x9E3779B97F4A7C15ull;
    h ^= b + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
    h ^= c * 0xC2B2AE3D27D4EB4Full + (h << 6) + (h >> 2);
    h ^= h >> 29;
    return static_cast<std::size_t>(h);
}

constexpr std::size_t kInitialUnique = std::size_t{1} << 12;
constexpr std::size_t kInitialCache = std::size_t{1} << 16;
constexpr std::size_t kMaxCache = std::size_t{1} << 22;
constexpr std::size_t kCheckInterval = std::size_t{1} << 14;

} // namespace

// ---------------------------------------------------------------------------
// Bdd

Var Bdd::var() const { return manager_->node(id_).var; }
Bdd Bdd::low() const { return {manager_, manager_->node(id_).low}; }
Bdd Bdd::high() const { return {manager_, manager_->node(id_).high}; }
Bdd Bdd::operator~() const { return manager_->negate(*this); }
Bdd Bdd::operator&(const Bdd& o) const { return manager_->apply(BinaryOp::And, *this, o); }
Bdd Bdd::operator|(const Bdd& o) const { return manager_->apply(BinaryOp::Or, *this, o); }
Bdd Bdd::operator^(const Bdd& o) const { return manager_->apply(BinaryOp::Xor, *this, o); }
bool Bdd::implies(const Bdd& o) const { return (*this & ~o).is_zero(); }

// ---------------------------------------------------------------------------
// Manager

Manager::Manager() {
    nodes_.push_back({kTerminalVar, 0, 0});
    nodes_.push_back({kTerminalVar, 1, 1});
    unique_.assign(kInitialUnique, 0);
    unique_mask_ = kInitialUnique - 1;
    cache_.resize(kInitialCache);
    cache_mask_ = kInitialCache - 1;
}

Var Manager::new_var(const std::string& name) {
    if (var_index_.count(name)) throw std::invalid_argument("duplicate BDD variable '" + name + "'");
    Var v = static_cast<Var>(var_names_.size());
    var_names_.push_back(name);
    var_index_.emplace(name, v);
    return v;
}

const std::string& Manager::var_name(Var v) const {
    if (v >= var_names_.size()) throw std::out_of_range("unknown BDD variable index");
    return var_names_[v];
}

std::optional<Var> Manager::find_var(const std::string& name) const {
    auto it = var_index_.find(name);
    if (it == var_index_.end()) return std::nullopt;
    return it->second;
}

Bdd Manager::var(Var v) {
    if (v >= var_names_.size()) throw std::out_of_range("unknown BDD variable index " + std::to_string(v));
    return {this, make(v, 0, 1)};
}

Bdd Manager::var(const std::string& name) {
    auto v = find_var(name);
    if (!v) throw std::out_of_range("unknown BDD variable '" + name + "'");
    return var(*v);
}

Bdd Manager::literal(Var v, bool positive) {
    if (v >= var_names_.size()) throw std::out_of_range("unknown BDD variable index " + std::to_string(v));
    return positive ? Bdd{this, make(v, 0, 1)} : Bdd{this, make(v, 1, 0)};
}

Bdd Manager::cube(std::span<const Var> vars) {
    std::vector<Var> sorted(vars.begin(), vars.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    NodeId acc = 1;
    for (Var v : sorted) {
        if (v >= var_names_.size()) throw std::out_of_range("unknown BDD variable index");
        if (top(acc) == v) continue;
        acc = make(v, 0, acc);
    }
    return {this, acc};
}

Bdd Manager::minterm(std::span<const Var> vars, const std::vector<bool>& values) {
    Bdd acc = one();
    for (std::size_t i = 0; i < vars.size(); ++i) acc &= literal(vars[i], values.at(i));
    return acc;
}

void Manager::check_owner(const Bdd& f) const {
    if (f.manager() != this) throw std::invalid_argument("BDD operand belongs to a different manager");
}

NodeId Manager::make(Var v, NodeId low, NodeId high) {
    if (low == high) return low;
    std::size_t slot = mix(v, low, high) & unique_mask_;
    while (NodeId id = unique_[slot]) {
        const Node& n = nodes_[id];
        if (n.var == v && n.low == low && n.high == high) return id;
        slot = (slot + 1) & unique_mask_;
    }
    NodeId id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back({v, low, high});
    unique_[slot] = id;
    if (nodes_.size() * 2 > unique_.size()) {
        grow_unique();
        maybe_grow_cache();
    }
    if (++created_since_check_ >= kCheckInterval) {
        created_since_check_ = 0;
        limits_.check_deadline();
        limits_.check_nodes(nodes_.size());
    }
    return id;
}

void Manager::grow_unique() {
    std::vector<NodeId> fresh(unique_.size() * 2, 0);
    std::size_t mask = fresh.size() - 1;
    for (NodeId id = 2; id < nodes_.size(); ++id) {
        const Node& n = nodes_[id];
        std::size_t slot = mix(n.var, n.low, n.high) & mask;
        while (fresh[slot]) slot = (slot + 1) & mask;
        fresh[slot] = id;
    }
    unique_.swap(fresh);
    unique_mask_ = mask;
}

void Manager::maybe_grow_cache() {
    if (cache_.size() >= kMaxCache || cache_.size() >= nodes_.size()) return;
    std::vector<CacheEntry> fresh(cache_.size() * 2);
    std::size_t mask = fresh.size() - 1;
    for (const CacheEntry& e : cache_) {
        if (e.op == 0) continue;
        fresh[mix(e.op ^ (std::uint64_t{e.a} << 32), e.b, e.c) & mask] = e;
    }
    cache_.swap(fresh);
    cache_mask_ = mask;
}

bool Manager::cache_lookup(CacheOp op, NodeId a, NodeId b, NodeId c, NodeId& result) const {
    auto o = static_cast<std::uint32_t>(op);
    const CacheEntry& e = cache_[mix(o ^ (std::uint64_t{a} << 32), b, c) & cache_mask_];
    if (e.op == o && e.a == a && e.b == b && e.c == c) {
        result = e.result;
        return true;
    }
    return false;
}

void Manager::cache_store(CacheOp op, NodeId a, NodeId b, NodeId c, NodeId result) {
    auto o = static_cast<std::uint32_t>(op);
    cache_[mix(o ^ (std::uint64_t{a} << 32), b, c) & cache_mask_] = {o, a, b, c, result};
}

Bdd Manager::apply(BinaryOp op, const Bdd& a, const Bdd& b) {
    check_owner(a);
    check_owner(b);
    return {this, apply_rec(static_cast<CacheOp>(op), a.id(), b.id())};
}

NodeId Manager::apply_rec(CacheOp op, NodeId a, NodeId b) {
    switch (op) {
    case CacheOp::And:
        if (a == 0 || b == 0) return 0;
        if (a == 1) return b;
        if (b == 1 || a == b) return a;
        break;
    case CacheOp::Or:
        if (a == 1 || b == 1) return 1;
        if (a == 0) return b;
        if (b == 0 || a == b) return a;
        break;
    case CacheOp::Xor:
        if (a == b) return 0;
        if (a == 0) return b;
        if (b == 0) return a;
        if (a == 1) return not_rec(b);
        if (b == 1) return not_rec(a);
        break;
    default:
        throw std::logic_error("apply_rec: bad op");
    }
    if (a > b) std::swap(a, b);
    NodeId r;
    if (cache_lookup(op, a, b, 0, r)) return r;
    Node na = nodes_[a], nb = nodes_[b];
    Var v = std::min(na.var, nb.var);
    NodeId a0 = na.var == v ? na.low : a, a1 = na.var == v ? na.high : a;
    NodeId b0 = nb.var == v ? nb.low : b, b1 = nb.var == v ? nb.high : b;
    NodeId lo = apply_rec(op, a0, b0);
    NodeId hi = apply_rec(op, a1, b1);
    r = make(v, lo, hi);
    cache_store(op, a, b, 0, r);
    return r;
}

Bdd Manager::negate(const Bdd& a) {
    check_owner(a);
    return {this, not_rec(a.id())};
}

NodeId Manager::not_rec(NodeId a) {
    if (a <= 1) return 1 - a;
    NodeId r;
    if (cache_lookup(CacheOp::Not, a, 0, 0, r)) return r;
    Node n = nodes_[a];
    NodeId lo = not_rec(n.low);
    NodeId hi = not_rec(n.high);
    r = make(n.var, lo, hi);
    cache_store(CacheOp::Not, a, 0, 0, r);
    return r;
}

Bdd Manager::ite(const Bdd& f, const Bdd& g, const Bdd& h) {
    check_owner(f);
    check_owner(g);
    check_owner(h);
    return {this, ite_rec(f.id(), g.id(), h.id())};
}

NodeId Manager::ite_rec(NodeId f, NodeId g, NodeId h) {
    if (f == 1) return g;
    if (f == 0) return h;
    if (g == h) return g;
    if (g == 1 && h == 0) return f;
    if (g == 0 && h == 1) return not_rec(f);
    if (g == 1) return apply_rec(CacheOp::Or, f, h);
    if (h == 0) return apply_rec(CacheOp::And, f, g);
    NodeId r;
    if (cache_lookup(CacheOp::Ite, f, g, h, r)) return r;
    Node nf = nodes_[f], ng = nodes_[g], nh = nodes_[h];
    Var v = std::min({nf.var, ng.var, nh.var});
    auto cof = [v](const Node& n, NodeId id, bool hi) { return n.var == v ? (hi ? n.high : n.low) : id; };
    NodeId lo = ite_rec(cof(nf, f, false), cof(ng, g, false), cof(nh, h, false));
    NodeId hi = ite_rec(cof(nf, f, true), cof(ng, g, true), cof(nh, h, true));
    r = make(v, lo, hi);
    cache_store(CacheOp::Ite, f, g, h, r);
    return r;
}

Bdd Manager::quantify(Quantifier q, std::span<const Var> vars, const Bdd& f) {
    Bdd c = cube(vars);
    return q == Quantifier::Exists ? exists(c, f) : forall(c, f);
}

Bdd Manager::exists(const Bdd& vars_cube, const Bdd& f) {
    check_owner(vars_cube);
    check_owner(f);
    return {this, quant_rec(CacheOp::Exists, f.id(), vars_cube.id())};
}

Bdd Manager::forall(const Bdd& vars_cube, const Bdd& f) {
    check_owner(vars_cube);
    check_owner(f);
    return {this, quant_rec(CacheOp::Forall, f.id(), vars_cube.id())};
}

NodeId Manager::quant_rec(CacheOp op, NodeId f, NodeId cube) {
    if (f <= 1) return f;
    Var v = top(f);
    while (cube > 1 && top(cube) < v) cube = nodes_[cube].high;
    if (cube <= 1) return f;
    NodeId r;
    if (cache_lookup(op, f, cube, 0, r)) return r;
    Node n = nodes_[f];
    if (top(cube) == v) {
        NodeId rest = nodes_[cube].high;
        NodeId lo = quant_rec(op, n.low, rest);
        if (op == CacheOp::Exists && lo == 1) {
            r = 1;
        } else if (op == CacheOp::Forall && lo == 0) {
            r = 0;
        } else {
            NodeId hi = quant_rec(op, n.high, rest);
            r = apply_rec(op == CacheOp::Exists ? CacheOp::Or : CacheOp::And, lo, hi);
        }
    } else {
        NodeId lo = quant_rec(op, n.low, cube);
        NodeId hi = quant_rec(op, n.high, cube);
        r = make(v, lo, hi);
    }
    cache_store(op, f, cube, 0, r);
    return r;
}

Bdd Manager::compose(const Bdd& f, const std::vector<std::optional<Bdd>>& by_var) {
    check_owner(f);
    for (const auto& g : by_var)
        if (g) check_owner(*g);
    std::unordered_map<NodeId, NodeId> memo;
    return {this, compose_rec(f.id(), by_var, memo)};
}

NodeId Manager::compose_rec(NodeId f, const std::vector<std::optional<Bdd>>& by_var,
                            std::unordered_map<NodeId, NodeId>& memo) {
    if (f <= 1) return f;
    if (auto it = memo.find(f); it != memo.end()) return it->second;
    Node n = nodes_[f];
    NodeId lo = compose_rec(n.low, by_var, memo);
    NodeId hi = compose_rec(n.high, by_var, memo);
    NodeId sel = (n.var < by_var.size() && by_var[n.var]) ? by_var[n.var]->id() : make(n.var, 0, 1);
    NodeId r = ite_rec(sel, hi, lo);
    memo.emplace(f, r);
    return r;
}

Bdd Manager::substitute(const Bdd& f, const std::map<Var, Var>& renaming) {
    check_owner(f);
    std::set<Var> targets;
    for (auto [from, to] : renaming) {
        if (from >= var_count() || to >= var_count()) throw std::out_of_range("substitute: unknown variable");
        if (!targets.insert(to).second)
            throw std::invalid_argument("substitute: two variables renamed to '" + var_name(to) + "'");
    }
    for (Var s : support(f)) {
        if (targets.count(s) && !renaming.count(s))
            throw std::invalid_argument("substitute: target '" + var_name(s) + "' collides with the support");
    }
    std::vector<std::optional<Bdd>> by_var(var_count());
    for (auto [from, to] : renaming) by_var[from] = var(to);
    return compose(f, by_var);
}

Bdd Manager::cofactor(const Bdd& f, Var v, bool value) {
    check_owner(f);
    if (v >= var_count()) throw std::out_of_range("cofactor: unknown variable");
    std::unordered_map<NodeId, NodeId> memo;
    auto rec = [&](auto&& self, NodeId n) -> NodeId {
        // Variables are ordered by index, so v cannot occur below a larger one.
        if (n <= 1 || nodes_[n].var > v) return n;
        if (nodes_[n].var == v) return value ? nodes_[n].high : nodes_[n].low;
        if (auto it = memo.find(n); it != memo.end()) return it->second;
        Node nd = nodes_[n];
        NodeId r = make(nd.var, self(self, nd.low), self(self, nd.high));
        memo.emplace(n, r);
        return r;
    };
    return {this, rec(rec, f.id())};
}

Bdd Manager::restrict(const Bdd& f, std::span<const Var> vars, const std::vector<bool>& values) {
    std::vector<std::optional<Bdd>> by_var(var_count());
    for (std::size_t i = 0; i < vars.size(); ++i) by_var.at(vars[i]) = constant(values.at(i));
    return compose(f, by_var);
}

bool Manager::evaluate(const Bdd& f, const std::map<Var, bool>& assignment) const {
    check_owner(f);
    for (Var v : support(f)) {
        if (!assignment.count(v))
            throw std::invalid_argument("evaluate: variable '" + var_name(v) + "' is unassigned");
    }
    NodeId n = f.id();
    while (n > 1) n = assignment.at(nodes_[n].var) ? nodes_[n].high : nodes_[n].low;
    return n == 1;
}

bool Manager::evaluate_dense(const Bdd& f, const std::vector<bool>& values) const {
    NodeId n = f.id();
    while (n > 1) n = values[nodes_[n].var] ? nodes_[n].high : nodes_[n].low;
    return n == 1;
}

std::vector<Var> Manager::support(const Bdd& f) const {
    check_owner(f);
    std::set<Var> vars;
    std::vector<NodeId> stack{f.id()};
    std::unordered_map<NodeId, bool> seen;
    while (!stack.empty()) {
        NodeId n = stack.back();
        stack.pop_back();
        if (n <= 1 || !seen.emplace(n, true).second) continue;
        vars.insert(nodes_[n].var);
        stack.push_back(nodes_[n].low);
        stack.push_back(nodes_[n].high);
    }
    return {vars.begin(), vars.end()};
}

std::size_t Manager::node_count(const Bdd& f) const {
    return node_count(std::span<const Bdd>(&f, 1));
}

std::size_t Manager::node_count(std::span<const Bdd> fs) const {
    std::vector<NodeId> stack;
    for (const Bdd& f : fs) {
        check_owner(f);
        stack.push_back(f.id());
    }
    std::unordered_map<NodeId, bool> seen;
    while (!stack.empty()) {
        NodeId n = stack.back();
        stack.pop_back();
        if (!seen.emplace(n, true).second || n <= 1) continue;
        stack.push_back(nodes_[n].low);
        stack.push_back(nodes_[n].high);
    }
    return seen.size();
}

std::vector<bool> Manager::pick_min(const Bdd& f, std::span<const Var> vars) const {
    check_owner(f);
    if (f.is_zero()) throw std::invalid_argument("pick_min: unsatisfiable function");
    std::vector<bool> out(vars.size(), false);
    NodeId n = f.id();
    while (n > 1) {
        const Node& nd = nodes_[n];
        auto it = std::find(vars.begin(), vars.end(), nd.var);
        if (it == vars.end()) throw std::invalid_argument("pick_min: support outside the variable list");
        if (nd.low != 0) {
            n = nd.low;
        } else {
            out[static_cast<std::size_t>(it - vars.begin())] = true;
            n = nd.high;
        }
    }
    return out;
}

Bdd Manager::import(const Bdd& f, const std::vector<std::optional<Var>>& var_map) {
    const Manager& src = *f.manager();
    std::unordered_map<NodeId, NodeId> memo;
    auto rec = [&](auto&& self, NodeId n) -> NodeId {
        if (n <= 1) return n;
        if (auto it = memo.find(n); it != memo.end()) return it->second;
        const Node nd = src.nodes_[n];
        if (nd.var >= var_map.size() || !var_map[nd.var])
            throw std::invalid_argument("import: unmapped variable '" + src.var_name(nd.var) + "'");
        NodeId lo = self(self, nd.low);
        NodeId hi = self(self, nd.high);
        NodeId r = ite_rec(make(*var_map[nd.var], 0, 1), hi, lo);
        memo.emplace(n, r);
        return r;
    };
    return {this, rec(rec, f.id())};
}

std::string Manager::to_dot(const Bdd& f, const std::string& label) const {
    check_owner(f);
    std::ostringstream out;
    out << "digraph bdd {\n  root [shape=plaintext,label=\"" << label << "\"];\n";
    out << "  n0 [shape=box,label=\"0\"];\n  n1 [shape=box,label=\"1\"];\n";
    out << "  root -> n" << f.id() << ";\n";
    std::vector<NodeId> stack{f.id()};
    std::unordered_map<NodeId, bool> seen;
    while (!stack.empty()) {
        NodeId n = stack.back();
        stack.pop_back();
        if (n <= 1 || !seen.emplace(n, true).second) continue;
        const Node& nd = nodes_[n];
        out << "  n" << n << " [label=\"" << var_names_[nd.var] << "\"];\n";
        out << "  n" << n << " -> n" << nd.low << " [style=dashed];\n";
        out << "  n" << n << " -> n" << nd.high << ";\n";
        stack.push_back(nd.low);
        stack.push_back(nd.high);
    }
    out << "}\n";
    return out.str();
}

std::string Manager::to_sop(const Bdd& f) const {
    if (f.is_zero()) return "false";
    if (f.is_one()) return "true";
    std::string out;
    for_each_cube(f, [&](const std::vector<std::pair<Var, bool>>& lits) {
        if (!out.empty()) out += " | ";
        std::string term;
        for (auto [v, positive] : lits) {
            if (!term.empty()) term += " & ";
            if (!positive) term += "!";
            term += var_names_[v];
        }
        out += term.empty() ? "true" : term;
    });
    return out;
}

} // namespace ltlfpo::bdd
