#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ltlfpo/limits.hpp"

namespace ltlfpo::bdd {

using NodeId = std::uint32_t;
using Var = std::uint32_t;

class Manager;

/// Handle to a node of a reduced ordered BDD. Only meaningful together with
/// the Manager that created it; mixing handles of two managers throws.
class Bdd {
public:
    Bdd() = default;
    Bdd(Manager* manager, NodeId id) : manager_(manager), id_(id) {}

    Manager* manager() const { return manager_; }
    NodeId id() const { return id_; }

    bool is_zero() const { return id_ == 0; }
    bool is_one() const { return id_ == 1; }
    bool is_constant() const { return id_ <= 1; }

    /// Variable tested at the root. Undefined for constants.
    Var var() const;
    Bdd low() const;
    Bdd high() const;

    Bdd operator~() const;
    Bdd operator&(const Bdd& other) const;
    Bdd operator|(const Bdd& other) const;
    Bdd operator^(const Bdd& other) const;
    Bdd& operator&=(const Bdd& other) { return *this = *this & other; }
    Bdd& operator|=(const Bdd& other) { return *this = *this | other; }
    Bdd& operator^=(const Bdd& other) { return *this = *this ^ other; }

    /// Handle equality; by canonicity this is semantic equality.
    bool operator==(const Bdd& other) const = default;

    /// this -> other is valid.
    bool implies(const Bdd& other) const;

private:
    Manager* manager_ = nullptr;
    NodeId id_ = 0;
};

enum class BinaryOp : std::uint32_t { And = 1, Or, Xor };
enum class Quantifier { Exists, Forall };

/// Variable ordering is creation order: the variable created first is tested
/// at the top of every diagram.
class Manager {
public:
    Manager();
    Manager(const Manager&) = delete;
    Manager& operator=(const Manager&) = delete;

    Var new_var(const std::string& name);
    std::size_t var_count() const { return var_names_.size(); }
    const std::string& var_name(Var v) const;
    std::optional<Var> find_var(const std::string& name) const;

    Bdd zero() { return {this, 0}; }
    Bdd one() { return {this, 1}; }
    Bdd constant(bool value) { return {this, value ? NodeId{1} : NodeId{0}}; }
    /// Literal for a registered variable; throws std::out_of_range otherwise.
    Bdd var(Var v);
    Bdd var(const std::string& name);
    Bdd literal(Var v, bool positive);
    /// Conjunction of positive literals, used to name a set of variables.
    Bdd cube(std::span<const Var> vars);
    /// Conjunction of literals v == value.
    Bdd minterm(std::span<const Var> vars, const std::vector<bool>& values);

    Bdd apply(BinaryOp op, const Bdd& a, const Bdd& b);
    Bdd negate(const Bdd& a);
    Bdd ite(const Bdd& f, const Bdd& g, const Bdd& h);
    Bdd quantify(Quantifier q, std::span<const Var> vars, const Bdd& f);
    Bdd exists(const Bdd& vars_cube, const Bdd& f);
    Bdd forall(const Bdd& vars_cube, const Bdd& f);

    /// Simultaneous substitution of functions for variables. Entries that are
    /// absent leave the variable untouched.
    Bdd compose(const Bdd& f, const std::vector<std::optional<Bdd>>& by_var);
    /// Simultaneous variable renaming. Throws std::invalid_argument if two
    /// sources share a target, or a target is already in the support of f
    /// without being renamed itself.
    Bdd substitute(const Bdd& f, const std::map<Var, Var>& renaming);
    /// f with v fixed to `value`.
    Bdd cofactor(const Bdd& f, Var v, bool value);
    /// Fix some variables to constants.
    Bdd restrict(const Bdd& f, std::span<const Var> vars, const std::vector<bool>& values);

    /// Throws std::invalid_argument if a support variable is unassigned.
    bool evaluate(const Bdd& f, const std::map<Var, bool>& assignment) const;
    /// Unchecked evaluation; `values` is indexed by variable.
    bool evaluate_dense(const Bdd& f, const std::vector<bool>& values) const;

    std::vector<Var> support(const Bdd& f) const;
    /// Distinct nodes, terminals included.
    std::size_t node_count(const Bdd& f) const;
    std::size_t node_count(std::span<const Bdd> fs) const;
    std::size_t total_nodes() const { return nodes_.size(); }

    /// Lexicographically smallest satisfying assignment to `vars` (listed in
    /// variable order), preferring 0 on each variable. Requires f != 0 and
    /// support(f) within vars.
    std::vector<bool> pick_min(const Bdd& f, std::span<const Var> vars) const;

    /// Rebuild a diagram from another manager. `var_map[v]` gives the target
    /// variable for source variable v; the source support must be mapped.
    Bdd import(const Bdd& f, const std::vector<std::optional<Var>>& var_map);

    /// Disjoint cube decomposition: calls visit(literals) for every path to 1.
    template <typename Visit>
    void for_each_cube(const Bdd& f, Visit&& visit) const;

    std::string to_dot(const Bdd& f, const std::string& label = "f") const;
    std::string to_sop(const Bdd& f) const;

    void set_limits(const Limits& limits) { limits_ = limits; }
    const Limits& limits() const { return limits_; }

    struct Node {
        Var var;
        NodeId low;
        NodeId high;
    };
    const Node& node(NodeId id) const { return nodes_[id]; }
    static constexpr Var kTerminalVar = 0xffffffffu;

private:
    enum class CacheOp : std::uint32_t { And = 1, Or, Xor, Not, Ite, Exists, Forall };

    struct CacheEntry {
        std::uint32_t op = 0;
        NodeId a = 0, b = 0, c = 0;
        NodeId result = 0;
    };

    NodeId make(Var v, NodeId low, NodeId high);
    NodeId apply_rec(CacheOp op, NodeId a, NodeId b);
    NodeId not_rec(NodeId a);
    NodeId ite_rec(NodeId f, NodeId g, NodeId h);
    NodeId quant_rec(CacheOp op, NodeId f, NodeId cube);
    NodeId compose_rec(NodeId f, const std::vector<std::optional<Bdd>>& by_var,
                       std::unordered_map<NodeId, NodeId>& memo);

    bool cache_lookup(CacheOp op, NodeId a, NodeId b, NodeId c, NodeId& result) const;
    void cache_store(CacheOp op, NodeId a, NodeId b, NodeId c, NodeId result);
    void grow_unique();
    void maybe_grow_cache();
    void check_owner(const Bdd& f) const;
    Var top(NodeId id) const { return nodes_[id].var; }

    std::vector<Node> nodes_;
    std::vector<NodeId> unique_;
    std::size_t unique_mask_ = 0;
    std::vector<CacheEntry> cache_;
    std::size_t cache_mask_ = 0;
    std::vector<std::string> var_names_;
    std::unordered_map<std::string, Var> var_index_;
    Limits limits_;
    std::size_t created_since_check_ = 0;
};

template <typename Visit>
void Manager::for_each_cube(const Bdd& f, Visit&& visit) const {
    check_owner(f);
    std::vector<std::pair<Var, bool>> path;
    auto rec = [&](auto&& self, NodeId n) -> void {
        if (n == 0) return;
        if (n == 1) {
            visit(static_cast<const std::vector<std::pair<Var, bool>>&>(path));
            return;
        }
        const Node& nd = nodes_[n];
        path.emplace_back(nd.var, false);
        self(self, nd.low);
        path.back().second = true;
        self(self, nd.high);
        path.pop_back();
    };
    rec(rec, f.id());
}

} // namespace ltlfpo::bdd
