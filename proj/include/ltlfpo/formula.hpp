#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace ltlfpo {

enum class Op {
    True,
    False,
    Prop,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Next,
    WeakNext,
    Until,
    Release,
    Eventually,
    Globally,
};

struct FormulaNode;

/// Immutable LTLf syntax tree. Copies share structure; safe to read from
/// several threads at once.
class Formula {
public:
    static Formula tt();
    static Formula ff();
    static Formula prop(const std::string& name);
    static Formula negation(Formula f);
    static Formula conj(Formula a, Formula b);
    static Formula disj(Formula a, Formula b);
    static Formula implies(Formula a, Formula b);
    static Formula iff(Formula a, Formula b);
    static Formula next(Formula f);
    static Formula weak_next(Formula f);
    static Formula until(Formula a, Formula b);
    static Formula release(Formula a, Formula b);
    static Formula eventually(Formula f);
    static Formula globally(Formula f);

    /// Balanced conjunction; `true` for an empty list.
    static Formula conj_all(const std::vector<Formula>& fs);
    /// Balanced disjunction; `false` for an empty list.
    static Formula disj_all(const std::vector<Formula>& fs);

    Op op() const;
    /// Proposition name; empty unless op() == Op::Prop.
    const std::string& name() const;
    /// Operand of a unary node, left operand of a binary node.
    const Formula& lhs() const;
    const Formula& rhs() const;
    std::size_t arity() const;

    std::size_t hash() const;
    /// Number of nodes in the tree (shared subtrees counted per occurrence).
    std::size_t size() const;
    std::set<std::string> props() const;

    /// Fully parenthesized; parse(to_string()) reproduces the tree.
    std::string to_string() const;

    bool operator==(const Formula& other) const;
    bool operator!=(const Formula& other) const { return !(*this == other); }

    const FormulaNode* raw() const { return node_.get(); }

private:
    explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
    static Formula make(Op op, std::string name, const Formula* a, const Formula* b);

    std::shared_ptr<const FormulaNode> node_;
};

struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return f.hash(); }
};

bool is_nnf(const Formula& f);

/// Negation normal form over {true, false, p, !p, &, |, X, WX, U, R}.
/// Derived operators are expanded: F a = true U a, G a = false R a.
Formula to_nnf(const Formula& f);

/// Operator symbol as written in the concrete syntax.
const char* op_symbol(Op op);

} // namespace ltlfpo
