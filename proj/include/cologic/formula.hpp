#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "cologic/covers.hpp"
#include "cologic/graph.hpp"

namespace cologic {

enum class FormulaKind { bottom, graph, negation, disjunction, exists };

/// Immutable cologic formula over the core grammar
///
///   φⁿ ::= ⊥ⁿ | G | ¬φⁿ | φⁿ ∨ φⁿ | ∃_f φᵐ      (f : m ↠ n)
///
/// Every node carries its context n. Derived connectives (⊤, ∧, →, ∀_f)
/// are elaborated into the core grammar by their factory functions.
/// Copies share structure.
class Formula {
public:
    static Formula bottom(int context);
    /// Atom true of a tuple exactly when its nerve equals g (context = |g|).
    static Formula graph(FiniteGraph g);
    static Formula negation(Formula child);
    /// Throws InputError when the contexts differ.
    static Formula disjunction(Formula left, Formula right);
    /// Throws InputError unless child's context equals f.source().
    static Formula exists(Arrangement f, Formula child);

    static Formula top(int context);
    static Formula conjunction(Formula left, Formula right);
    static Formula implication(Formula left, Formula right);
    static Formula forall(Arrangement f, Formula child);

    FormulaKind kind() const;
    int context() const;

    const FiniteGraph& graph() const;
    const Arrangement& arrangement() const;
    /// Operand of a negation or an existential.
    const Formula& child() const;
    const Formula& left() const;
    const Formula& right() const;

    /// Quantifier rank: nesting depth of existentials.
    int rank() const;
    /// Node count.
    int size() const;

    /// Stable address of the shared node; usable as a memo key.
    const void* identity() const { return node_.get(); }

    friend bool operator==(const Formula& a, const Formula& b);

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

/// Core-grammar rendering; parse(print(φ)) == φ.
std::string print(const Formula& phi);

class ParseError : public InputError {
public:
    ParseError(std::size_t position, const std::string& message);
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Surface syntax:
///
///   formula := 'false@' nat | 'true@' nat
///            | 'graph{' nat ';' [edge (',' edge)*] '}'
///            | '!' formula
///            | '(' formula ('|' | '&' | '->') formula ')'
///            | ('some' | 'all') '[' nat (',' nat)* ']' '.' formula
///   edge    := nat '-' nat
///
/// Whitespace between tokens is ignored. Throws ParseError with the byte
/// offset of the offending token.
Formula parse(std::string_view text);

} // namespace cologic
