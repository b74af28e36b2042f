#pragma once

// Closed-form expressions in one complex variable `s`.
//
// Grammar (whitespace is ignored between tokens):
//
//   expr     := term (('+' | '-') term)*
//   term     := unary (('*' | '/') unary)*
//   unary    := ('+' | '-') unary | factor
//   factor   := base ('^' exponent)?
//   exponent := signed real literal, optionally parenthesized
//   base     := number | 's' | 'i' | '(' expr ')' | '(' re ',' im ')'
//             | 'involute' '(' expr ')'
//
// `i` is the imaginary unit, so `2+3*i` and `(2,3)` denote the same constant.
// `involute(e)` is the function s -> conj(e(conj s)); it is what `involute()`
// produces and what `print()` emits for it.
//
// Non-integer powers use the principal branch x^w = exp(w Log x). Integer
// exponents are evaluated by repeated multiplication.
//
// Extension point: transcendental functions would be new node kinds plus an
// identifier rule in `base`; nothing else in the grammar depends on the set of
// identifiers.

#include "monop/bigfloat.hpp"
#include "monop/scalar.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace monop {

class FuncExpr {
public:
    struct Node;

    /// Throws ParseError (with offset and expected-token set) on malformed input.
    static FuncExpr parse(std::string_view text);

    /// Throws EvalError (PoleError for divisions by |d| < 1e-300 and negative
    /// powers of zero).
    Complex eval(Complex s) const;
    BigComplex eval(const BigComplex& s) const;
    Complex operator()(Complex s) const { return eval(s); }

    /// Fully parenthesized text that parses back to an identical tree.
    std::string print() const;

    /// The expression s -> conj(e(conj s)). Involuting twice returns the
    /// original tree.
    FuncExpr involute() const;

    /// Zeros of the affine sub-expressions that appear as denominators or as
    /// bases of negative / non-integer powers. These are the only places where
    /// an expression of the supported kind can be singular.
    std::vector<Complex> affine_singularities() const;

    /// Structural equality of the trees.
    bool same_tree(const FuncExpr& other) const;

private:
    explicit FuncExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
    std::shared_ptr<const Node> root_;
};

/// Free-function spellings of the member operations.
inline FuncExpr parse(std::string_view text) { return FuncExpr::parse(text); }
inline Complex eval(const FuncExpr& e, Complex s) { return e.eval(s); }
inline FuncExpr involute(const FuncExpr& e) { return e.involute(); }

}  // namespace monop
