#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ultradiff/laurent_series.hpp"

namespace ultradiff {

enum class NodeKind { Var, Const, Add, Sub, Mul, Div, Pow, Builtin };

// Constant atoms. Products such as 3*X^2 are Mul nodes over two atoms.
struct Literal {
    enum class Kind { Integer, XPower, BigO };
    Kind kind = Kind::Integer;
    Residue coeff = 0;  // Integer
    int exponent = 0;   // XPower: X^exponent, BigO: O(X^exponent)

    friend bool operator==(const Literal&, const Literal&) = default;
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    NodeKind kind = NodeKind::Const;
    std::size_t position = 0;  // byte offset in the source text; ignored by equality
    int var = 0;               // Var, 1-based
    Literal literal;           // Const
    unsigned exponent = 0;     // Pow
    std::string builtin;       // Builtin
    NodePtr lhs;               // binary lhs, Pow base, Builtin argument
    NodePtr rhs;
};

bool structurally_equal(const Node& a, const Node& b);

// A map K^d -> K^e given by one tree per output component.
class Expr {
public:
    Expr(PrimeField field, int arity, std::vector<NodePtr> outputs);

    const PrimeField& field() const noexcept { return field_; }
    int arity() const noexcept { return arity_; }
    int coarity() const noexcept { return static_cast<int>(outputs_.size()); }
    const std::vector<NodePtr>& outputs() const noexcept { return outputs_; }

    friend bool operator==(const Expr& a, const Expr& b);

private:
    PrimeField field_;
    int arity_;
    std::vector<NodePtr> outputs_;
};

// Grammar:
//   top   := '[' sum {',' sum} ']' | sum
//   sum   := prod {('+'|'-') prod}
//   prod  := power {('*'|'/') power}
//   power := atom {'^' nat}
//   atom  := 'x' nat | nat | 'X' ['^' int] | 'O(X^' int ')' | builtin '(' sum ')' | '(' sum ')'
// The only builtin is phi32. Throws SyntaxError or ArityError.
Expr parse_expr(std::string_view text, int arity, PrimeField field);

std::string to_string(const Expr& f);

// Largest variable index used (0 for a constant map).
int max_variable(const Expr& f);

// Strict pointwise evaluation. Constants are materialized at the largest
// precision among the point's coordinates.
std::vector<LaurentSeries> eval_expr(const Expr& f, std::span<const LaurentSeries> point);

// sum a_k X^k  |->  sum a_k X^floor(3k/2), defined on the unit ball.
// Output precision is floor(3*prec/2): the lowest exponent an unknown input
// coefficient can reach. DomainError for a known coefficient at a negative
// exponent.
LaurentSeries gauss_expand(const LaurentSeries& x);

} // namespace ultradiff
