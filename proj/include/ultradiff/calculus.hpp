#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ultradiff/domains.hpp"
#include "ultradiff/expr.hpp"

namespace ultradiff {

using Values = std::vector<LaurentSeries>;

// Any map K^arity -> K^coarity the difference calculi can consume: parsed
// expressions, and derived maps such as x |-> f^{>alpha<}(x).
class FieldMap {
public:
    using Fn = std::function<Values(std::span<const LaurentSeries>)>;

    FieldMap(int arity, int coarity, Fn fn);
    FieldMap(const Expr& f);  // NOLINT(google-explicit-constructor)

    int arity() const noexcept { return arity_; }
    int coarity() const noexcept { return coarity_; }
    Values operator()(std::span<const LaurentSeries> x) const;

private:
    int arity_;
    int coarity_;
    Fn fn_;
};

// f^{>alpha<}(x) as the sum over all block selections of
//   prod_i prod_{k != j_i} 1/(x^(i)_{j_i} - x^(i)_k) * f(x^(1)_{j_1}, ..., x^(d)_{j_d}).
// The point must be certified strict (UndecidableAtPrecision otherwise).
// InsufficientPrecision if a component comes out zero to a precision <= 0.
Values dd_direct(const FieldMap& f, const BlockPoint& x);

// Same value through the one-variable-at-a-time recursion: with i the first
// block having alpha_i > 0 and beta = alpha - e_i,
//   f^{>alpha<}(x) = (f^{>beta<}(.., x_0, x_1, .., x_{a-1}, ..) - f^{>beta<}(.., x_a, x_1, .., x_{a-1}, ..)) / (x_0 - x_a).
Values dd_recursive(const FieldMap& f, const BlockPoint& x);

// x |-> f^{>alpha<}(x) on K^{d+|alpha|}.
FieldMap divided_difference_map(const FieldMap& f, const MultiIndex& alpha);

// (f(x + t*y) - f(x)) / t, t certified nonzero.
Values dq1(const FieldMap& f, std::span<const LaurentSeries> x, std::span<const LaurentSeries> y, const LaurentSeries& t);

// f^{[k]} at a strict point of U^{]k[}, flattened depth-first (x-block, y-block, t):
//   f^{[k]}(x, y, t) = (f^{[k-1]}(x + t*y) - f^{[k-1]}(x)) / t.
Values dq_iter(const FieldMap& f, int k, std::span<const LaurentSeries> z);

// Ludkovsky's quotient with fixed directions, only where every t_i is nonzero:
//   Phi_k(x, xi, t) = (Phi_{k-1}(x + t_k xi_k, ..) - Phi_{k-1}(x, ..)) / t_k,  Phi_0 = f.
Values phi_k(const FieldMap& f, int k, std::span<const LaurentSeries> x, std::span<const Point> xis,
             std::span<const LaurentSeries> ts);

// Whether (x, xi_1..xi_k, t_1..t_k) lies in the closure domain of Phi_k over U
// (every x + sum_{i in S} t_i xi_i inside U); strict also requires t_k != 0 at
// every level.
bool member_phi(const BallDomain& U, std::span<const LaurentSeries> x, std::span<const Point> xis,
                std::span<const LaurentSeries> ts, bool strict);

// x |-> M x + c with integer entries taken in the prime subfield.
class AffineMap {
public:
    AffineMap(int source_dim, int target_dim, std::vector<int> matrix, std::vector<int> offset);
    static AffineMap identity(int dim);

    int source_dim() const noexcept { return m_; }
    int target_dim() const noexcept { return n_; }
    int entry(int row, int col) const { return matrix_.at(static_cast<std::size_t>(row * m_ + col)); }
    int offset(int row) const { return offset_.at(static_cast<std::size_t>(row)); }
    const std::vector<int>& matrix() const noexcept { return matrix_; }
    const std::vector<int>& offsets() const noexcept { return offset_; }

    // Constants are materialized at the largest input precision.
    Point apply(std::span<const LaurentSeries> x) const;
    // (*this) o inner
    AffineMap compose(const AffineMap& inner) const;

    friend bool operator==(const AffineMap&, const AffineMap&) = default;

private:
    int m_;
    int n_;
    std::vector<int> matrix_;  // row-major n x m
    std::vector<int> offset_;
};

// The transport map K^{d+|alpha|} -> E^{[|alpha|]} with
// f^{>alpha<} = f^{[|alpha|]} o theta_alpha on strict points. Built inductively:
// for alpha = beta + e_i (i the first nonzero entry),
//   theta_alpha(x) = (theta_beta(x'), lambda_beta(e_s), x^(i)_0 - x^(i)_{alpha_i}),
// where x' replaces block i by (x^(i)_{alpha_i}, x^(i)_1, .., x^(i)_{alpha_i-1}),
// e_s is the unit vector at block i's first slot and lambda_beta the linear
// part of theta_beta.
AffineMap theta_alpha(const MultiIndex& alpha);

// beta over d + |alpha| coordinates collapsed onto d: bar_beta_j sums beta
// over block j of the alpha layout. ShapeError on inconsistent lengths.
MultiIndex flatten_multiindex(const MultiIndex& alpha, const MultiIndex& beta);

} // namespace ultradiff
