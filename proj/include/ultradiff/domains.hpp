#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ultradiff/laurent_series.hpp"

namespace ultradiff {

using Point = std::vector<LaurentSeries>;

// Product of balls {z : v(z - c_i) >= r_i}, i = 1..d.
class BallDomain {
public:
    struct Ball {
        LaurentSeries center;
        int radius;  // valuation bound
    };

    explicit BallDomain(std::vector<Ball> balls);
    // O^d: every center 0, every radius 0.
    static BallDomain unit_polydisc(PrimeField field, int d);

    int dim() const noexcept { return static_cast<int>(balls_.size()); }
    const Ball& ball(int i) const { return balls_.at(static_cast<std::size_t>(i)); }
    const PrimeField& field() const noexcept { return balls_.front().center.field(); }

    // Throws UndecidableAtPrecision when z - c_i is zero to a precision below r_i.
    bool contains_coordinate(int i, const LaurentSeries& z) const;
    bool contains(std::span<const LaurentSeries> z) const;

    // "O^2" or "ball(1 + X, 2; 0, 0)"
    std::string to_string() const;

private:
    std::vector<Ball> balls_;
};

// CLI domain syntax: `O^d` or `ball(c_1,r_1;...;c_d,r_d)` with series literal centers.
BallDomain parse_domain(std::string_view text, PrimeField field, int default_prec);

class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> entries);
    static MultiIndex zero(int d) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(d), 0)); }
    static MultiIndex unit(int d, int i);  // e_i, 0-based i

    int dim() const noexcept { return static_cast<int>(a_.size()); }
    int operator[](int i) const { return a_.at(static_cast<std::size_t>(i)); }
    const std::vector<int>& entries() const noexcept { return a_; }
    int order() const noexcept { return order_; }
    // Number of scalars in a point of K^{d+|alpha|}.
    int flat_size() const noexcept { return dim() + order_; }
    // 0-based start of block i in the flat layout; block_start(dim()) == flat_size().
    int block_start(int i) const { return starts_.at(static_cast<std::size_t>(i)); }
    // 1-based block offsets s_1..s_{d+1} with s_j = j + sum_{i<j} alpha_i.
    std::vector<int> offsets() const;

    MultiIndex operator+(const MultiIndex& o) const;
    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.a_ == b.a_; }
    std::string to_string() const;

private:
    std::vector<int> a_;
    std::vector<int> starts_{0};
    int order_ = 0;
};

MultiIndex parse_multi_index(std::string_view text);

// A point of K^{d+|alpha|} viewed as blocks x^(i) in K^{1+alpha_i}.
class BlockPoint {
public:
    BlockPoint(MultiIndex alpha, Point flat);

    const MultiIndex& alpha() const noexcept { return alpha_; }
    const Point& flat() const noexcept { return flat_; }
    std::span<const LaurentSeries> block(int i) const;
    const LaurentSeries& at(int i, int j) const { return block(i)[static_cast<std::size_t>(j)]; }

private:
    MultiIndex alpha_;
    Point flat_;
};

// U^{<alpha>} membership (every mixed selection in U); with strict, also
// certified pairwise distinctness inside every block (U^{>alpha<}). A pair
// whose difference is zero to precision is not certified distinct, so strict
// membership is false for it. Ball comparisons that precision cannot decide
// throw UndecidableAtPrecision.
bool member_angle(const BallDomain& U, const BlockPoint& x, bool strict);

// Number of scalars in E^{[k]} for E = K^d, flattened depth-first as
// (x-block, y-block, t): dim_0 = d, dim_k = 2*dim_{k-1} + 1.
int bracket_dim(int d, int k);

// U^{[k]} membership: z = (x, y, t) with x and x + t*y in U^{[k-1]}. With
// strict (U^{]k[}), t must also be certified nonzero at every level.
bool member_bracket(const BallDomain& U, int k, std::span<const LaurentSeries> z, bool strict);

// Views into a flat E^{[k]} point.
struct BracketParts {
    std::span<const LaurentSeries> x;
    std::span<const LaurentSeries> y;
    const LaurentSeries& t;
};
BracketParts split_bracket(std::span<const LaurentSeries> z, int d, int k);

Point axpy(std::span<const LaurentSeries> x, const LaurentSeries& t, std::span<const LaurentSeries> y);

} // namespace ultradiff
