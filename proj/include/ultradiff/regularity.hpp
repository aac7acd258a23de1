#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ultradiff/calculus.hpp"

namespace ultradiff {

struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational make(long long num, long long den);
    std::string to_string() const;  // "3/2", "1"
    friend bool operator==(const Rational&, const Rational&) = default;
};

struct HolderPair {
    int v_in;
    int v_out;
};

struct HolderReport {
    std::uint32_t field_p = 2;
    int prec = 0;
    std::uint64_t seed = 0;
    int samples = 0;
    int censored = 0;  // pairs whose output difference was zero to precision
    std::vector<HolderPair> pairs;
    Rational sigma;
    // c with v_out >= sigma * v_in - c on every recorded pair (C = p^c)
    int log_c = 0;
    Rational deep_slope;  // min v_out / v_in over the deep half of the pairs
    std::string verdict;

    // Re-checks v_out >= sigma * v_in - log_c on every pair.
    bool self_certified() const;
};

// Pairs y = x + X^r * u with u a unit vector in the sup norm and r spread
// over [r_U, r_U + prec/2 - 1], r_U the largest ball radius. Pairs with
// r >= r_U + prec/4 form the deep half. A candidate exponent s = k/2
// (k = 1..16) is admissible when the constant it needs on the deep half does
// not exceed the constant it needs on the shallow half by more than the
// rounding slack of 1; sigma is the largest s below which every candidate is
// admissible.
HolderReport holder_estimate(const FieldMap& f, const BallDomain& U, int samples, int prec, std::uint64_t seed);

struct BoundednessRow {
    int level;  // m: sampled tuples have within-block distances >= p^-m
    int count;  // evaluated tuples at this level, including pinned ones
    AbsValue sup;  // cumulative over all levels <= m
};

struct BoundednessTable {
    std::uint32_t field_p = 2;
    int prec = 0;
    std::uint64_t seed = 0;
    MultiIndex alpha;
    std::vector<BoundednessRow> rows;
    bool monotone_growth = false;  // strictly increasing sup along the sweep
};

// Optional extra tuple evaluated at level m (e.g. a known coalescing family).
using Witness = std::function<std::optional<BlockPoint>(int level)>;

BoundednessTable dd_boundedness_scan(const FieldMap& f, const MultiIndex& alpha, const BallDomain& U,
                                     int samples_per_level, const std::vector<int>& levels, int prec,
                                     std::uint64_t seed, const Witness& witness = {});

// (0, X^n, X^n + X^{n+3}) for even n: the tuple pinned by the phi32 scans.
BlockPoint gauss_witness(PrimeField field, int n, int prec);
// Largest even n with n + 3 <= level, as a witness for dd_boundedness_scan.
Witness gauss_witness_for_levels(PrimeField field, int prec);

struct BlowupRow {
    int n;
    LaurentSeries value;
    int valuation;
};

struct BlowupTable {
    std::uint32_t field_p = 2;
    int prec = 0;
    int n_max = 0;
    std::vector<BlowupRow> rows;
    bool strictly_increasing = false;  // |value| grows by exactly p per step
    bool matches_formula = false;      // valuation == -n/2 on every row
    std::string verdict;
};

int blowup_min_prec(int n_max);

// phi32^{>2<}(0, X^n, X^n + X^{n+3}) for even n in [2, n_max]. ConfigError on
// odd or too small n_max, InsufficientPrecision below blowup_min_prec.
BlowupTable c2_blowup_scan(int n_max, int prec, PrimeField field = PrimeField(2));

struct SubCheck {
    std::string name;
    int cases = 0;
    int passed = 0;
    bool ok() const noexcept { return cases > 0 && passed == cases; }
};

struct CounterexampleReport {
    std::uint32_t field_p = 2;
    int prec = 0;
    int n_max = 0;
    int samples = 0;
    std::uint64_t seed = 0;
    SubCheck holder_sandwich;   // v(f(x) - f(y)) == floor(3 v(x - y) / 2)
    SubCheck additivity;        // f(x + y) == f(x) + f(y)
    SubCheck phi2_zero;         // Phi_2 == 0 with t_1, t_2 nonzero
    SubCheck phi2_t1_zero;      // t_1 = 0 branch: Phi_1 -> 0 as t -> 0, so Phi_2 = 0
    SubCheck phi1_x_independent;
    BlowupTable blowup;
    std::string verdict;

    bool passed() const;
};

CounterexampleReport counterexample_report(int n_max, int samples, int prec, std::uint64_t seed,
                                           PrimeField field = PrimeField(2));

} // namespace ultradiff
