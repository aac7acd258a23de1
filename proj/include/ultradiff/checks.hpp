#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ultradiff/calculus.hpp"

namespace ultradiff {

enum class Outcome { Match, Undecidable, Failure };

// Componentwise comparison on the common known window. Match needs every
// component to agree and at least one to certify something.
Outcome compare_values(const Values& lhs, const Values& rhs);

struct CheckFailure {
    Point point;
    Values lhs;
    Values rhs;
};

struct CheckReport {
    std::string op;
    std::uint32_t field_p = 2;
    int prec = 0;
    std::uint64_t seed = 0;
    int samples = 0;
    int exact_matches = 0;
    int undecidable = 0;
    std::vector<Outcome> outcomes;  // one per sample, in sampling order
    std::vector<CheckFailure> failures;

    bool passed() const noexcept { return failures.empty() && exact_matches == samples; }
};

struct CheckOptions {
    BallDomain domain;
    int samples = 100;
    int prec = 64;
    std::uint64_t seed = 1;
    // Within-block differences keep valuation <= prec - 1 - min_sep; the
    // default leaves half the precision for the divisions.
    int min_sep = -1;

    int effective_min_sep() const noexcept { return min_sep >= 0 ? min_sep : prec / 2; }
};

// (f(x + t*y) - f(x))/t against sum_j y_j * f^{>e_j<}(x_1 + t*y_1, .., (x_j, x_j + t*y_j), .., x_d).
// About a quarter of the y components are drawn as exact zeros; their
// summands are dropped.
CheckReport check_fviaphi(const FieldMap& f, const CheckOptions& opt);

// (f^{>alpha<})^{>beta<} against f^{>alpha + bar beta<} on strict points whose
// flat layouts coincide.
CheckReport check_simpfml(const FieldMap& f, const MultiIndex& alpha, const MultiIndex& beta, const CheckOptions& opt);

// f^{>alpha<}(x) against f^{[|alpha|]}(theta_alpha(x)).
CheckReport check_transport(const FieldMap& f, const MultiIndex& alpha, const CheckOptions& opt);

// f^{>alpha<} at every within-block permutation of each sampled point.
CheckReport check_symmetry(const FieldMap& f, const MultiIndex& alpha, const CheckOptions& opt);

// dd_direct against dd_recursive.
CheckReport check_recursion(const FieldMap& f, const MultiIndex& alpha, const CheckOptions& opt);

} // namespace ultradiff
