#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "ultradiff/prime_field.hpp"

namespace ultradiff {

// |x| = p^{-v} for an exact valuation v, or only the bound |x| <= p^{-N}
// when x is zero to precision N.
class AbsValue {
public:
    static AbsValue exact(int valuation) { return AbsValue(true, valuation); }
    static AbsValue zero_to(int prec) { return AbsValue(false, prec); }

    bool is_exact() const noexcept { return exact_; }
    // Valuation when exact, otherwise the precision bound N.
    int neg_log() const noexcept { return v_; }

    // Orders by magnitude: negative if |a| < |b|. Throws UndecidableAtPrecision
    // when a precision bound does not separate the two.
    friend int compare_abs(const AbsValue& a, const AbsValue& b);

    // "2^-3" or "<= 2^-16"
    std::string to_string(std::uint32_t p) const;

    friend bool operator==(const AbsValue&, const AbsValue&) = default;

private:
    AbsValue(bool exact, int v) : exact_(exact), v_(v) {}
    bool exact_;
    int v_;
};

// Truncated formal Laurent series over F_p: the known window covers exponents
// [lead, prec); everything at exponent >= prec is unknown (the O(X^prec) tail).
// Normalized so that lead is the valuation when some known coefficient is
// nonzero; a value with no known nonzero coefficient is "zero to precision
// prec" and stores no coefficients.
class LaurentSeries {
public:
    LaurentSeries(PrimeField field, int lead, std::vector<Residue> coeffs, int prec);

    static LaurentSeries zero(PrimeField field, int prec);
    static LaurentSeries monomial(PrimeField field, Residue coeff, int exponent, int prec);
    static LaurentSeries one(PrimeField field, int prec) { return monomial(field, 1, 0, prec); }

    const PrimeField& field() const noexcept { return field_; }
    std::uint32_t p() const noexcept { return field_.characteristic(); }
    int prec() const noexcept { return prec_; }
    // Valuation if nonzero, otherwise prec.
    int lead() const noexcept { return lead_; }
    bool is_zero_to_precision() const noexcept { return coeffs_.empty(); }
    bool certified_nonzero() const noexcept { return !coeffs_.empty(); }
    std::span<const Residue> coefficients() const noexcept { return coeffs_; }

    // Coefficient of X^e; throws InsufficientPrecision when e >= prec.
    Residue coeff(int e) const;

    LaurentSeries truncated(int prec) const;
    LaurentSeries shifted(int k) const;  // multiplication by X^k
    LaurentSeries inverse() const;       // ZeroDivisorToPrecision if zero to precision
    LaurentSeries pow(unsigned n) const;

    LaurentSeries operator-() const;
    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b);

    // Representation equality: same window, same precision.
    friend bool operator==(const LaurentSeries&, const LaurentSeries&) = default;

private:
    void normalize();
    Residue coeff_or_zero(int e) const noexcept {
        int i = e - lead_;
        return (i < 0 || i >= static_cast<int>(coeffs_.size())) ? 0 : coeffs_[static_cast<std::size_t>(i)];
    }

    PrimeField field_;
    int lead_;
    int prec_;
    std::vector<Residue> coeffs_;
};

AbsValue valuation_abs(const LaurentSeries& x);

// Agreement on the common known window [.., min(prec_a, prec_b)).
struct Agreement {
    bool equal;
    int common_prec;
    // True when the comparison touched at least one coefficient that was not
    // below both values' valuations, i.e. it certified something.
    bool informative;
};
Agreement compare_known(const LaurentSeries& a, const LaurentSeries& b);

// Smallest valuation over a vector (sup norm on K^n). Exact when some
// component has a valuation below every precision bound.
AbsValue sup_abs(std::span<const LaurentSeries> v);

} // namespace ultradiff
