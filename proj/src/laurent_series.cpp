#include "ultradiff/laurent_series.hpp"

#include <algorithm>
#include <limits>

#include "ultradiff/errors.hpp"

namespace ultradiff {

int compare_abs(const AbsValue& a, const AbsValue& b) {
    if (a.exact_ && b.exact_) return (a.v_ == b.v_) ? 0 : (a.v_ > b.v_ ? -1 : 1);
    if (a.exact_ && !b.exact_) {
        if (a.v_ < b.v_) return 1;
        throw UndecidableAtPrecision("cannot compare |x| = p^-" + std::to_string(a.v_) + " with a value zero to precision " +
                                     std::to_string(b.v_));
    }
    if (!a.exact_ && b.exact_) return -compare_abs(b, a);
    throw UndecidableAtPrecision("cannot compare two values that are zero to precision");
}

std::string AbsValue::to_string(std::uint32_t p) const {
    std::string s = std::to_string(p) + "^" + std::to_string(-v_);
    return exact_ ? s : "<= " + s;
}

LaurentSeries::LaurentSeries(PrimeField field, int lead, std::vector<Residue> coeffs, int prec)
    : field_(field), lead_(std::min(lead, prec)), prec_(prec), coeffs_(std::move(coeffs)) {
    coeffs_.resize(static_cast<std::size_t>(prec_ - lead_), 0);
    for (auto& c : coeffs_) c %= field_.characteristic();
    normalize();
}

void LaurentSeries::normalize() {
    auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](Residue c) { return c != 0; });
    lead_ += static_cast<int>(first - coeffs_.begin());
    coeffs_.erase(coeffs_.begin(), first);
    if (coeffs_.empty()) lead_ = prec_;
}

LaurentSeries LaurentSeries::zero(PrimeField field, int prec) { return LaurentSeries(field, prec, {}, prec); }

LaurentSeries LaurentSeries::monomial(PrimeField field, Residue coeff, int exponent, int prec) {
    if (exponent >= prec) return zero(field, prec);
    return LaurentSeries(field, exponent, {coeff}, prec);
}

Residue LaurentSeries::coeff(int e) const {
    if (e >= prec_) {
        throw InsufficientPrecision("coefficient of X^" + std::to_string(e) + " unknown at precision " +
                                    std::to_string(prec_));
    }
    return coeff_or_zero(e);
}

LaurentSeries LaurentSeries::truncated(int prec) const {
    if (prec >= prec_) return *this;
    std::vector<Residue> c;
    if (prec > lead_) c.assign(coeffs_.begin(), coeffs_.begin() + (prec - lead_));
    return LaurentSeries(field_, std::min(lead_, prec), std::move(c), prec);
}

LaurentSeries LaurentSeries::shifted(int k) const {
    LaurentSeries r = *this;
    r.lead_ += k;
    r.prec_ += k;
    return r;
}

LaurentSeries LaurentSeries::operator-() const {
    LaurentSeries r = *this;
    for (auto& c : r.coeffs_) c = field_.neg(c);
    return r;
}

namespace {

LaurentSeries combine(const LaurentSeries& a, const LaurentSeries& b, bool subtract) {
    const PrimeField& F = a.field();
    int prec = std::min(a.prec(), b.prec());
    int lo = std::min({a.lead(), b.lead(), prec});
    std::vector<Residue> c(static_cast<std::size_t>(prec - lo));
    for (int e = lo; e < prec; ++e) {
        Residue x = (e >= a.lead()) ? a.coeff(e) : 0;
        Residue y = (e >= b.lead()) ? b.coeff(e) : 0;
        c[static_cast<std::size_t>(e - lo)] = subtract ? F.sub(x, y) : F.add(x, y);
    }
    return LaurentSeries(F, lo, std::move(c), prec);
}

void require_same_field(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.field() != b.field()) throw DomainError("operands live over different prime fields");
}

} // namespace

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    require_same_field(a, b);
    return combine(a, b, false);
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
    require_same_field(a, b);
    return combine(a, b, true);
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    require_same_field(a, b);
    const PrimeField& F = a.field_;
    // A zero-to-precision operand contributes its precision as a valuation bound.
    int prec = std::min(a.prec_ + b.lead_, b.prec_ + a.lead_);
    if (a.is_zero_to_precision() || b.is_zero_to_precision()) return LaurentSeries::zero(F, prec);
    int lo = a.lead_ + b.lead_;
    if (prec <= lo) return LaurentSeries::zero(F, prec);

    const std::uint64_t p = F.characteristic();
    const bool lazy_reduce = p < (1u << 16);
    std::vector<Residue> c(static_cast<std::size_t>(prec - lo));
    const int na = static_cast<int>(a.coeffs_.size());
    const int nb = static_cast<int>(b.coeffs_.size());
    for (int n = 0; n < prec - lo; ++n) {
        int i_lo = std::max(0, n - (nb - 1));
        int i_hi = std::min(n, na - 1);
        std::uint64_t acc = 0;
        for (int i = i_lo; i <= i_hi; ++i) {
            std::uint64_t term = std::uint64_t{a.coeffs_[static_cast<std::size_t>(i)]} * b.coeffs_[static_cast<std::size_t>(n - i)];
            acc = lazy_reduce ? acc + term : (acc + term % p) % p;
        }
        c[static_cast<std::size_t>(n)] = static_cast<Residue>(acc % p);
    }
    return LaurentSeries(F, lo, std::move(c), prec);
}

LaurentSeries LaurentSeries::inverse() const {
    if (is_zero_to_precision()) {
        throw ZeroDivisorToPrecision("division by a value that is zero to precision " + std::to_string(prec_));
    }
    // x = X^v * u with u a unit known to relative precision r; 1/u is known to
    // the same relative precision, so 1/x is known up to X^(prec - 2v).
    const int v = lead_;
    const int r = prec_ - v;
    const auto& u = coeffs_;
    std::vector<Residue> w(static_cast<std::size_t>(r));
    const Residue u0_inv = field_.inv(u[0]);
    w[0] = u0_inv;
    for (int n = 1; n < r; ++n) {
        std::uint64_t acc = 0;
        const int kmax = std::min(n, static_cast<int>(u.size()) - 1);
        for (int k = 1; k <= kmax; ++k) {
            acc = (acc + std::uint64_t{u[static_cast<std::size_t>(k)]} * w[static_cast<std::size_t>(n - k)]) %
                  field_.characteristic();
        }
        w[static_cast<std::size_t>(n)] = field_.neg(field_.mul(u0_inv, static_cast<Residue>(acc)));
    }
    return LaurentSeries(field_, -v, std::move(w), prec_ - 2 * v);
}

LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) {
    require_same_field(a, b);
    return a * b.inverse();
}

LaurentSeries LaurentSeries::pow(unsigned n) const {
    // x^0 = 1, reported at the absolute precision of x.
    LaurentSeries result = one(field_, std::max(prec_, 1));
    LaurentSeries base = *this;
    bool first = true;
    while (n) {
        if (n & 1u) {
            result = first ? base : result * base;
            first = false;
        }
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

AbsValue valuation_abs(const LaurentSeries& x) {
    return x.is_zero_to_precision() ? AbsValue::zero_to(x.prec()) : AbsValue::exact(x.lead());
}

Agreement compare_known(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.field() != b.field()) return {false, std::min(a.prec(), b.prec()), true};
    const int common = std::min(a.prec(), b.prec());
    const int lo = std::min(a.lead(), b.lead());
    bool equal = true;
    for (int e = lo; e < common; ++e) {
        if (a.coeff(e) != b.coeff(e)) {
            equal = false;
            break;
        }
    }
    bool informative = (lo < common) || common > 0;
    return {equal, common, informative};
}

AbsValue sup_abs(std::span<const LaurentSeries> v) {
    int min_exact = std::numeric_limits<int>::max();
    int min_bound = std::numeric_limits<int>::max();
    for (const auto& x : v) {
        if (x.is_zero_to_precision())
            min_bound = std::min(min_bound, x.prec());
        else
            min_exact = std::min(min_exact, x.lead());
    }
    if (min_exact < min_bound) return AbsValue::exact(min_exact);
    return AbsValue::zero_to(min_bound);
}

} // namespace ultradiff
