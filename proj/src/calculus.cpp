#include "ultradiff/calculus.hpp"

#include <algorithm>
#include <optional>

#include "ultradiff/errors.hpp"

namespace ultradiff {

FieldMap::FieldMap(int arity, int coarity, Fn fn) : arity_(arity), coarity_(coarity), fn_(std::move(fn)) {}

FieldMap::FieldMap(const Expr& f)
    : arity_(f.arity()), coarity_(f.coarity()), fn_([f](std::span<const LaurentSeries> x) { return eval_expr(f, x); }) {}

Values FieldMap::operator()(std::span<const LaurentSeries> x) const {
    if (static_cast<int>(x.size()) != arity_) {
        throw ShapeError("map of arity " + std::to_string(arity_) + " applied to " + std::to_string(x.size()) +
                         " coordinates");
    }
    return fn_(x);
}

namespace {

void require_arity(const FieldMap& f, const MultiIndex& alpha) {
    if (f.arity() != alpha.dim()) {
        throw ShapeError("multi-index " + alpha.to_string() + " does not match arity " + std::to_string(f.arity()));
    }
}

void require_strict(const BlockPoint& x) {
    for (int i = 0; i < x.alpha().dim(); ++i) {
        auto b = x.block(i);
        for (std::size_t j = 0; j < b.size(); ++j)
            for (std::size_t k = j + 1; k < b.size(); ++k)
                if ((b[j] - b[k]).is_zero_to_precision()) {
                    throw UndecidableAtPrecision("entries " + std::to_string(j) + " and " + std::to_string(k) +
                                                 " of block " + std::to_string(i + 1) +
                                                 " are not certified distinct");
                }
    }
}

void require_informative(const Values& v) {
    for (const auto& c : v)
        if (c.is_zero_to_precision() && c.prec() <= 0) {
            throw InsufficientPrecision("divided difference is zero only to precision " + std::to_string(c.prec()));
        }
}

void accumulate(Values& acc, const Values& term) {
    if (acc.empty()) {
        acc = term;
        return;
    }
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = acc[i] + term[i];
}

Values scale(Values v, const LaurentSeries& s) {
    for (auto& c : v) c = c * s;
    return v;
}

Values difference(const Values& a, const Values& b) {
    Values r;
    r.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.push_back(a[i] - b[i]);
    return r;
}

LaurentSeries certified_inverse(const LaurentSeries& t, const char* what) {
    if (t.is_zero_to_precision()) throw UndecidableAtPrecision(std::string(what) + " is not certified nonzero");
    return t.inverse();
}

} // namespace

Values dd_direct(const FieldMap& f, const BlockPoint& x) {
    const MultiIndex& alpha = x.alpha();
    require_arity(f, alpha);
    if (alpha.order() == 0) return f(x.flat());
    require_strict(x);

    const int d = alpha.dim();
    // weights[i][j] = prod_{k != j} 1/(x^(i)_j - x^(i)_k)
    std::vector<std::vector<LaurentSeries>> weights(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        auto b = x.block(i);
        for (std::size_t j = 0; j < b.size(); ++j) {
            LaurentSeries denom = LaurentSeries::one(b[j].field(), b[j].prec());
            bool first = true;
            for (std::size_t k = 0; k < b.size(); ++k) {
                if (k == j) continue;
                denom = first ? (b[j] - b[k]) : denom * (b[j] - b[k]);
                first = false;
            }
            weights[static_cast<std::size_t>(i)].push_back(first ? denom : denom.inverse());
        }
    }

    Values total;
    std::vector<int> sel(static_cast<std::size_t>(d), 0);
    Point arg(static_cast<std::size_t>(d), x.flat().front());
    while (true) {
        std::optional<LaurentSeries> w;
        for (int i = 0; i < d; ++i) {
            const auto ji = static_cast<std::size_t>(sel[static_cast<std::size_t>(i)]);
            arg[static_cast<std::size_t>(i)] = x.block(i)[ji];
            const LaurentSeries& wi = weights[static_cast<std::size_t>(i)][ji];
            if (alpha[i] > 0) w = w ? *w * wi : wi;
        }
        accumulate(total, scale(f(arg), *w));
        int i = 0;
        for (; i < d; ++i) {
            auto& s = sel[static_cast<std::size_t>(i)];
            if (++s <= alpha[i]) break;
            s = 0;
        }
        if (i == d) break;
    }
    require_informative(total);
    return total;
}

namespace {

Values dd_recursive_impl(const FieldMap& f, const BlockPoint& x) {
    const MultiIndex& alpha = x.alpha();
    if (alpha.order() == 0) return f(x.flat());
    int i = 0;
    while (alpha[i] == 0) ++i;
    std::vector<int> beta_entries = alpha.entries();
    --beta_entries[static_cast<std::size_t>(i)];
    MultiIndex beta(std::move(beta_entries));

    const int a = alpha[i];
    const auto start = static_cast<std::size_t>(alpha.block_start(i));
    const auto end = static_cast<std::size_t>(alpha.block_start(i + 1));
    const Point& flat = x.flat();
    // Block i minus its last entry, then with x_a moved into slot 0.
    Point first(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(end - 1));
    first.insert(first.end(), flat.begin() + static_cast<std::ptrdiff_t>(end), flat.end());
    Point second = first;
    second[start] = flat[start + static_cast<std::size_t>(a)];

    Values lhs = dd_recursive_impl(f, BlockPoint(beta, std::move(first)));
    Values rhs = dd_recursive_impl(f, BlockPoint(beta, std::move(second)));
    LaurentSeries inv = certified_inverse(flat[start] - flat[start + static_cast<std::size_t>(a)], "x_0 - x_a");
    return scale(difference(lhs, rhs), inv);
}

} // namespace

Values dd_recursive(const FieldMap& f, const BlockPoint& x) {
    require_arity(f, x.alpha());
    if (x.alpha().order() == 0) return f(x.flat());
    require_strict(x);
    Values v = dd_recursive_impl(f, x);
    require_informative(v);
    return v;
}

FieldMap divided_difference_map(const FieldMap& f, const MultiIndex& alpha) {
    require_arity(f, alpha);
    return FieldMap(alpha.flat_size(), f.coarity(), [f, alpha](std::span<const LaurentSeries> x) {
        return dd_direct(f, BlockPoint(alpha, Point(x.begin(), x.end())));
    });
}

Values dq1(const FieldMap& f, std::span<const LaurentSeries> x, std::span<const LaurentSeries> y, const LaurentSeries& t) {
    if (static_cast<int>(x.size()) != f.arity() || y.size() != x.size()) throw ShapeError("dq1: x and y need the map's arity");
    LaurentSeries inv = certified_inverse(t, "t");
    return scale(difference(f(axpy(x, t, y)), f(x)), inv);
}

Values dq_iter(const FieldMap& f, int k, std::span<const LaurentSeries> z) {
    if (k < 0) throw ShapeError("dq_iter: order must be non-negative");
    if (k == 0) return f(z);
    auto [x, y, t] = split_bracket(z, f.arity(), k);
    LaurentSeries inv = certified_inverse(t, "t-slot");
    Point moved = axpy(x, t, y);
    return scale(difference(dq_iter(f, k - 1, moved), dq_iter(f, k - 1, x)), inv);
}

Values phi_k(const FieldMap& f, int k, std::span<const LaurentSeries> x, std::span<const Point> xis,
             std::span<const LaurentSeries> ts) {
    if (k < 0 || static_cast<int>(xis.size()) < k || static_cast<int>(ts.size()) < k)
        throw ShapeError("phi_k: need k directions and k parameters");
    if (k == 0) return f(x);
    const auto last = static_cast<std::size_t>(k - 1);
    if (xis[last].size() != x.size()) throw ShapeError("phi_k: direction dimension mismatch");
    LaurentSeries inv = certified_inverse(ts[last], "t_k");
    Point moved = axpy(x, ts[last], xis[last]);
    return scale(difference(phi_k(f, k - 1, moved, xis, ts), phi_k(f, k - 1, x, xis, ts)), inv);
}

bool member_phi(const BallDomain& U, std::span<const LaurentSeries> x, std::span<const Point> xis,
                std::span<const LaurentSeries> ts, bool strict) {
    const std::size_t k = std::min(xis.size(), ts.size());
    if (k == 0) return U.contains(x);
    if (strict && ts[k - 1].is_zero_to_precision()) return false;
    auto sub_xis = xis.first(k - 1);
    auto sub_ts = ts.first(k - 1);
    if (k == 1) return U.contains(x) && U.contains(axpy(x, ts[0], xis[0]));
    return member_phi(U, x, sub_xis, sub_ts, strict) &&
           member_phi(U, axpy(x, ts[k - 1], xis[k - 1]), sub_xis, sub_ts, strict);
}

AffineMap::AffineMap(int source_dim, int target_dim, std::vector<int> matrix, std::vector<int> offset)
    : m_(source_dim), n_(target_dim), matrix_(std::move(matrix)), offset_(std::move(offset)) {
    if (matrix_.size() != static_cast<std::size_t>(m_) * static_cast<std::size_t>(n_) ||
        offset_.size() != static_cast<std::size_t>(n_))
        throw ShapeError("affine map: matrix/offset shape mismatch");
}

AffineMap AffineMap::identity(int dim) {
    std::vector<int> m(static_cast<std::size_t>(dim * dim), 0);
    for (int i = 0; i < dim; ++i) m[static_cast<std::size_t>(i * dim + i)] = 1;
    return AffineMap(dim, dim, std::move(m), std::vector<int>(static_cast<std::size_t>(dim), 0));
}

Point AffineMap::apply(std::span<const LaurentSeries> x) const {
    if (static_cast<int>(x.size()) != m_) throw ShapeError("affine map applied to a point of the wrong dimension");
    const PrimeField& F = x.front().field();
    int prec = x.front().prec();
    for (const auto& c : x) prec = std::max(prec, c.prec());
    Point out;
    out.reserve(static_cast<std::size_t>(n_));
    for (int r = 0; r < n_; ++r) {
        LaurentSeries acc = LaurentSeries::monomial(F, F.reduce(offset(r)), 0, prec);
        for (int c = 0; c < m_; ++c) {
            const int e = entry(r, c);
            const auto& xc = x[static_cast<std::size_t>(c)];
            if (e == 0) continue;
            if (e == 1)
                acc = acc + xc;
            else if (e == -1)
                acc = acc - xc;
            else
                acc = acc + LaurentSeries::monomial(F, F.reduce(e), 0, prec) * xc;
        }
        out.push_back(std::move(acc));
    }
    return out;
}

AffineMap AffineMap::compose(const AffineMap& inner) const {
    if (inner.n_ != m_) throw ShapeError("affine maps do not compose: dimension mismatch");
    std::vector<int> m(static_cast<std::size_t>(n_ * inner.m_), 0);
    std::vector<int> o(static_cast<std::size_t>(n_), 0);
    for (int r = 0; r < n_; ++r) {
        o[static_cast<std::size_t>(r)] = offset(r);
        for (int k = 0; k < m_; ++k) {
            const int e = entry(r, k);
            if (e == 0) continue;
            o[static_cast<std::size_t>(r)] += e * inner.offset(k);
            for (int c = 0; c < inner.m_; ++c) m[static_cast<std::size_t>(r * inner.m_ + c)] += e * inner.entry(k, c);
        }
    }
    return AffineMap(inner.m_, n_, std::move(m), std::move(o));
}

AffineMap theta_alpha(const MultiIndex& alpha) {
    const int d = alpha.dim();
    if (alpha.order() == 0) return AffineMap::identity(d);
    int i = 0;
    while (alpha[i] == 0) ++i;
    std::vector<int> beta_entries = alpha.entries();
    --beta_entries[static_cast<std::size_t>(i)];
    const MultiIndex beta(std::move(beta_entries));
    const AffineMap inner = theta_alpha(beta);

    const int src = alpha.flat_size();
    const int mid = beta.flat_size();
    const int a = alpha[i];
    const int start = alpha.block_start(i);

    // Selection x -> x' on K^{d+|beta|}: block i becomes (x_a, x_1, .., x_{a-1}).
    std::vector<int> sel_cols;
    for (int c = 0; c < start; ++c) sel_cols.push_back(c);
    sel_cols.push_back(start + a);
    for (int c = start + 1; c < start + a; ++c) sel_cols.push_back(c);
    for (int c = start + a + 1; c < src; ++c) sel_cols.push_back(c);
    std::vector<int> sel(static_cast<std::size_t>(mid * src), 0);
    for (int r = 0; r < mid; ++r) sel[static_cast<std::size_t>(r * src + sel_cols[static_cast<std::size_t>(r)])] = 1;
    const AffineMap base = inner.compose(AffineMap(src, mid, std::move(sel), std::vector<int>(static_cast<std::size_t>(mid), 0)));

    const int inner_dim = inner.target_dim();
    const int tgt = 2 * inner_dim + 1;
    const int unit_col = beta.block_start(i);
    std::vector<int> m(static_cast<std::size_t>(tgt * src), 0);
    std::vector<int> o(static_cast<std::size_t>(tgt), 0);
    for (int r = 0; r < inner_dim; ++r) {
        for (int c = 0; c < src; ++c) m[static_cast<std::size_t>(r * src + c)] = base.entry(r, c);
        o[static_cast<std::size_t>(r)] = base.offset(r);
        o[static_cast<std::size_t>(inner_dim + r)] = inner.entry(r, unit_col);  // lambda_beta(e_s)
    }
    m[static_cast<std::size_t>((tgt - 1) * src + start)] = 1;
    m[static_cast<std::size_t>((tgt - 1) * src + start + a)] = -1;
    return AffineMap(src, tgt, std::move(m), std::move(o));
}

MultiIndex flatten_multiindex(const MultiIndex& alpha, const MultiIndex& beta) {
    if (beta.dim() != alpha.flat_size()) {
        throw ShapeError("beta has " + std::to_string(beta.dim()) + " entries, expected d + |alpha| = " +
                         std::to_string(alpha.flat_size()));
    }
    std::vector<int> bar(static_cast<std::size_t>(alpha.dim()), 0);
    for (int j = 0; j < alpha.dim(); ++j)
        for (int c = alpha.block_start(j); c < alpha.block_start(j + 1); ++c) bar[static_cast<std::size_t>(j)] += beta[c];
    return MultiIndex(std::move(bar));
}

} // namespace ultradiff
