#include "ultradiff/checks.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "ultradiff/errors.hpp"
#include "ultradiff/parallel.hpp"
#include "ultradiff/sampler.hpp"

namespace ultradiff {

Outcome compare_values(const Values& lhs, const Values& rhs) {
    if (lhs.size() != rhs.size()) return Outcome::Failure;
    bool informative = false;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        Agreement a = compare_known(lhs[i], rhs[i]);
        if (!a.equal) return Outcome::Failure;
        informative = informative || a.informative;
    }
    return informative ? Outcome::Match : Outcome::Undecidable;
}

namespace {

struct Evaluated {
    Outcome outcome = Outcome::Undecidable;
    Values lhs;
    Values rhs;
    Point point;
};

using Evaluator = std::function<Evaluated(std::size_t)>;

CheckReport run_check(std::string op, const PrimeField& field, const CheckOptions& opt, std::size_t count,
                      const Evaluator& eval) {
    std::vector<Evaluated> results(count);
    parallel_for(count, [&](std::size_t i) {
        try {
            results[i] = eval(i);
        } catch (const PrecisionError&) {
            results[i].outcome = Outcome::Undecidable;
        }
    });
    CheckReport r;
    r.op = std::move(op);
    r.field_p = field.characteristic();
    r.prec = opt.prec;
    r.seed = opt.seed;
    r.samples = static_cast<int>(count);
    for (auto& e : results) {
        r.outcomes.push_back(e.outcome);
        if (e.outcome == Outcome::Match) ++r.exact_matches;
        if (e.outcome == Outcome::Undecidable) ++r.undecidable;
        if (e.outcome == Outcome::Failure) r.failures.push_back({std::move(e.point), std::move(e.lhs), std::move(e.rhs)});
    }
    return r;
}

Evaluated compared(Point point, Values lhs, Values rhs) {
    Evaluated e;
    e.outcome = compare_values(lhs, rhs);
    e.point = std::move(point);
    e.lhs = std::move(lhs);
    e.rhs = std::move(rhs);
    return e;
}

void require_domain(const FieldMap& f, const CheckOptions& opt) {
    if (f.arity() != opt.domain.dim()) {
        throw ShapeError("map of arity " + std::to_string(f.arity()) + " checked on a domain of dimension " +
                         std::to_string(opt.domain.dim()));
    }
}

std::vector<BlockPoint> sample_strict(const MultiIndex& alpha, const CheckOptions& opt) {
    return sample_angle_points(opt.domain, alpha, opt.samples, opt.prec, opt.effective_min_sep(), opt.seed);
}

struct FviaphiSample {
    Point x;
    Point y;
    LaurentSeries t;
};

} // namespace

CheckReport check_fviaphi(const FieldMap& f, const CheckOptions& opt) {
    require_domain(f, opt);
    const int d = f.arity();
    const PrimeField& F = opt.domain.field();
    Sampler s(opt.domain, opt.prec, opt.effective_min_sep(), opt.seed);
    std::vector<FviaphiSample> pts;
    for (int n = 0; n < opt.samples; ++n) {
        Point x = s.base_point();
        LaurentSeries t = s.random_with_valuation(s.rng().between(0, 3));
        const LaurentSeries t_inv = t.inverse();
        Point y;
        for (int j = 0; j < d; ++j) {
            if (s.rng().chance(1, 4)) {
                y.push_back(LaurentSeries::zero(F, 1 << 20));
                continue;
            }
            const auto& xj = x[static_cast<std::size_t>(j)];
            LaurentSeries w = s.retry([&] { return s.in_ball(j); }, [&](const LaurentSeries& c) { return s.separated(c, xj); },
                                      "a moved coordinate");
            y.push_back((w - xj) * t_inv);
        }
        pts.push_back({std::move(x), std::move(y), std::move(t)});
    }

    return run_check("fviaphi", F, opt, pts.size(), [&](std::size_t i) {
        const auto& [x, y, t] = pts[i];
        Values lhs = dq1(f, x, y, t);
        Point moved = axpy(x, t, y);
        Values rhs;
        for (int j = 0; j < d; ++j) {
            const auto jj = static_cast<std::size_t>(j);
            if (y[jj].is_zero_to_precision()) continue;
            Point flat;
            for (int c = 0; c < d; ++c) {
                const auto cc = static_cast<std::size_t>(c);
                if (c < j) flat.push_back(moved[cc]);
                if (c == j) {
                    flat.push_back(x[cc]);
                    flat.push_back(moved[cc]);
                }
                if (c > j) flat.push_back(x[cc]);
            }
            Values term = dd_direct(f, BlockPoint(MultiIndex::unit(d, j), std::move(flat)));
            for (auto& v : term) v = v * y[jj];
            if (rhs.empty()) {
                rhs = std::move(term);
            } else {
                for (std::size_t c = 0; c < rhs.size(); ++c) rhs[c] = rhs[c] + term[c];
            }
        }
        if (rhs.empty()) rhs.assign(lhs.size(), LaurentSeries::zero(F, 1 << 20));
        Point point = x;
        point.insert(point.end(), y.begin(), y.end());
        point.push_back(t);
        return compared(std::move(point), std::move(lhs), std::move(rhs));
    });
}

CheckReport check_simpfml(const FieldMap& f, const MultiIndex& alpha, const MultiIndex& beta, const CheckOptions& opt) {
    require_domain(f, opt);
    const MultiIndex combined = alpha + flatten_multiindex(alpha, beta);
    const FieldMap inner = divided_difference_map(f, alpha);
    auto pts = sample_strict(combined, opt);
    return run_check("simpfml", opt.domain.field(), opt, pts.size(), [&](std::size_t i) {
        const Point& flat = pts[i].flat();
        Values lhs = dd_direct(inner, BlockPoint(beta, flat));
        Values rhs = dd_direct(f, pts[i]);
        return compared(flat, std::move(lhs), std::move(rhs));
    });
}

CheckReport check_transport(const FieldMap& f, const MultiIndex& alpha, const CheckOptions& opt) {
    require_domain(f, opt);
    const AffineMap theta = theta_alpha(alpha);
    auto pts = sample_strict(alpha, opt);
    return run_check("theta", opt.domain.field(), opt, pts.size(), [&](std::size_t i) {
        Values lhs = dd_direct(f, pts[i]);
        Values rhs = dq_iter(f, alpha.order(), theta.apply(pts[i].flat()));
        return compared(pts[i].flat(), std::move(lhs), std::move(rhs));
    });
}

CheckReport check_symmetry(const FieldMap& f, const MultiIndex& alpha, const CheckOptions& opt) {
    require_domain(f, opt);
    auto pts = sample_strict(alpha, opt);
    const int d = alpha.dim();
    return run_check("symmetry", opt.domain.field(), opt, pts.size(), [&](std::size_t i) {
        const BlockPoint& x = pts[i];
        const Values base = dd_direct(f, x);
        std::vector<std::vector<int>> perm(static_cast<std::size_t>(d));
        for (int b = 0; b < d; ++b) {
            perm[static_cast<std::size_t>(b)].resize(static_cast<std::size_t>(alpha[b] + 1));
            std::iota(perm[static_cast<std::size_t>(b)].begin(), perm[static_cast<std::size_t>(b)].end(), 0);
        }
        bool informative = false;
        bool permuted = false;
        // odometer over the product of all block permutations
        while (true) {
            int b = 0;
            for (; b < d; ++b)
                if (std::next_permutation(perm[static_cast<std::size_t>(b)].begin(), perm[static_cast<std::size_t>(b)].end()))
                    break;
            if (b == d) break;
            Point flat = x.flat();
            for (int blk = 0; blk < d; ++blk)
                for (std::size_t j = 0; j < perm[static_cast<std::size_t>(blk)].size(); ++j)
                    flat[static_cast<std::size_t>(alpha.block_start(blk)) + j] = x.at(blk, perm[static_cast<std::size_t>(blk)][j]);
            Values v = dd_direct(f, BlockPoint(alpha, flat));
            Outcome o = compare_values(base, v);
            if (o == Outcome::Failure) return compared(std::move(flat), base, std::move(v));
            informative = informative || o == Outcome::Match;
            permuted = true;
        }
        Evaluated e;
        e.outcome = permuted ? (informative ? Outcome::Match : Outcome::Undecidable) : compare_values(base, base);
        return e;
    });
}

CheckReport check_recursion(const FieldMap& f, const MultiIndex& alpha, const CheckOptions& opt) {
    require_domain(f, opt);
    auto pts = sample_strict(alpha, opt);
    return run_check("recursion", opt.domain.field(), opt, pts.size(), [&](std::size_t i) {
        return compared(pts[i].flat(), dd_direct(f, pts[i]), dd_recursive(f, pts[i]));
    });
}

} // namespace ultradiff
