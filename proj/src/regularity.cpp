#include "ultradiff/regularity.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "ultradiff/errors.hpp"
#include "ultradiff/parallel.hpp"
#include "ultradiff/sampler.hpp"

namespace ultradiff {

Rational Rational::make(long long num, long long den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    return g ? Rational{num / g, den / g} : Rational{0, 1};
}

std::string Rational::to_string() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

namespace {

long long ceil_div(long long a, long long b) {
    // b > 0
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

// Smallest c with v_out >= (k/2) * v_in - c over the pairs.
long long needed_constant(const std::vector<HolderPair>& pairs, int k) {
    long long c = std::numeric_limits<long long>::min();
    for (const auto& pr : pairs) c = std::max(c, ceil_div(static_cast<long long>(k) * pr.v_in - 2LL * pr.v_out, 2));
    return c;
}

LaurentSeries x_power(const PrimeField& F, int e, int prec) { return LaurentSeries::monomial(F, 1, e, prec); }

// Running supremum of |.| over many values, in the same sense as sup_abs.
class SupTracker {
public:
    void add(const LaurentSeries& v) {
        if (v.certified_nonzero()) {
            exact_ = exact_ ? std::min(*exact_, v.lead()) : v.lead();
        } else {
            bound_ = bound_ ? std::min(*bound_, v.prec()) : v.prec();
        }
    }
    bool empty() const { return !exact_ && !bound_; }
    AbsValue value() const {
        if (exact_ && (!bound_ || *exact_ < *bound_)) return AbsValue::exact(*exact_);
        return AbsValue::zero_to(bound_ ? *bound_ : 0);
    }

private:
    std::optional<int> exact_;
    std::optional<int> bound_;
};

} // namespace

bool HolderReport::self_certified() const {
    for (const auto& pr : pairs) {
        // v_out >= sigma * v_in - log_c, scaled by sigma.den
        if (static_cast<long long>(pr.v_out) * sigma.den <
            sigma.num * static_cast<long long>(pr.v_in) - static_cast<long long>(log_c) * sigma.den)
            return false;
    }
    return true;
}

HolderReport holder_estimate(const FieldMap& f, const BallDomain& U, int samples, int prec, std::uint64_t seed) {
    if (f.arity() != U.dim()) throw ShapeError("map arity does not match the domain dimension");
    if (prec < 4) throw ConfigError("precision must be at least 4");
    const PrimeField& F = U.field();
    int r_u = U.ball(0).radius;
    for (int i = 1; i < U.dim(); ++i) r_u = std::max(r_u, U.ball(i).radius);
    const int r_hi = r_u + prec / 2 - 1;
    const int split = r_u + prec / 4;

    Sampler s(U, prec, 0, seed);
    std::vector<std::pair<Point, Point>> pts;
    std::vector<int> depth;
    for (int n = 0; n < samples; ++n) {
        Point x = s.base_point();
        const int r = s.rng().between(r_u, r_hi);
        Point y;
        for (int i = 0; i < U.dim(); ++i)
            y.push_back(x[static_cast<std::size_t>(i)] + x_power(F, r, prec) * s.random_with_valuation(0));
        pts.emplace_back(std::move(x), std::move(y));
        depth.push_back(r);
    }

    std::vector<std::optional<int>> out(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        try {
            Values fx = f(pts[i].first);
            Values fy = f(pts[i].second);
            Values diff;
            for (std::size_t c = 0; c < fx.size(); ++c) diff.push_back(fx[c] - fy[c]);
            AbsValue a = sup_abs(diff);
            if (a.is_exact()) out[i] = a.neg_log();
        } catch (const PrecisionError&) {
        }
    });

    HolderReport rep;
    rep.field_p = F.characteristic();
    rep.prec = prec;
    rep.seed = seed;
    rep.samples = samples;
    std::vector<HolderPair> shallow, deep;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!out[i]) {
            ++rep.censored;
            continue;
        }
        HolderPair pr{depth[i], *out[i]};
        rep.pairs.push_back(pr);
        (pr.v_in >= split ? deep : shallow).push_back(pr);
    }
    if (rep.pairs.empty()) throw InsufficientPrecision("every sampled output difference was zero to precision");
    if (deep.empty() || shallow.empty())
        throw InsufficientPrecision("Hölder estimation needs uncensored pairs on both sides of the depth split");

    int best = 0;
    for (int k = 1; k <= 16; ++k) {
        if (needed_constant(deep, k) > needed_constant(shallow, k) + 1) break;
        best = k;
    }
    rep.sigma = Rational::make(best, 2);
    rep.log_c = static_cast<int>(needed_constant(rep.pairs, best));

    std::optional<Rational> slope;
    for (const auto& pr : deep) {
        if (pr.v_in <= 0) continue;
        Rational q = Rational::make(pr.v_out, pr.v_in);
        if (!slope || q.num * slope->den < slope->num * q.den) slope = q;
    }
    rep.deep_slope = slope.value_or(Rational{0, 1});
    rep.verdict = best ? "Hölder of exponent " + rep.sigma.to_string() + " with constant p^" + std::to_string(rep.log_c)
                       : "no Hölder exponent >= 1/2 supported by the sample";
    return rep;
}

BlockPoint gauss_witness(PrimeField field, int n, int prec) {
    return BlockPoint(MultiIndex({2}), {LaurentSeries::zero(field, prec), x_power(field, n, prec),
                                        x_power(field, n, prec) + x_power(field, n + 3, prec)});
}

Witness gauss_witness_for_levels(PrimeField field, int prec) {
    return [field, prec](int level) -> std::optional<BlockPoint> {
        int n = level - 3;
        if (n % 2) --n;
        if (n < 2 || n + 3 >= prec) return std::nullopt;
        return gauss_witness(field, n, prec);
    };
}

BoundednessTable dd_boundedness_scan(const FieldMap& f, const MultiIndex& alpha, const BallDomain& U,
                                     int samples_per_level, const std::vector<int>& levels, int prec,
                                     std::uint64_t seed, const Witness& witness) {
    BoundednessTable t;
    t.field_p = U.field().characteristic();
    t.prec = prec;
    t.seed = seed;
    t.alpha = alpha;
    SupTracker sup;
    for (std::size_t li = 0; li < levels.size(); ++li) {
        const int m = levels[li];
        if (m < 0 || m > prec - 1) throw ConfigError("separation level must lie in [0, prec - 1]");
        auto pts = sample_angle_points(U, alpha, samples_per_level, prec, prec - 1 - m, seed + li);
        if (witness)
            if (auto w = witness(m)) pts.push_back(*w);
        std::vector<std::optional<Values>> vals(pts.size());
        parallel_for(pts.size(), [&](std::size_t i) {
            try {
                vals[i] = dd_direct(f, pts[i]);
            } catch (const PrecisionError&) {
            }
        });
        int count = 0;
        for (const auto& v : vals) {
            if (!v) continue;
            ++count;
            for (const auto& c : *v) sup.add(c);
        }
        t.rows.push_back({m, count, sup.empty() ? AbsValue::zero_to(prec) : sup.value()});
    }
    t.monotone_growth = t.rows.size() > 1;
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
        const auto& a = t.rows[i - 1].sup;
        const auto& b = t.rows[i].sup;
        if (!a.is_exact() || !b.is_exact() || b.neg_log() >= a.neg_log()) t.monotone_growth = false;
    }
    return t;
}

int blowup_min_prec(int n_max) { return (3 * (n_max + 3) + 1) / 2 + 4; }

BlowupTable c2_blowup_scan(int n_max, int prec, PrimeField field) {
    if (n_max < 2 || n_max % 2) throw ConfigError("n_max must be an even integer >= 2");
    if (prec < blowup_min_prec(n_max)) {
        throw InsufficientPrecision("blow-up scan up to n = " + std::to_string(n_max) + " needs precision at least " +
                                    std::to_string(blowup_min_prec(n_max)));
    }
    const FieldMap f(parse_expr("phi32(x1)", 1, field));
    BlowupTable t;
    t.field_p = field.characteristic();
    t.prec = prec;
    t.n_max = n_max;
    for (int n = 2; n <= n_max; n += 2) {
        LaurentSeries v = dd_direct(f, gauss_witness(field, n, prec)).front();
        if (!v.certified_nonzero()) throw InsufficientPrecision("second divided difference not certified nonzero");
        t.rows.push_back({n, v, v.lead()});
    }
    t.strictly_increasing = true;
    t.matches_formula = true;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (t.rows[i].valuation != -t.rows[i].n / 2) t.matches_formula = false;
        if (i && t.rows[i].valuation != t.rows[i - 1].valuation - 1) t.strictly_increasing = false;
    }
    t.verdict = t.strictly_increasing && t.matches_formula
                    ? "second divided differences unbounded near 0: not C^2 in the divided-difference sense, "
                      "hence not C^2 in the difference-quotient sense"
                    : "blow-up pattern not observed";
    return t;
}

bool CounterexampleReport::passed() const {
    return holder_sandwich.ok() && additivity.ok() && phi2_zero.ok() && phi2_t1_zero.ok() && phi1_x_independent.ok() &&
           blowup.strictly_increasing && blowup.matches_formula;
}

namespace {

int count_true(const std::vector<char>& v) { return static_cast<int>(std::count(v.begin(), v.end(), 1)); }

SubCheck run_sub(std::string name, std::size_t n, const std::function<bool(std::size_t)>& pass) {
    std::vector<char> ok(n, 0);
    parallel_for(n, [&](std::size_t i) {
        try {
            ok[i] = pass(i) ? 1 : 0;
        } catch (const PrecisionError&) {
            ok[i] = 0;
        }
    });
    return {std::move(name), static_cast<int>(n), count_true(ok)};
}

} // namespace

CounterexampleReport counterexample_report(int n_max, int samples, int prec, std::uint64_t seed, PrimeField field) {
    if (samples < 1) throw ConfigError("samples must be positive");
    if (prec < blowup_min_prec(n_max)) {
        throw InsufficientPrecision("counterexample report up to n = " + std::to_string(n_max) +
                                    " needs precision at least " + std::to_string(blowup_min_prec(n_max)));
    }
    const FieldMap f(parse_expr("phi32(x1)", 1, field));
    const auto U = BallDomain::unit_polydisc(field, 1);
    Sampler s(U, prec, 0, seed);
    const auto n = static_cast<std::size_t>(samples);
    auto one = [](LaurentSeries v) { return Point{std::move(v)}; };

    CounterexampleReport rep;
    rep.field_p = field.characteristic();
    rep.prec = prec;
    rep.n_max = n_max;
    rep.samples = samples;
    rep.seed = seed;

    // (i) pairs at spread-out distances, starting with (X, 0)
    std::vector<std::pair<LaurentSeries, LaurentSeries>> pairs;
    pairs.emplace_back(x_power(field, 1, prec), LaurentSeries::zero(field, prec));
    while (pairs.size() < n) {
        LaurentSeries x = s.in_ball(0);
        const int r = s.rng().between(0, prec / 2 - 1);
        pairs.emplace_back(x, x + x_power(field, r, prec) * s.random_with_valuation(0));
    }
    rep.holder_sandwich = run_sub("holder_sandwich", n, [&](std::size_t i) {
        const auto& [x, y] = pairs[i];
        LaurentSeries d_in = x - y;
        LaurentSeries d_out = f(one(x))[0] - f(one(y))[0];
        if (!d_in.certified_nonzero() || !d_out.certified_nonzero()) return false;
        return d_out.lead() == (3 * d_in.lead()) / 2;
    });

    // (ii) additivity, starting with (X^2, X^5)
    std::vector<std::pair<LaurentSeries, LaurentSeries>> sums;
    sums.emplace_back(x_power(field, 2, prec), x_power(field, 5, prec));
    while (sums.size() < n) sums.emplace_back(s.in_ball(0), s.in_ball(0));
    rep.additivity = run_sub("additivity", n, [&](std::size_t i) {
        const auto& [x, y] = sums[i];
        auto r = compare_known(f(one(x + y))[0], f(one(x))[0] + f(one(y))[0]);
        return r.equal && r.informative;
    });

    // (iii) Phi_2 with t_1, t_2 nonzero, and the t_1 = 0 branch
    struct PhiArgs {
        Point x;
        std::vector<Point> xis;
        std::vector<LaurentSeries> ts;
    };
    std::vector<PhiArgs> args;
    while (args.size() < n) {
        PhiArgs a{one(s.in_ball(0)), {one(s.in_ball(0)), one(s.in_ball(0))}, {}};
        a.ts.push_back(s.random_with_valuation(s.rng().between(0, 4)));
        a.ts.push_back(s.random_with_valuation(s.rng().between(0, 4)));
        args.push_back(std::move(a));
    }
    rep.phi2_zero = run_sub("phi2_zero", n, [&](std::size_t i) {
        const auto& a = args[i];
        if (!member_phi(U, a.x, a.xis, a.ts, true)) return false;
        LaurentSeries v = phi_k(f, 2, a.x, a.xis, a.ts)[0];
        return v.is_zero_to_precision() && v.prec() > 0;
    });
    const int t_depth = prec / 2;
    rep.phi2_t1_zero = run_sub("phi2_t1_zero", n, [&](std::size_t i) {
        // Phi_1(x, xi, 0) is f'(x) xi = 0; certify that limit at both base
        // points the t_2 step uses, then Phi_2 = (0 - 0)/t_2 = 0.
        const auto& a = args[i];
        const Point moved = axpy(a.x, a.ts[1], a.xis[1]);
        for (const Point* base : {&a.x, &moved}) {
            for (int m = 1; m <= t_depth; ++m) {
                std::vector<LaurentSeries> t{x_power(field, m, prec)};
                LaurentSeries v = phi_k(f, 1, *base, std::span<const Point>(a.xis).first(1), t)[0];
                if (v.lead() < m / 2) return false;
            }
        }
        return true;
    });
    std::vector<Point> others;
    while (others.size() < n) others.push_back(one(s.in_ball(0)));
    rep.phi1_x_independent = run_sub("phi1_x_independent", n, [&](std::size_t i) {
        const auto& a = args[i];
        auto xis = std::span<const Point>(a.xis).first(1);
        auto ts = std::span<const LaurentSeries>(a.ts).first(1);
        auto r = compare_known(phi_k(f, 1, a.x, xis, ts)[0], phi_k(f, 1, others[i], xis, ts)[0]);
        return r.equal && r.informative;
    });

    // (iv)
    rep.blowup = c2_blowup_scan(n_max, prec, field);

    if (rep.passed()) {
        rep.verdict = "C^∞_Lud evidence complete; C^2 refuted.";
    } else {
        std::string failed;
        for (const SubCheck* c : {&rep.holder_sandwich, &rep.additivity, &rep.phi2_zero, &rep.phi2_t1_zero,
                                  &rep.phi1_x_independent})
            if (!c->ok()) failed += (failed.empty() ? "" : ", ") + c->name;
        if (!rep.blowup.strictly_increasing || !rep.blowup.matches_formula)
            failed += (failed.empty() ? "" : ", ") + std::string("blowup");
        rep.verdict = "counterexample evidence incomplete: " + failed;
    }
    return rep;
}

} // namespace ultradiff
