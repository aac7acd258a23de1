#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ultradiff/calculus.hpp"
#include "ultradiff/errors.hpp"
#include "ultradiff/sampler.hpp"
#include "ultradiff/series_format.hpp"

using namespace ultradiff;

namespace {

const PrimeField F2(2);

LaurentSeries s2(const char* text, int prec = 32) { return parse_series(text, F2, prec); }

FieldMap map_of(const char* text, int d, PrimeField F = F2) { return FieldMap(parse_expr(text, d, F)); }

bool same(const LaurentSeries& a, const LaurentSeries& b) {
    auto r = compare_known(a, b);
    return r.equal && r.informative;
}

std::vector<std::vector<LaurentSeries>> blocks_of(const BlockPoint& x) {
    std::vector<std::vector<LaurentSeries>> out;
    for (int i = 0; i < x.alpha().dim(); ++i) out.emplace_back(x.block(i).begin(), x.block(i).end());
    return out;
}

int max_prec(const Point& x) {
    int p = x.front().prec();
    for (const auto& c : x) p = std::max(p, c.prec());
    return p;
}

std::vector<MultiIndex> indices_up_to(int d, int max_order) {
    std::vector<MultiIndex> out;
    std::vector<int> a(static_cast<std::size_t>(d), 0);
    while (true) {
        if (std::accumulate(a.begin(), a.end(), 0) <= max_order) out.emplace_back(a);
        int i = 0;
        for (; i < d; ++i) {
            if (++a[static_cast<std::size_t>(i)] <= max_order) break;
            a[static_cast<std::size_t>(i)] = 0;
        }
        if (i == d) break;
    }
    return out;
}

} // namespace

TEST_CASE("dd_direct examples") {
    auto sq = map_of("x1^2", 1);
    auto v1 = dd_direct(sq, BlockPoint(MultiIndex({1}), {s2("1"), s2("X")}));
    CHECK(to_string(v1[0]) == "1 + X + O(X^32)");

    auto v2 = dd_direct(sq, BlockPoint(MultiIndex({2}), {s2("1"), s2("X"), s2("X^2")}));
    CHECK(same(v2[0], LaurentSeries::one(F2, 100)));

    auto g = map_of("phi32(x1)", 1);
    BlockPoint triple(MultiIndex({2}), {s2("0"), s2("X^2"), s2("X^2 + X^5")});
    auto v3 = dd_direct(g, triple);
    REQUIRE(v3[0].certified_nonzero());
    CHECK(v3[0].lead() == -1);
    CHECK(valuation_abs(v3[0]).to_string(2) == "2^1");
    CHECK(same(v3[0], (s2("X") + s2("X^2")) / (s2("X^2") + s2("X^5"))));

    // alpha = 0 is plain evaluation
    auto v0 = dd_direct(sq, BlockPoint(MultiIndex({0}), {s2("1 + X")}));
    CHECK(v0[0] == s2("1 + X^2"));

    CHECK_THROWS_AS(dd_direct(sq, BlockPoint(MultiIndex({1}), {s2("X"), s2("X")})), UndecidableAtPrecision);
    CHECK_THROWS_AS(dd_direct(sq, BlockPoint(MultiIndex({1, 0}), {s2("X"), s2("1"), s2("0")})), ShapeError);
}

TEST_CASE("dd_recursive examples") {
    auto sq = map_of("x1^2", 1);
    auto v = dd_recursive(sq, BlockPoint(MultiIndex({2}), {s2("1"), s2("X"), s2("X^2")}));
    CHECK(same(v[0], LaurentSeries::one(F2, 100)));

    auto prod = map_of("x1*x2", 2);
    BlockPoint mixed(MultiIndex({1, 1}), {s2("1"), s2("X"), s2("1"), s2("X")});
    CHECK(same(dd_recursive(prod, mixed)[0], LaurentSeries::one(F2, 100)));
    CHECK(same(dd_direct(prod, mixed)[0], LaurentSeries::one(F2, 100)));

    auto v0 = dd_recursive(prod, BlockPoint(MultiIndex({0, 0}), {s2("X"), s2("X^2")}));
    CHECK(same(v0[0], s2("X^3")));
}

TEST_CASE("dd consistency against the monomial oracle") {
    std::mt19937_64 rng(2024);
    int cases = 0;
    for (std::uint32_t p : {2u, 3u, 5u}) {
        PrimeField F(p);
        for (int d = 1; d <= 2; ++d) {
            auto U = BallDomain::unit_polydisc(F, d);
            Sampler sampler(U, 48, 24, rng());
            for (const auto& alpha : indices_up_to(d, 4)) {
                for (int trial = 0; trial < 4; ++trial) {
                    auto poly = oracle::random_multipoly(rng, p, d, 6, 4);
                    FieldMap f(parse_expr(poly.text(), d, F));
                    auto x = sampler.strict_angle(alpha);
                    auto direct = dd_direct(f, x);
                    auto recursive = dd_recursive(f, x);
                    auto expected = oracle::dd_polynomial(poly, blocks_of(x), max_prec(x.flat()));
                    CAPTURE(poly.text());
                    CAPTURE(alpha.to_string());
                    CHECK(same(direct[0], recursive[0]));
                    CHECK(compare_known(direct[0], expected).equal);
                    ++cases;
                }
            }
        }
    }
    CHECK(cases >= 200);
}

TEST_CASE("divided differences are symmetric in each block") {
    std::mt19937_64 rng(99);
    PrimeField F3(3);
    auto U = BallDomain::unit_polydisc(F3, 2);
    Sampler sampler(U, 40, 20, 17);
    for (const auto& alpha : indices_up_to(2, 3)) {
        auto poly = oracle::random_multipoly(rng, 3, 2, 5, 3);
        FieldMap f(parse_expr(poly.text(), 2, F3));
        auto x = sampler.strict_angle(alpha);
        auto base = dd_direct(f, x)[0];
        for (int i = 0; i < 2; ++i) {
            std::vector<int> perm(static_cast<std::size_t>(alpha[i] + 1));
            std::iota(perm.begin(), perm.end(), 0);
            while (std::next_permutation(perm.begin(), perm.end())) {
                Point flat = x.flat();
                for (std::size_t j = 0; j < perm.size(); ++j)
                    flat[static_cast<std::size_t>(alpha.block_start(i)) + j] = x.at(i, perm[j]);
                CHECK(same(dd_direct(f, BlockPoint(alpha, flat))[0], base));
            }
        }
    }
}

TEST_CASE("dq1 examples") {
    auto prod = map_of("x1*x2", 2);
    Point x{s2("1"), s2("1")}, y{s2("1"), s2("1")};
    CHECK(same(dq1(prod, x, y, s2("X"))[0], s2("X")));

    auto g = map_of("phi32(x1)", 1);
    Point zero{s2("0")}, one{s2("1")};
    CHECK(same(dq1(g, zero, one, s2("X^2"))[0], s2("X")));

    auto c = dq1(map_of("1 + X", 1), zero, one, s2("X"))[0];
    CHECK(c.is_zero_to_precision());
    CHECK(c.prec() > 0);

    CHECK_THROWS_AS(dq1(g, zero, one, s2("O(X^40)")), UndecidableAtPrecision);
}

TEST_CASE("linear maps: dq1 independent of x and t") {
    PrimeField F5(5);
    auto lin = map_of("2*x1 + 3*x2", 2, F5);
    auto U = BallDomain::unit_polydisc(F5, 2);
    Sampler sampler(U, 24, 0, 3);
    for (int trial = 0; trial < 50; ++trial) {
        auto z = sampler.strict_bracket(1);
        auto [x, y, t] = split_bracket(z, 2, 1);
        auto got = dq1(lin, x, y, t)[0];
        auto expected = lin(y)[0];
        CHECK(compare_known(got, expected).equal);
        CHECK(same(dq_iter(lin, 1, z)[0], got));
    }
}

TEST_CASE("dq_iter on the depth-first layout") {
    // level 1 of x1 is the y-slot; level 2 is the y-slot of the second copy
    auto lin = map_of("x1", 1);
    Point z{s2("1"), s2("X"), s2("X^2"), s2("1 + X"), s2("X^3"), s2("1"), s2("X")};
    CHECK(same(dq_iter(lin, 2, z)[0], s2("X^3")));

    // x1^2 over F_2: f^[1](x, y, t) = t*y^2, so moving t by s changes it by s*y^2
    auto sq = map_of("x1^2", 1);
    Point w{s2("0"), s2("1"), s2("X"), s2("0"), s2("0"), s2("1"), s2("X^2")};
    CHECK(same(dq_iter(sq, 2, w)[0], LaurentSeries::one(F2, 100)));
    Point u{s2("0"), s2("1"), s2("X"), s2("1"), s2("0"), s2("0"), s2("X")};
    auto zero = dq_iter(sq, 2, u)[0];
    CHECK(zero.is_zero_to_precision());
    CHECK(zero.prec() > 0);

    CHECK_THROWS_AS(dq_iter(sq, 2, std::vector<LaurentSeries>{s2("0"), s2("1"), s2("X")}), ShapeError);
}

TEST_CASE("phi_k examples") {
    auto g = map_of("phi32(x1)", 1);
    std::vector<Point> one_dir{{s2("1")}};
    std::vector<LaurentSeries> t1{s2("X^3")};
    CHECK(same(phi_k(g, 1, Point{s2("X")}, one_dir, t1)[0], s2("X")));
    CHECK(same(phi_k(g, 1, Point{s2("1 + X^2")}, one_dir, t1)[0], s2("X")));

    std::mt19937_64 rng(4);
    auto U = BallDomain::unit_polydisc(F2, 1);
    Sampler sampler(U, 40, 0, 8);
    for (int trial = 0; trial < 100; ++trial) {
        Point x = sampler.base_point();
        std::vector<Point> xis{{sampler.in_ball(0)}, {sampler.in_ball(0)}};
        std::vector<LaurentSeries> ts{sampler.random_with_valuation(sampler.rng().between(0, 4)),
                                      sampler.random_with_valuation(sampler.rng().between(0, 4))};
        auto v = phi_k(g, 2, x, xis, ts)[0];
        CHECK(v.is_zero_to_precision());
        CHECK(v.prec() > 0);
        CHECK(member_phi(U, x, xis, ts, true));
        // Phi_1 agrees with dq1
        CHECK(phi_k(g, 1, x, xis, ts)[0] == dq1(g, x, xis[0], ts[0])[0]);
    }

    std::vector<LaurentSeries> zero_t{s2("0")};
    CHECK_FALSE(member_phi(U, Point{s2("0")}, one_dir, zero_t, true));
    CHECK(member_phi(U, Point{s2("0")}, one_dir, zero_t, false));
}

TEST_CASE("theta_alpha") {
    auto t1 = theta_alpha(MultiIndex({1}));
    CHECK(t1 == AffineMap(2, 3, {0, 1, 0, 0, 1, -1}, {0, 1, 0}));
    auto img = t1.apply(std::vector<LaurentSeries>{s2("1"), s2("X")});
    CHECK(img[0] == s2("X"));
    CHECK(same(img[1], LaurentSeries::one(F2, 100)));
    CHECK(same(img[2], s2("1 + X")));

    CHECK(theta_alpha(MultiIndex({0, 0})) == AffineMap::identity(2));
    CHECK(theta_alpha(MultiIndex({2})).target_dim() == bracket_dim(1, 2));
    CHECK(theta_alpha(MultiIndex({1, 2})).target_dim() == bracket_dim(2, 3));
    CHECK(theta_alpha(MultiIndex({1, 2})).source_dim() == 5);
}

TEST_CASE("affine maps compose") {
    AffineMap a(2, 2, {1, 1, 0, -1}, {1, 0});
    AffineMap b(2, 2, {0, 1, 1, 0}, {0, 2});
    auto c = a.compose(b);
    PrimeField F7(7);
    std::vector<LaurentSeries> x{parse_series("X + 3", F7, 10), parse_series("X^2", F7, 10)};
    CHECK(c.apply(x) == a.apply(b.apply(x)));
    CHECK_THROWS_AS(a.compose(AffineMap::identity(3)), ShapeError);
}

TEST_CASE("transport identity: dd equals iterated quotient after theta") {
    std::mt19937_64 rng(31);
    for (std::uint32_t p : {2u, 3u}) {
        PrimeField F(p);
        for (int d = 1; d <= 2; ++d) {
            auto U = BallDomain::unit_polydisc(F, d);
            Sampler sampler(U, 40, 16, rng());
            for (const auto& alpha : indices_up_to(d, 3)) {
                auto theta = theta_alpha(alpha);
                for (int trial = 0; trial < 5; ++trial) {
                    auto poly = oracle::random_multipoly(rng, p, d, 5, 3);
                    FieldMap f(parse_expr(poly.text(), d, F));
                    auto x = sampler.strict_angle(alpha);
                    auto z = theta.apply(x.flat());
                    CHECK(member_bracket(U, alpha.order(), z, true));
                    CAPTURE(alpha.to_string());
                    CHECK(same(dd_direct(f, x)[0], dq_iter(f, alpha.order(), z)[0]));
                }
            }
        }
    }
}

TEST_CASE("flatten_multiindex") {
    CHECK(flatten_multiindex(MultiIndex({1, 0}), MultiIndex({1, 1, 0})) == MultiIndex({2, 0}));
    CHECK(flatten_multiindex(MultiIndex({1, 0}), MultiIndex({0, 0, 0})) == MultiIndex({0, 0}));
    CHECK(flatten_multiindex(MultiIndex({2}), MultiIndex({0, 1, 1})) == MultiIndex({2}));
    CHECK(flatten_multiindex(MultiIndex({1, 0}), MultiIndex({0, 0, 1})) == MultiIndex({0, 1}));
    CHECK_THROWS_AS(flatten_multiindex(MultiIndex({1}), MultiIndex({1})), ShapeError);
}

TEST_CASE("divided difference of a divided difference") {
    auto cube = map_of("x1^3", 1);
    auto inner = divided_difference_map(cube, MultiIndex({1}));
    CHECK(inner.arity() == 2);
    // (f^{>(1)<})^{>(0,1)<} at ((a), (b, c)) equals f^{>(2)<}(a, b, c)
    BlockPoint outer(MultiIndex({0, 1}), {s2("1"), s2("X"), s2("X^2")});
    BlockPoint flat(MultiIndex({2}), {s2("1"), s2("X"), s2("X^2")});
    CHECK(same(dd_direct(inner, outer)[0], dd_direct(cube, flat)[0]));
}
