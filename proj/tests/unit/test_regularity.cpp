#include "doctest.h"
#include "ultradiff/errors.hpp"
#include "ultradiff/regularity.hpp"
#include "ultradiff/report.hpp"
#include "ultradiff/series_format.hpp"

using namespace ultradiff;

namespace {

const PrimeField F2(2);

FieldMap map_of(const char* text, int d, PrimeField F = F2) { return FieldMap(parse_expr(text, d, F)); }

} // namespace

TEST_CASE("rationals") {
    CHECK(Rational::make(6, 4) == Rational{3, 2});
    CHECK(Rational::make(-4, -2).to_string() == "2");
    CHECK(Rational::make(3, 2).to_string() == "3/2");
    CHECK(Rational::make(0, 5) == Rational{0, 1});
}

TEST_CASE("holder exponents") {
    auto O1 = BallDomain::unit_polydisc(F2, 1);
    auto g = holder_estimate(map_of("phi32(x1)", 1), O1, 400, 64, 1);
    CHECK(g.sigma == Rational{3, 2});
    CHECK(g.log_c == 1);
    CHECK(g.self_certified());
    for (const auto& pr : g.pairs) CHECK(pr.v_out == (3 * pr.v_in) / 2);

    auto id = holder_estimate(map_of("x1", 1), O1, 400, 64, 2);
    CHECK(id.sigma == Rational{1, 1});
    CHECK(id.log_c == 0);
    CHECK(id.deep_slope == Rational{1, 1});
    CHECK(id.self_certified());

    auto sq = holder_estimate(map_of("x1^2", 1), O1, 400, 64, 3);
    CHECK(sq.sigma == Rational{2, 1});
    CHECK(sq.self_certified());

    // over F_3 the square is only Lipschitz near generic points
    PrimeField F3(3);
    auto sq3 = holder_estimate(map_of("x1^2", 1, F3), BallDomain::unit_polydisc(F3, 1), 400, 64, 4);
    CHECK(sq3.sigma == Rational{1, 1});
    CHECK(sq3.self_certified());

    // two variables, sup norm
    auto two = holder_estimate(map_of("[phi32(x1), phi32(x2)]", 2), BallDomain::unit_polydisc(F2, 2), 400, 64, 5);
    CHECK(two.sigma == Rational{3, 2});

    auto constant = map_of("1 + X", 1);
    CHECK_THROWS_AS(holder_estimate(constant, O1, 50, 64, 6), InsufficientPrecision);
    auto j = to_json(g);
    CHECK(j["sigma"] == "3/2");
    CHECK(j["rows"].size() == g.pairs.size());
}

TEST_CASE("holder estimate on a shifted ball") {
    auto U = parse_domain("ball(1 + X, 3)", F2, 64);
    auto r = holder_estimate(map_of("phi32(x1)", 1), U, 300, 64, 9);
    CHECK(r.sigma == Rational{3, 2});
    for (const auto& pr : r.pairs) CHECK(pr.v_in >= 3);
}

TEST_CASE("blow-up scan") {
    CHECK(blowup_min_prec(20) == 39);
    auto t = c2_blowup_scan(20, 64);
    REQUIRE(t.rows.size() == 10);
    CHECK(t.rows[0].n == 2);
    CHECK(t.rows[0].valuation == -1);
    CHECK(t.rows[1].valuation == -2);
    CHECK(t.rows.back().valuation == -10);
    CHECK(AbsValue::exact(t.rows.back().valuation).to_string(2) == "2^10");
    CHECK(t.strictly_increasing);
    CHECK(t.matches_formula);
    // n = 2 value equals the hand-computed quotient
    auto s = [](const char* x) { return parse_series(x, F2, 64); };
    auto expected = (s("X") + s("X^2")) / (s("X^2") + s("X^5"));
    CHECK(compare_known(t.rows[0].value, expected).equal);

    CHECK_THROWS_AS(c2_blowup_scan(20, 38), InsufficientPrecision);
    CHECK_THROWS_AS(c2_blowup_scan(7, 64), ConfigError);

    PrimeField F3(3);
    auto t3 = c2_blowup_scan(10, 64, F3);
    CHECK(t3.matches_formula);
    CHECK(AbsValue::exact(t3.rows.back().valuation).to_string(3) == "3^5");
}

TEST_CASE("boundedness scans") {
    auto O1 = BallDomain::unit_polydisc(F2, 1);
    auto quad = dd_boundedness_scan(map_of("x1^2", 1), MultiIndex({2}), O1, 20, {1, 3, 6, 10}, 64, 1);
    for (const auto& r : quad.rows) CHECK(r.sup == AbsValue::exact(0));
    CHECK_FALSE(quad.monotone_growth);

    auto lin = dd_boundedness_scan(map_of("x1", 1), MultiIndex({2}), O1, 20, {1, 3, 6}, 64, 2);
    for (const auto& r : lin.rows) CHECK_FALSE(r.sup.is_exact());

    std::vector<int> levels{5, 7, 9, 11, 13};
    auto gauss = dd_boundedness_scan(map_of("phi32(x1)", 1), MultiIndex({2}), O1, 10, levels, 64, 3,
                                     gauss_witness_for_levels(F2, 64));
    CHECK(gauss.monotone_growth);
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const int n = (levels[i] - 3) / 2 * 2;
        CHECK(gauss.rows[i].sup == AbsValue::exact(-n / 2));
    }

    // polynomials of degree <= 3 stay bounded for every order <= 3
    auto cubic = map_of("x1^3 + x1*x2^2 + x2", 2);
    auto O2 = BallDomain::unit_polydisc(F2, 2);
    for (auto alpha : {MultiIndex({1, 0}), MultiIndex({1, 1}), MultiIndex({2, 1}), MultiIndex({0, 3})}) {
        auto t = dd_boundedness_scan(cubic, alpha, O2, 10, {2, 6, 12}, 64, 4);
        CHECK_FALSE(t.monotone_growth);
        for (const auto& r : t.rows) CHECK((!r.sup.is_exact() || r.sup.neg_log() >= 0));
    }
    CHECK_THROWS_AS(dd_boundedness_scan(cubic, MultiIndex({1, 0}), O2, 1, {64}, 64, 1), ConfigError);
}

TEST_CASE("counterexample report") {
    auto r = counterexample_report(20, 200, 64, 7);
    CHECK(r.holder_sandwich.ok());
    CHECK(r.additivity.ok());
    CHECK(r.phi2_zero.ok());
    CHECK(r.phi2_t1_zero.ok());
    CHECK(r.phi1_x_independent.ok());
    CHECK(r.passed());
    CHECK(r.verdict == "C^∞_Lud evidence complete; C^2 refuted.");
    CHECK(r.holder_sandwich.cases == 200);

    auto again = counterexample_report(20, 200, 64, 7);
    CHECK(to_json(r).dump() == to_json(again).dump());
    CHECK_THROWS_AS(counterexample_report(20, 10, 30, 7), InsufficientPrecision);

    auto j = to_json(r);
    CHECK(j["check"] == "counterexample");
    CHECK(j["rows"].back()["abs"] == "2^10");
    CHECK(j["subchecks"].size() == 6);
}

TEST_CASE("first quotient of phi32 vanishes as t shrinks") {
    auto f = map_of("phi32(x1)", 1);
    auto s = [](const char* x) { return parse_series(x, F2, 64); };
    Point x{s("1 + X + X^4")};
    std::vector<Point> xi{{s("1 + X^2")}};
    int last = -1;
    for (int m = 1; m <= 30; ++m) {
        std::vector<LaurentSeries> t{LaurentSeries::monomial(F2, 1, m, 64)};
        auto v = phi_k(f, 1, x, xi, t)[0];
        REQUIRE(v.certified_nonzero());
        CHECK(v.lead() >= last);
        CHECK(v.lead() >= m / 2);
        last = v.lead();
    }
}
