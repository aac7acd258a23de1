#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "ultradiff/errors.hpp"
#include "ultradiff/expr.hpp"
#include "ultradiff/series_format.hpp"

using namespace ultradiff;

namespace {

const PrimeField F2(2);

LaurentSeries s2(const char* text, int prec = 64) { return parse_series(text, F2, prec); }

LaurentSeries eval1(const char* expr, int d, std::vector<LaurentSeries> point) {
    return eval_expr(parse_expr(expr, d, point.front().field()), point).front();
}

} // namespace

TEST_CASE("parse shapes") {
    auto f = parse_expr("x1*x2", 2, F2);
    REQUIRE(f.coarity() == 1);
    const Node& mul = *f.outputs()[0];
    CHECK(mul.kind == NodeKind::Mul);
    CHECK(mul.lhs->kind == NodeKind::Var);
    CHECK(mul.lhs->var == 1);
    CHECK(mul.rhs->var == 2);

    auto g = parse_expr("phi32(x1) + X^2", 1, F2);
    const Node& add = *g.outputs()[0];
    CHECK(add.kind == NodeKind::Add);
    CHECK(add.lhs->kind == NodeKind::Builtin);
    CHECK(add.lhs->builtin == "phi32");
    CHECK(add.lhs->lhs->var == 1);
    CHECK(add.rhs->kind == NodeKind::Const);
    CHECK(add.rhs->literal.kind == Literal::Kind::XPower);
    CHECK(add.rhs->literal.exponent == 2);

    auto t = parse_expr("[x1 + x2, x1*x2, 1]", 2, F2);
    CHECK(t.coarity() == 3);
    CHECK(t.arity() == 2);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_expr("x3", 2, F2), ArityError);
    CHECK_THROWS_AS(parse_expr("x0", 2, F2), ArityError);
    CHECK_THROWS_AS(parse_expr("sin(x1)", 1, F2), SyntaxError);
    CHECK_THROWS_AS(parse_expr("x1 +", 1, F2), SyntaxError);
    CHECK_THROWS_AS(parse_expr("(x1", 1, F2), SyntaxError);
    CHECK_THROWS_AS(parse_expr("x1 x1", 1, F2), SyntaxError);
    CHECK_THROWS_AS(parse_expr("[x1,", 1, F2), SyntaxError);
    CHECK_THROWS_AS(parse_expr("", 1, F2), SyntaxError);
    CHECK_THROWS_AS(parse_expr("3", 1, PrimeField(3)), SyntaxError);

    try {
        parse_expr("x1 + * x2", 2, F2);
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.position() == 5);
        CHECK_FALSE(e.expected().empty());
    }
}

TEST_CASE("eval examples") {
    CHECK(to_string(eval1("x1^2", 1, {s2("1 + X", 16)})) == "1 + X^2 + O(X^16)");

    auto one = eval1("x1*x2", 2, {s2("X"), s2("X^-1")});
    CHECK(compare_known(one, LaurentSeries::one(F2, 1000)).equal);
    CHECK(one.lead() == 0);

    CHECK_THROWS_AS(eval1("x1/(x1 - x2)", 2, {s2("X"), s2("X + O(X^4)")}), ZeroDivisorToPrecision);
    CHECK_THROWS_AS(eval1("x1", 2, {s2("X")}), ArityError);
    CHECK_THROWS_AS(eval_expr(parse_expr("x1", 1, F2), std::vector{parse_series("X", PrimeField(3), 8)}), DomainError);

    auto vec = eval_expr(parse_expr("[x1 + x2, x1*x2]", 2, F2), std::vector{s2("1 + X"), s2("X")});
    CHECK(to_string(vec[0]) == "1 + O(X^64)");
    CHECK(to_string(vec[1]) == "X + X^2 + O(X^64)");
}

TEST_CASE("gauss_expand examples") {
    CHECK(to_string(gauss_expand(s2("X^2", 8))) == "X^3 + O(X^12)");
    CHECK(to_string(gauss_expand(s2("1 + X + O(X^8)"))) == "1 + X + O(X^12)");
    CHECK(to_string(gauss_expand(s2("X^2 + X^5 + O(X^8)"))) == "X^3 + X^7 + O(X^12)");
    CHECK(to_string(gauss_expand(s2("O(X^7)"))) == "0 + O(X^10)");
    CHECK_THROWS_AS(gauss_expand(s2("X^-1 + 1")), DomainError);

    // non-homogeneity witness: phi32(X*X) = X^3 but X*phi32(X) = X^2
    auto lhs = gauss_expand(s2("X") * s2("X"));
    auto rhs = s2("X") * gauss_expand(s2("X"));
    CHECK(lhs.lead() == 3);
    CHECK(rhs.lead() == 2);
    CHECK_FALSE(compare_known(lhs, rhs).equal);
}

TEST_CASE("gauss_expand against the floor(3k/2) oracle") {
    std::mt19937_64 rng(77);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (int trial = 0; trial < 300; ++trial) {
            auto P = oracle::random_poly(rng, p, 0, 24, false);
            const int N = 1 + static_cast<int>(rng() % 24);
            auto out = gauss_expand(oracle::to_series(P, N));
            CHECK(out.prec() == 3 * N / 2);
            // only the input coefficients below N are known
            oracle::Poly known{p, {}};
            for (auto [e, v] : P.c)
                if (e < N) known.add_term(e, v);
            CHECK(oracle::sound(out, oracle::floor_three_halves(known)));
        }
    }
}

TEST_CASE("gauss_expand is additive") {
    std::mt19937_64 rng(8);
    for (std::uint32_t p : {2u, 3u, 7u}) {
        for (int trial = 0; trial < 300; ++trial) {
            auto x = oracle::to_series(oracle::random_poly(rng, p, 0, 20, false), 1 + static_cast<int>(rng() % 30));
            auto y = oracle::to_series(oracle::random_poly(rng, p, 0, 20, false), 1 + static_cast<int>(rng() % 30));
            auto a = gauss_expand(x + y);
            auto b = gauss_expand(x) + gauss_expand(y);
            CHECK(compare_known(a, b).equal);
            CHECK(a.prec() == b.prec());
        }
    }
}

TEST_CASE("gauss_expand valuation law") {
    std::mt19937_64 rng(9);
    for (std::uint32_t p : {2u, 3u}) {
        for (int v = 0; v < 30; ++v) {
            auto x = oracle::to_series(oracle::random_poly(rng, p, v, v + 10, true), v + 12);
            auto y = gauss_expand(x);
            REQUIRE(y.certified_nonzero());
            CHECK(y.lead() == 3 * v / 2);
        }
    }
}

TEST_CASE("print/parse round trip corpus") {
    const std::vector<std::string> corpus = {
        "x1",
        "x1 + x2",
        "x1 - x2",
        "x1*x2",
        "x1/x2",
        "x1^2",
        "x1^0",
        "x1^2^3",
        "(x1 + x2)^2",
        "(x1*x2)^3",
        "x1 - (x2 - x3)",
        "x1 - x2 - x3",
        "x1 - (x2 + x3)",
        "x1/(x2*x3)",
        "x1/x2/x3",
        "x1*(x2/x3)",
        "(x1 + x2)*(x1 - x2)",
        "x1*x2 + x2*x3",
        "x1 + x2*x3",
        "(x1 + x2)*x3",
        "phi32(x1)",
        "phi32(x1) + X^2",
        "phi32(x1 + x2)",
        "phi32(phi32(x1))",
        "phi32(x1)^2",
        "phi32(x1*x2) - phi32(x1)*phi32(x2)",
        "X",
        "X^2",
        "X^-3",
        "X^0",
        "(X)^2",
        "(X^2)^3",
        "1",
        "0",
        "1 + X + X^2",
        "x1 + O(X^8)",
        "O(X^5)",
        "1*X^3",
        "x1*X^-1",
        "x1/(x1 - x2)",
        "(x1 - x2)/(x1 + x2)",
        "x1^3 + x2^3 + x3^3",
        "((x1))",
        "x1*x1*x1",
        "x1*(x1*x1)",
        "x1 + (x1 + x1)",
        "(x1 + x1) + x1",
        "[x1, x2]",
        "[x1*x2, x1 + x2, 1]",
        "[phi32(x1), phi32(x2)]",
        "[x1^2, (x1 + x2)^2, X]",
        "x1/(x2/x3)",
        "(x1 - x2)^2 - (x1^2 - x2^2)",
        "phi32(x1)/x1",
        "x2^5 - X^3*x1",
        "(x1 + X)^4",
    };
    CHECK(corpus.size() >= 50);
    PrimeField F7(7);
    for (const auto& text : corpus) {
        CAPTURE(text);
        auto f = parse_expr(text, 3, F7);
        auto printed = to_string(f);
        auto g = parse_expr(printed, 3, F7);
        CHECK(f == g);
        CHECK(to_string(g) == printed);
    }
    CHECK(to_string(parse_expr("(x1 + x2)*x3", 3, F7)) == "(x1 + x2)*x3");
    CHECK(to_string(parse_expr("((x1))", 3, F7)) == "x1");
    CHECK(to_string(parse_expr("x1 - (x2 - x3)", 3, F7)) == "x1 - (x2 - x3)");
    CHECK_FALSE(parse_expr("x1 - (x2 - x3)", 3, F7) == parse_expr("x1 - x2 - x3", 3, F7));
}

TEST_CASE("evaluation agrees with oracle arithmetic") {
    std::mt19937_64 rng(21);
    PrimeField F3(3);
    auto f = parse_expr("x1*x2 + x1^2 - 2*x2", 2, F3);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = oracle::random_poly(rng, 3, -2, 10, true);
        auto b = oracle::random_poly(rng, 3, -2, 10, true);
        auto sa = oracle::to_series(a, 30);
        auto sb = oracle::to_series(b, 30);
        auto got = eval_expr(f, std::vector{sa, sb}).front();
        auto exact = oracle::add(oracle::add(oracle::mul(a, b), oracle::mul(a, a)), oracle::mul(oracle::Poly{3, {{0, 2}}}, b), -1);
        CHECK(oracle::sound(got, exact));
    }
}
