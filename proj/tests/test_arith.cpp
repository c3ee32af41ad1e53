#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "core/arith.hpp"
#include "core/qpoly.hpp"
#include "oracles.hpp"

using namespace detlab;

TEST_CASE("binomial follows the zero conventions") {
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(3, -1) == 0);
    CHECK(binomial(2, 5) == 0);
    CHECK(binomial(0, 0) == 1);
    CHECK_THROWS_AS(binomial(-1, 0), domain_error);
}

TEST_CASE("binomial satisfies the Pascal recurrence up to 40") {
    for (long a = 1; a <= 40; ++a)
        for (long b = 0; b <= a; ++b)
            CHECK(binomial(a, b) == binomial(a - 1, b - 1) + binomial(a - 1, b));
}

TEST_CASE("superfactorial small values and ratio law") {
    CHECK(superfactorial(0) == 1);
    CHECK(superfactorial(3) == 12);
    CHECK(superfactorial(4) == 288);
    for (long m = 1; m <= 12; ++m)
        CHECK(exact_div(superfactorial(m), superfactorial(m - 1)) == factorial(m));
}

TEST_CASE("pochhammer rising factorial and the negative-index extension") {
    CHECK(pochhammer(BigRat(2), 3) == 24);
    CHECK(pochhammer(BigRat(7, 3), 0) == 1);
    CHECK(pochhammer(BigRat(5), -2) == BigRat(1, 12));   // 1/(3*4)
    CHECK_THROWS_AS(pochhammer(BigRat(1), -1), domain_error);
    CHECK_THROWS_AS(pochhammer(BigRat(2), -3), domain_error);
}

TEST_CASE("pochhammer negative index is the inverse of the shifted rise") {
    // (x)_{-m} (x-m)_m = 1 whenever no factor vanishes
    std::vector<BigRat> grid{BigRat(7), BigRat(9, 2), BigRat(-11, 3), BigRat(13, 4),
                             BigRat(25, 2)};
    for (const auto& x : grid)
        for (long m = 1; m <= 5; ++m) {
            bool singular = false;
            for (long t = 1; t <= m; ++t)
                if (x - t == 0) singular = true;
            if (singular) continue;
            CHECK(pochhammer(x, -m) * pochhammer(x - m, m) == 1);
        }
}

TEST_CASE("pochhammer splits as (x)_{a+b} = (x)_a (x+a)_b") {
    std::vector<BigRat> xs{BigRat(3, 2), BigRat(-5, 2), BigRat(4)};
    for (const auto& x : xs)
        for (long a = 0; a <= 4; ++a)
            for (long b = 0; b <= 4; ++b)
                CHECK(pochhammer(x, a + b) == pochhammer(x, a) * pochhammer(x + a, b));
}

TEST_CASE("exact_div rejects inexact quotients") {
    CHECK(exact_div(BigInt(12), BigInt(4)) == 3);
    CHECK_THROWS_AS(exact_div(BigInt(7), BigInt(2)), internal_error);
    CHECK_THROWS_AS(exact_div(BigInt(1), BigInt(0)), internal_error);
}

TEST_CASE("q_binomial small values") {
    CHECK(q_binomial(2, 1) == QPoly::parse("1+q"));
    CHECK(q_binomial(4, 2) == QPoly::parse("1+q+2*q^2+q^3+q^4"));
    CHECK(q_binomial(3, 5).is_zero());
    CHECK(q_binomial(3, -1).is_zero());
    CHECK_THROWS_AS(q_binomial(-2, 1), domain_error);
}

TEST_CASE("q_binomial matches the q-Pascal oracle") {
    for (long n = 0; n <= 10; ++n)
        for (long k = 0; k <= n; ++k)
            CHECK(q_binomial(n, k) == oracle::qpascal(n, k));
}

TEST_CASE("q_binomial at q=1 degenerates to the binomial") {
    for (long n = 0; n <= 20; ++n)
        for (long k = 0; k <= n; ++k)
            CHECK(q_binomial(n, k).evaluate_at_one() == BigRat(binomial(n, k)));
}

TEST_CASE("q_binomial symmetry in k -> n-k") {
    for (long n = 0; n <= 20; ++n)
        for (long k = 0; k <= n; ++k)
            CHECK(q_binomial(n, k) == q_binomial(n, n - k));
}

TEST_CASE("q-integers and q-factorials") {
    CHECK(q_integer(1) == QPoly(1));
    CHECK(q_integer(3) == QPoly::parse("1+q+q^2"));
    CHECK(q_factorial(3) == q_integer(1) * q_integer(2) * q_integer(3));
    CHECK(q_integer_base(2, 3) == QPoly::parse("1+q^3"));
    CHECK(q_factorial_base(2, 2).evaluate_at_one() == 2);
}

TEST_CASE("QPoly arithmetic with negative exponents") {
    QPoly p = QPoly::parse("q^-1+2+q");
    CHECK(p.low_exponent() == -1);
    CHECK(p.high_exponent() == 1);
    CHECK(p * QPoly::monomial(1, 1) == QPoly::parse("1+2*q+q^2"));
    CHECK(p.coefficient(0) == 2);
    CHECK(p.coefficient(5) == 0);
    QPoly prod = QPoly::parse("1+q") * QPoly::parse("1+q^-1");
    CHECK(prod == QPoly::parse("q^-1+2+q"));
    CHECK(QPoly::exact_div(prod, QPoly::parse("1+q")) == QPoly::parse("q^-1+1"));
}

TEST_CASE("QPoly exact division flags remainders") {
    CHECK_THROWS_AS(QPoly::exact_div(QPoly::parse("1+q+q^2"), QPoly::parse("1+q")),
                    internal_error);
    CHECK_THROWS_AS(QPoly::exact_div(QPoly(1), QPoly()), internal_error);
}

TEST_CASE("QPoly rendering round-trips") {
    std::vector<std::string> cases{"0",   "1",        "-1",        "q",      "1+q",
                                   "q^-2+q^3", "3/2*q^2-q", "2-q+5*q^3", "-q^-1+1"};
    for (const auto& text : cases) {
        QPoly p = QPoly::parse(text);
        CHECK(QPoly::parse(p.to_string()) == p);
    }
    CHECK(QPoly::parse("1+q").to_string() == "1+q");
    CHECK(QPoly::parse("-2*q^-1").to_string() == "-2*q^-1");
}

TEST_CASE("rational parsing and canonical rendering") {
    CHECK(parse_bigrat("6/4") == BigRat(3, 2));
    CHECK(to_string(make_rat(-10, 4)) == "-5/2");
    CHECK_THROWS_AS(make_rat(1, 0), domain_error);
    CHECK(parse_bigint("-123456789012345678901234567890") ==
          -parse_bigint("123456789012345678901234567890"));
    CHECK_THROWS_AS(parse_bigint("12x"), domain_error);
}
