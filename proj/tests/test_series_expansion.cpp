#include <doctest.h>

#include <cmath>

#include "mcflab/series_expansion.hpp"

using namespace mcflab;
using namespace mcflab::series;

namespace {

// the five published tail coefficients, assembled independently as
// polynomials in n
Poly published_tail_coefficient(int power) {
    Poly n = Poly::n();
    Poly nm1 = Poly::n_minus(1);
    auto c = [](long v) { return Poly(Rational(v)); };
    switch (power) {
        case -1:
            return c(-1);
        case -3:
            return nm1 * (n - c(4));
        case -5:
            return c(-1) * nm1 * nm1 * (n * n - c(12) * n + c(31));
        case -7:
            return nm1 * nm1 * nm1 *
                   (n * n * n - c(24) * n * n + c(164) * n - c(330));
        case -9:
            return c(-1) * nm1 * nm1 * nm1 * nm1 *
                   (n * n * n * n - c(40) * n * n * n + c(510) * n * n -
                    c(2554) * n + c(4315));
        default:
            return Poly();
    }
}

}  // namespace

TEST_CASE("symbolic tail expansion matches the published polynomials exactly") {
    TailSeries s = expand_tail_symbolic(9);
    for (int p : {-1, -3, -5, -7, -9}) {
        SymCoef got = s.coefficient_sym(p);
        REQUIRE(got.is_polynomial());
        CHECK(got.num == published_tail_coefficient(p));
    }
    // c1 = 1/(n-1)
    CHECK(s.c1_sym.denom_pow == 1);
    CHECK(s.c1_sym.num == Poly(Rational(1)));
}

TEST_CASE("numeric tail coefficients at small n") {
    TailSeries s2 = expand_tail(Rational(2), 9);
    CHECK(s2.coefficient(1) == Rational(1));
    CHECK(s2.coefficient(-1) == Rational(-1));
    CHECK(s2.coefficient(-3) == Rational(-2));
    CHECK(s2.coefficient(-5) == Rational(-11));
    CHECK(s2.coefficient(-7) == Rational(-90));
    CHECK(s2.coefficient(-9) == Rational(-943));

    TailSeries s4 = expand_tail(Rational(4), 9);
    CHECK(s4.coefficient(-3) == Rational(0));  // (n-1)(n-4) vanishes at n=4
}

TEST_CASE("tail coefficients beyond the published order, frozen from an "
          "independent oracle") {
    // computed separately with a computer algebra system
    TailSeries s2 = expand_tail(Rational(2), 13);
    CHECK(s2.coefficient(-11) == Rational(-11868));
    CHECK(s2.coefficient(-13) == Rational(-173252));
    TailSeries s3 = expand_tail(Rational(3), 13);
    CHECK(s3.coefficient(-11) == Rational(-86976));
    CHECK(s3.coefficient(-13) == Rational(-2290432));
    TailSeries s7 = expand_tail(Rational(7), 13);
    CHECK(s7.coefficient(-11) == Rational(-4027968));
    CHECK(s7.coefficient(-13) == Rational(-146126592));
}

TEST_CASE("even tail slots are generated and vanish") {
    TailSeries s = expand_tail(Rational(3), 9);
    for (int p : {0, -2, -4, -6, -8}) CHECK(s.coefficient(p) == Rational(0));
    TailSeries sym = expand_tail_symbolic(7);
    for (int p : {0, -2, -4, -6}) CHECK(sym.coefficient_sym(p).is_zero());
}

TEST_CASE("origin expansion: a1 = 1/n, a3 = 1/(n^3 (n+2)), even slots vanish") {
    for (int n : {2, 3, 4, 5, 6}) {
        OriginSeries s = expand_origin(n, 7);
        CHECK(s.coefficient(1) == Rational(1, n));
        CHECK(s.coefficient(3) == Rational(1, (long)n * n * n * (n + 2)));
        for (int p : {2, 4, 6}) CHECK(s.coefficient(p) == Rational(0));
    }
}

TEST_CASE("origin coefficients frozen from an independent formal-substitution oracle") {
    // computed separately with a computer algebra system
    OriginSeries s2 = expand_origin(2, 9);
    CHECK(s2.coefficient(5) == Rational(1, 768));
    CHECK(s2.coefficient(7) == Rational(-1, 49152));
    CHECK(s2.coefficient(9) == Rational(-1, 131072));
    OriginSeries s3 = expand_origin(3, 9);
    CHECK(s3.coefficient(5) == Rational(0));  // vanishes at n = 3 only
    CHECK(s3.coefficient(7) == Rational(-1, 164025));
    CHECK(s3.coefficient(9) == Rational(-2, 27064125));
    OriginSeries s4 = expand_origin(4, 9);
    CHECK(s4.coefficient(5) == Rational(-1, 49152));
    CHECK(s4.coefficient(7) == Rational(-17, 23592960));
    CHECK(s4.coefficient(9) == Rational(47, 4529848320));
}

TEST_CASE("formal residual of an order-m truncation starts at power <= -(m+1)") {
    for (int m : {3, 5, 9, 13}) {
        TailSeries s = expand_tail(Rational(2), m);
        CHECK(s.residual_leading_power() <= -(m + 1));
        TailSeries t = expand_tail(Rational(7), m);
        CHECK(t.residual_leading_power() <= -(m + 1));
    }
    TailSeries sym = expand_tail_symbolic(9);
    CHECK(sym.residual_leading_power() <= -10);
}

TEST_CASE("symbolic series evaluated at integer n reproduces the numeric one") {
    TailSeries sym = expand_tail_symbolic(13);
    for (int n = 2; n <= 12; ++n) {
        TailSeries num = expand_tail(Rational(n), 13);
        for (int p = 1; p >= -13; --p) {
            Rational expect = (p == 1) ? num.c1 : num.coefficient(p);
            Rational got = (p == 1) ? sym.c1_sym.eval(Rational(n))
                                    : sym.coefficient_sym(p).eval(Rational(n));
            CHECK(got == expect);
        }
    }
}

TEST_CASE("rational n is accepted in numeric mode") {
    TailSeries s = expand_tail(Rational(5, 2), 5);
    CHECK(s.c1 == Rational(2, 3));
    CHECK(s.coefficient(-1) == Rational(-1));
    // (n-1)(n-4) at n = 5/2: (3/2)(-3/2) = -9/4
    CHECK(s.coefficient(-3) == Rational(-9, 4));
}

TEST_CASE("eval_series") {
    TailSeries s1 = expand_tail(Rational(2), 1);
    CHECK(eval_series(s1, 10.0) == doctest::Approx(9.9).epsilon(1e-14));

    // third coefficient vanishes at n=4: order 3 evaluates like order 1
    TailSeries a = expand_tail(Rational(4), 3);
    TailSeries b = expand_tail(Rational(4), 1);
    for (double r : {3.0, 7.5, 40.0})
        CHECK(eval_series(a, r) == doctest::Approx(eval_series(b, r)).epsilon(1e-15));

    OriginSeries o = expand_origin(5, 1);
    for (double r : {1e-4, 1e-2, 0.3})
        CHECK(eval_series(o, r) == doctest::Approx(r / 5.0).epsilon(1e-15));
}

TEST_CASE("argument and mode errors") {
    CHECK_THROWS_AS(expand_tail(Rational(1), 5), ArgumentError);
    CHECK_THROWS_AS(expand_tail(Rational(2), 4), ArgumentError);   // even order
    CHECK_THROWS_AS(expand_tail(Rational(2), 23), ArgumentError);  // above cap
    CHECK_THROWS_AS(expand_origin(1, 5), ArgumentError);
    TailSeries sym = expand_tail_symbolic(5);
    CHECK_THROWS_AS(sym.eval(10.0), ArgumentError);
    CHECK_THROWS_AS(sym.coefficient(-1), ArgumentError);
}

TEST_CASE("dump format") {
    TailSeries s = expand_tail(Rational(2), 3);
    CHECK(s.dump() == "1\t1\n-1\t-1\n-3\t-2\n");
    TailSeries sym = expand_tail_symbolic(3);
    CHECK(sym.dump() == "1\t(1)/(n-1)\n-1\t-1\n-3\tn^2 - 5*n + 4\n");
    OriginSeries o = expand_origin(2, 3);
    CHECK(o.dump() == "1\t1/2\n3\t1/32\n");
}
