#include "rotsim/error.hpp"
#include "rotsim/interval.hpp"
#include "rotsim/rational.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace rotsim;

TEST_CASE("exact_rational reproduces the double bit for bit")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 2000; ++i) {
        const double x = u(rng) * std::ldexp(1.0, static_cast<int>(rng() % 200) - 100);
        CHECK(to_double(exact_rational(x)) == x);
    }
    CHECK(exact_rational(0.0) == 0);
    CHECK(exact_rational(0.375) == Rational(3, 8));
    CHECK(exact_rational(-6.0) == -6);
    // 0.1 is not 1/10 in binary.
    CHECK(exact_rational(0.1) != Rational(1, 10));
    CHECK_THROWS_AS(exact_rational(NAN), ConfigError);
}

TEST_CASE("parse_rational and to_string")
{
    CHECK(parse_rational("4/9") == Rational(4, 9));
    CHECK(parse_rational("-8/12") == Rational(-2, 3));
    CHECK(parse_rational("5") == 5);
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("-1.5") == Rational(-3, 2));
    CHECK(to_string(Rational(-4, 3)) == "-4/3");
    CHECK(to_string(Rational(2)) == "2/1");
    CHECK_THROWS_AS(parse_rational("1/0"), ConfigError);
    CHECK_THROWS_AS(parse_rational("abc"), ConfigError);
    CHECK_THROWS_AS(parse_rational(""), ConfigError);
}

TEST_CASE("interval algebra")
{
    const Interval a{Rational(0), Rational(2)};
    const Interval b{Rational(1), std::nullopt};
    CHECK(a.contains(0));
    CHECK_FALSE(a.contains(2));
    CHECK(b.contains(Rational(1000)));
    const Interval ab = a.intersect(b);
    CHECK(ab == Interval{Rational(1), Rational(2)});
    CHECK(ab.subset_of(a));
    CHECK(ab.subset_of(b));
    CHECK_FALSE(a.subset_of(b));
    CHECK(Interval{Rational(2), Rational(2)}.empty());
    CHECK(a.intersect(Interval{Rational(2), Rational(3)}).empty());
    CHECK(Interval{std::nullopt, std::nullopt}.str() == "[-inf, inf)");
    CHECK(ab.str() == "[1/1, 2/1)");
}
