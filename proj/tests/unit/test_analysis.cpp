#include "rotsim/analysis.hpp"
#include "rotsim/error.hpp"

#include <doctest.h>

#include <cmath>

using namespace rotsim;

TEST_CASE("reduced system geometry")
{
    const auto rs = make_reduced_system(1.0, 2.0, 0.5, 0.5);
    CHECK(rs.alpha == doctest::Approx(9.0));
    CHECK(rs.beta == doctest::Approx(std::min(0.5, 1.0 * 1.0 / 3.0)));
    CHECK_THROWS_AS(make_reduced_system(0.0, 1.0, 1.0, 1.0), ConfigError);

    // 4-QAM at arctan(1/2): projections are multiples of 1/3, cell edges
    // multiples of 2/3, so every mu is 1/3.
    const auto c = build_rotated_constellation(2, matched_angle(2));
    const Quantizer q(2);
    for (std::size_t x = 0; x < c.size(); ++x) {
        for (std::size_t y = 0; y < c.size(); ++y) {
            if (x == y) {
                continue;
            }
            const auto r = reduced_system_for(c, q, x, y);
            CHECK(r.mu1 == doctest::Approx(1.0 / 3));
            CHECK(r.mu2 == doctest::Approx(1.0 / 3));
            CHECK(std::abs(r.mu1 + r.lambda1 - std::abs(c.normalized()[x][0] - c.normalized()[y][0])) < 1e-12);
        }
    }
    CHECK_THROWS_AS(reduced_system_for(c, q, 0, 0), ConfigError);
    const auto off = build_rotated_constellation(2, 0.35);
    CHECK_THROWS_AS(reduced_system_for(off, q, 0, 1), ConfigError);
}

TEST_CASE("pairwise bound limits and monotonicity")
{
    for (double a : {0.25, 1.0, 4.0}) {
        for (double b : {0.1, 0.5}) {
            const auto rs = make_reduced_system(b, a * b, b, 0.0);
            double prev = 0.5;
            for (double s2 = 10.0; s2 > 1e-8; s2 /= 3.0) {
                const double v = pairwise_bound(rs, s2);
                CHECK(v >= 0.0);
                CHECK(v <= 0.5);
                CHECK(v <= prev + 1e-15);
                prev = v;
            }
        }
    }
    const auto rs = make_reduced_system(1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0);
    CHECK(pairwise_bound(rs, 0.0) == 0.0);
    // Asymptote ratio -> 1 as gamma grows.
    const double pt = 2.0;
    const double g = 1e6;
    CHECK(pairwise_bound(rs, pt / g) / pairwise_asymptote(rs, pt, g) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("reduced-system Monte Carlo sits under the bound")
{
    const auto rs = make_reduced_system(1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0);
    for (double sigma2 : {0.2, 0.02}) {
        const auto mc = simulate_reduced_pairwise(rs, sigma2, 400'000, 3);
        CHECK(mc.probability <= pairwise_bound(rs, sigma2) + 3 * mc.std_error);
        CHECK(mc.events > 0);
    }
    const auto a = simulate_reduced_pairwise(rs, 0.05, 200'000, 8, 1);
    const auto b = simulate_reduced_pairwise(rs, 0.05, 200'000, 8, 3);
    CHECK(a.events == b.events);
    CHECK_THROWS_AS(simulate_reduced_pairwise(rs, 0.05, 100, 8), ConfigError);
}

TEST_CASE("union bound decreases with SNR")
{
    const auto c = build_rotated_constellation(4, matched_angle(4));
    const Quantizer q(4);
    double prev = 1e300;
    for (double g : {10.0, 20.0, 30.0, 40.0}) {
        const double v = union_bound(c, q, SnrSpec{g, c.average_power()});
        CHECK(v < prev);
        prev = v;
    }
    // The smallest beta is (1/15)(2/15)/2, so the asymptotic regime starts late.
    const SnrSpec far{100.0, c.average_power()};
    CHECK(union_bound(c, q, far) / union_asymptote(c, q, far) == doctest::Approx(1.0).epsilon(0.01));
    CHECK_THROWS_AS(union_bound(build_rotated_constellation(4, 0.2), q, far), ConfigError);
}

TEST_CASE("diversity slope of a synthetic curve")
{
    BerCurve curve;
    for (double g = 20.0; g <= 40.0; g += 5.0) {
        BerPoint p;
        p.gamma_db = g;
        p.ber = 3.0 * std::pow(10.0, -2.0 * g / 10.0);
        p.bit_errors = 1000;
        curve.points.push_back(p);
    }
    CHECK(diversity_slope(curve, 5) == doctest::Approx(2.0));
    CHECK(diversity_slope(curve, 3) == doctest::Approx(2.0));
    curve.points.back().bit_errors = 10;
    CHECK_THROWS_AS(diversity_slope(curve, 3), InsufficientStatistics);
    CHECK_THROWS_AS(diversity_slope(curve, 2), InsufficientStatistics);
}
