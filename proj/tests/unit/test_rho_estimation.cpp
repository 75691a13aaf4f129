#include "rotsim/error.hpp"
#include "rotsim/rho_estimation.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace rotsim;

namespace {

// Independent enumeration with reduced (num, den) pairs of machine integers.
// Scaling every difference by (2^b - 1) leaves the ratios unchanged.
std::set<std::pair<long, long>> oracle_nonnegative(int m)
{
    const int n = m * m;
    std::set<long> diffs;
    for (int a = -(n - 1); a <= n - 1; a += 2) {
        for (int b = -(n - 1); b <= n - 1; b += 2) {
            diffs.insert(a - b);
        }
    }
    std::set<long> squares;
    for (long d : diffs) {
        squares.insert(d * d);
    }
    std::vector<long> deltas;
    for (long s1 : squares) {
        for (long s2 : squares) {
            deltas.push_back(s1 - s2);
        }
    }
    std::sort(deltas.begin(), deltas.end());
    deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
    std::set<std::pair<long, long>> out;
    for (long p : deltas) {
        for (long q : deltas) {
            if (q == 0 || (p != 0 && (p < 0) != (q < 0))) {
                continue;
            }
            long num = std::labs(p);
            long den = std::labs(q);
            const long g = std::gcd(num, den);
            out.insert({num / g, den / g});
        }
    }
    return out;
}

std::vector<Rational> as_rationals(const std::vector<std::string>& v)
{
    std::vector<Rational> out;
    for (const auto& s : v) {
        out.push_back(parse_rational(s));
    }
    return out;
}

}  // namespace

TEST_CASE("M=2 difference and ratio sets")
{
    const QSets q = build_qsets(2, 2);
    CHECK(q.differences == as_rationals({"-2", "-4/3", "-2/3", "0", "2/3", "4/3", "2"}));
    const auto expected = as_rationals({"0",   "1/9", "1/8", "1/5", "1/4", "1/3", "3/8", "4/9", "1/2", "5/9",
                                        "3/5", "5/8", "3/4", "4/5", "8/9", "1",   "9/8", "5/4", "4/3", "8/5",
                                        "5/3", "9/5", "2",   "9/4", "8/3", "3",   "4",   "5",   "8",   "9"});
    CHECK(q.nonnegative == expected);
    CHECK(q.positive_count() == 29);
    const auto oracle = oracle_nonnegative(2);
    CHECK(oracle.size() == q.nonnegative.size());
    for (const auto& r : q.nonnegative) {
        CHECK(oracle.count({static_cast<long>(numerator(r)), static_cast<long>(denominator(r))}) == 1);
    }
}

TEST_CASE("M=4 nonnegative set agrees with the oracle")
{
    const QSets q = build_qsets(4, 4);
    const auto oracle = oracle_nonnegative(4);
    CHECK(q.nonnegative.size() == oracle.size());
    CHECK(std::is_sorted(q.nonnegative.begin(), q.nonnegative.end()));
    // Closed under inversion (swap numerator and denominator pairs).
    for (const auto& r : q.positive()) {
        CHECK(std::binary_search(q.nonnegative.begin(), q.nonnegative.end(), Rational(1) / r));
    }
    CHECK_THROWS_AS(build_qsets(8, 6), SizeError);
    CHECK_THROWS_AS(build_qsets(2, 3), ConfigError);
}

TEST_CASE("induced intervals")
{
    const auto iv = induced_intervals(as_rationals({"1/2", "1", "3"}));
    REQUIRE(iv.size() == 3);
    CHECK(iv[0] == Interval{Rational(1, 2), Rational(1)});
    CHECK(iv[2] == Interval{Rational(3), std::nullopt});
    const auto full = full_partition(as_rationals({"1/2", "1"}));
    REQUIRE(full.size() == 3);
    CHECK(full[0] == Interval{Rational(0), Rational(1, 2)});
    CHECK_THROWS_AS(induced_intervals(as_rationals({"1", "1/2"})), ConfigError);
}

TEST_CASE("worked ML interval example")
{
    const Quantizer q(2);
    const auto t = custom_sequence(as_rationals({"1/4", "1/2", "1", "2", "4"}));
    const auto iv = ml_interval(t, as_rationals({"1/3", "1/3", "1", "1", "1"}), q);
    CHECK(iv == Interval{Rational(2, 3), Rational(4, 3)});
    CHECK(estimate_rho_exact(iv) == 1);
    CHECK(estimate_rho(iv) == 1.0);
    // Inconsistent outputs.
    CHECK_THROWS_AS(ml_interval(t, as_rationals({"1", "1/3", "1", "1", "1"}), q), InfeasibleOutputs);
    // All saturated: unbounded above, estimate is the infimum.
    const auto sat = ml_interval(t, as_rationals({"1", "1", "1", "1", "1"}), q);
    CHECK_FALSE(sat.upper.has_value());
    CHECK(estimate_rho_exact(sat) == Rational(8, 3));
}

TEST_CASE("ML interval always contains the true rho")
{
    const Quantizer q(4);
    const auto t = geometric_sequence(9, 1.57);
    std::mt19937_64 rng(4);
    std::exponential_distribution<double> e(0.5);
    for (int i = 0; i < 500; ++i) {
        const Rational rho = exact_rational(e(rng));
        const auto iv = ml_interval(t, training_codes(t, q, rho), q);
        CHECK(iv.contains(rho));
    }
}

TEST_CASE("feasible outputs tile [0, inf)")
{
    const Quantizer q(3);
    const auto t = geometric_sequence(5, 2.0);
    const auto rows = enumerate_feasible_outputs(t, q);
    REQUIRE_FALSE(rows.empty());
    CHECK(*rows.front().interval.lower == 0);
    CHECK_FALSE(rows.back().interval.upper.has_value());
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        CHECK(*rows[i].interval.upper == *rows[i + 1].interval.lower);
        CHECK(rows[i].codes != rows[i + 1].codes);
        CHECK(training_codes(t, q, *rows[i].interval.lower) == rows[i].codes);
    }
}

TEST_CASE("optimal training for M=2 gives a staircase")
{
    const QSets qs = build_qsets(2, 2);
    const Quantizer q(2);
    const auto t = theorem3_sequence(qs);
    REQUIRE(t.symbols.size() == 29);
    CHECK(std::is_sorted(t.symbols.begin(), t.symbols.end()));
    const auto rows = enumerate_feasible_outputs(t, q);
    REQUIRE(rows.size() == 30);
    for (std::size_t j = 0; j < rows.size(); ++j) {
        for (std::size_t k = 0; k < rows[j].codes.size(); ++k) {
            CHECK(rows[j].codes[k] == (k + j >= 29 ? 3 : 1));
        }
    }
    CHECK(check_sequence_optimality(t, qs, q));
    CHECK_FALSE(check_sequence_optimality(geometric_sequence(3, 4.0), qs, q));
    CHECK_THROWS_AS(theorem3_sequence(build_qsets(4, 4)), ConfigError);
    CHECK_THROWS_AS(sampled_subset_sequence(as_rationals({"1/7"}), &qs), ConfigError);
}

TEST_CASE("decision equivalence between weights")
{
    const auto c = build_rotated_constellation(2, matched_angle(2));
    const Quantizer q(2);
    CHECK(check_theorem1(1.0, 1.0, c, q));
    CHECK(check_theorem1(1.0, 1.05, c, q));
    CHECK_FALSE(check_theorem1(1.0, 1.2, c, q));
    CHECK_FALSE(check_theorem1(0.95, 1.2, c, q));
    const auto v = find_theorem1_violation(1.0, 1.2, c, q);
    REQUIRE(v.has_value());
    CHECK(v->u != v->v);

    const QSets qs = build_qsets(2, 2);
    CHECK(check_theorem2(1.0, 1.0, qs));
    CHECK(check_theorem2(1.02, 1.05, qs));
    CHECK_FALSE(check_theorem2(1.0, 1.05, qs));  // rho^2 = 1 sits on an element
    CHECK_FALSE(check_theorem2(1.0, 1.2, qs));  // 5/4 lies between the squares
    CHECK_FALSE(check_theorem2(0.5, 0.51, qs));  // rho^2 = 1/4 sits on an element
    CHECK(check_theorem2(100.0, 7.0, qs));     // both beyond 9
}
