#pragma once

#include "rotsim/constellation.hpp"
#include "rotsim/interval.hpp"
#include "rotsim/quantizer.hpp"
#include "rotsim/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rotsim {

/// Difference and ratio sets that determine where the weighted decoder's
/// decisions can change as a function of rho^2.
///
///   differences = {(a1 - a2) / (2^b - 1) : a1, a2 in S_{M^2}}
///   squares     = {d^2 : d in differences}
///   ratios      = {(s1 - s2) / (s3 - s4) : s_i in squares, s3 != s4}
///   nonnegative = {q in ratios : q >= 0}, which contains 0
struct QSets {
    int m = 0;
    int bits = 0;
    std::vector<Rational> differences;
    std::vector<Rational> squares;
    std::vector<Rational> ratios;
    std::vector<Rational> nonnegative;

    /// Strictly positive elements q_1 < ... < q_L.
    [[nodiscard]] std::vector<Rational> positive() const;
    [[nodiscard]] std::size_t positive_count() const { return nonnegative.size() - 1; }
};

/// Exact enumeration. M must be 2 or 4 with b = 2 log2 M (SizeError for
/// larger M, ConfigError for a mismatched b).
QSets build_qsets(int m, int bits);

/// {[s1, s2), ..., [sn, inf)} for sorted distinct nonnegative s.
std::vector<Interval> induced_intervals(const std::vector<Rational>& sorted);

/// Same, preceded by [0, s1) when s1 > 0, so the cells cover [0, inf).
std::vector<Interval> full_partition(const std::vector<Rational>& sorted);

enum class TrainingKind { theorem3, sampled_subset, geometric, custom };

/// Training symbols c_k in units of the peak value X, stored exactly.
struct TrainingSequence {
    std::vector<Rational> symbols;
    TrainingKind kind = TrainingKind::custom;
    std::vector<Rational> subset;  ///< sampled_subset / theorem3 source elements
    double ratio = 0.0;            ///< geometric d
    int length = 0;                ///< geometric l

    [[nodiscard]] std::vector<double> as_double() const;
    [[nodiscard]] std::string describe() const;
};

TrainingSequence theorem3_sequence(const QSets& qsets);
TrainingSequence geometric_sequence(int length, double ratio);
/// c_k = (2/3) / s_{l-k+1}. When `qsets` is given, every element must be a
/// positive member of its nonnegative set.
TrainingSequence sampled_subset_sequence(std::vector<Rational> subset, const QSets* qsets = nullptr);
TrainingSequence custom_sequence(std::vector<Rational> symbols);

/// Quantizer output codes r_k = Q_b(rho c_k), exact.
std::vector<int> training_codes(const TrainingSequence& t, const Quantizer& q, const Rational& rho);

/// Intersection over k of {rho >= 0 : Q_b(rho c_k) = r_k}. Throws
/// InfeasibleOutputs when empty.
Interval ml_interval(const TrainingSequence& t, const std::vector<int>& codes, const Quantizer& q);
Interval ml_interval(const TrainingSequence& t, const std::vector<Rational>& outputs, const Quantizer& q);

/// Midpoint of a bounded interval, else its infimum.
Rational estimate_rho_exact(const Interval& interval);
double estimate_rho(const Interval& interval);

struct FeasibleOutput {
    std::vector<int> codes;
    Interval interval;
};

/// Every distinct output sequence over rho in [0, inf), in increasing rho
/// order, with its ML interval.
std::vector<FeasibleOutput> enumerate_feasible_outputs(const TrainingSequence& t, const Quantizer& q);

/// A (r, u, v) triple on which the two weights order u and v differently.
struct Theorem1Violation {
    Vec2 r{};
    RealPair u{};
    RealPair v{};
};

/// Exhaustive search over all quantized r^I and candidate pairs (u, v) for
/// a sign disagreement D_E(rho) * D_E(rho_hat) < 0.
std::optional<Theorem1Violation> find_theorem1_violation(double rho, double rho_hat,
                                                         const RotatedConstellation& c,
                                                         const Quantizer& q);
bool check_theorem1(double rho, double rho_hat, const RotatedConstellation& c, const Quantizer& q);

/// For every l in the nonnegative set: rho^2 <= l implies rho_hat^2 <= l and
/// rho^2 >= l implies rho_hat^2 >= l. Evaluated exactly.
bool check_theorem2(double rho, double rho_hat, const QSets& qsets);

/// Every feasible ML interval lies inside one cell of the full partition
/// induced by qsets.nonnegative.
bool check_sequence_optimality(const TrainingSequence& t, const QSets& qsets, const Quantizer& q);

}  // namespace rotsim
