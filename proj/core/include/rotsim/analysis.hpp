#pragma once

#include "rotsim/channel.hpp"
#include "rotsim/constellation.hpp"
#include "rotsim/quantizer.hpp"

#include <cstdint>
#include <vector>

namespace rotsim {

/// Two-point reduced system used to bound the pairwise error probability
/// between transmit vectors x and y. Per component i, mu_i is the distance
/// from x_i/X to the quantizer edge separating it from y_i/X (the edge
/// nearest x), and lambda_i the distance from that edge on to y_i/X.
struct ReducedSystem {
    double mu1 = 0.0;
    double mu2 = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double alpha = 0.0;  ///< ((mu1 + lambda1) / (mu2 + lambda2))^2
    double beta = 0.0;   ///< min(mu2, mu1 (mu2 + lambda2) / (mu1 + lambda1))
};

ReducedSystem make_reduced_system(double mu1, double lambda1, double mu2, double lambda2);

/// Requires a matched constellation and x != y with different quantized
/// projections in both components (ConfigError otherwise).
ReducedSystem reduced_system_for(const RotatedConstellation& c, const Quantizer& q, std::size_t x_index,
                                 std::size_t y_index);

/// Closed-form Rayleigh-averaged upper bound on P_e(x, y).
double pairwise_bound(const ReducedSystem& rs, double sigma2);

/// High-SNR form 3 P_T^2 / (8 alpha beta^4) gamma^-2 (gamma linear).
double pairwise_asymptote(const ReducedSystem& rs, double transmit_power, double gamma);

struct MonteCarloEstimate {
    double probability = 0.0;
    double std_error = 0.0;
    std::uint64_t events = 0;
    std::uint64_t trials = 0;
};

/// Relative frequency of the reduced-system error events E1 u E2 over
/// Rayleigh (h1, h2) and w ~ N(0, sigma^2/2). Parallel and deterministic
/// for a fixed (seed, trials) regardless of `workers`.
MonteCarloEstimate simulate_reduced_pairwise(const ReducedSystem& rs, double sigma2, std::uint64_t trials,
                                             std::uint64_t seed, int workers = 1);

/// (1/|X|) sum_x sum_{y != x} pairwise_bound over the real-component set.
double union_bound(const RotatedConstellation& c, const Quantizer& q, const SnrSpec& snr);
/// Same sum with pairwise_asymptote in place of the bound.
double union_asymptote(const RotatedConstellation& c, const Quantizer& q, const SnrSpec& snr);

/// One SNR point; fields mirror the CSV columns.
struct BerPoint {
    double gamma_db = 0.0;
    double ber = 0.0;
    double ser = 0.0;
    std::uint64_t bit_errors = 0;
    std::uint64_t symbol_errors = 0;
    std::uint64_t trials = 0;
    std::uint64_t fallbacks = 0;

    friend bool operator==(const BerPoint&, const BerPoint&) = default;
};

struct BerCurve {
    std::vector<BerPoint> points;
    /// 4 log2 M for simulated curves; 0 when unknown (e.g. parsed CSV).
    int bits_per_trial = 0;
    /// Error count below which a point is flagged as insufficient.
    std::uint64_t min_errors = 0;

    [[nodiscard]] bool insufficient(const BerPoint& p) const { return p.bit_errors < min_errors; }
    [[nodiscard]] bool any_insufficient() const;
    /// Binomial standard error of a point's BER (needs bits_per_trial).
    [[nodiscard]] double ber_std_error(const BerPoint& p) const;
};

/// Negated least-squares slope of log10(BER) against log10(gamma) over the
/// `window` highest-SNR points. Throws InsufficientStatistics if a window
/// point has fewer than `min_errors` bit errors or the window has < 3 points.
double diversity_slope(const BerCurve& curve, std::size_t window, std::uint64_t min_errors = 100);

}  // namespace rotsim
