#include "rotsim/analysis.hpp"

#include "rotsim/error.hpp"
#include "rotsim/parallel.hpp"
#include "rotsim/random.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rotsim {

namespace {

constexpr std::uint64_t kReducedBlock = 1U << 16;

// Returns {mu, lambda} for one component.
std::pair<double, double> edge_distances(const Quantizer& q, double px, double py)
{
    const int kx = q.code_unchecked(px);
    const int ky = q.code_unchecked(py);
    if (kx == ky) {
        throw ConfigError("reduced system: projections share a quantizer cell");
    }
    const Interval cell = q.cell_of_code(kx);
    const double edge = py > px ? to_double(*cell.upper) : to_double(*cell.lower);
    return {std::abs(px - edge), std::abs(edge - py)};
}

}  // namespace

ReducedSystem make_reduced_system(double mu1, double lambda1, double mu2, double lambda2)
{
    if (!(mu1 > 0.0 && mu2 > 0.0 && lambda1 >= 0.0 && lambda2 >= 0.0)) {
        throw ConfigError("reduced system distances must be positive");
    }
    ReducedSystem rs{mu1, mu2, lambda1, lambda2, 0.0, 0.0};
    const double s1 = mu1 + lambda1;
    const double s2 = mu2 + lambda2;
    rs.alpha = (s1 / s2) * (s1 / s2);
    rs.beta = std::min(mu2, mu1 * s2 / s1);
    return rs;
}

namespace {

ReducedSystem reduced_system_unchecked(const RotatedConstellation& c, const Quantizer& q, std::size_t x_index,
                                       std::size_t y_index)
{
    const auto& x = c.normalized()[x_index];
    const auto& y = c.normalized()[y_index];
    const auto [mu1, lambda1] = edge_distances(q, x[0], y[0]);
    const auto [mu2, lambda2] = edge_distances(q, x[1], y[1]);
    return make_reduced_system(mu1, lambda1, mu2, lambda2);
}

}  // namespace

ReducedSystem reduced_system_for(const RotatedConstellation& c, const Quantizer& q, std::size_t x_index,
                                 std::size_t y_index)
{
    if (x_index == y_index || x_index >= c.size() || y_index >= c.size()) {
        throw ConfigError("reduced system needs two distinct transmit vectors");
    }
    if (!is_matched(c, q)) {
        throw ConfigError("reduced system requires a constellation matched to the quantizer");
    }
    return reduced_system_unchecked(c, q, x_index, y_index);
}

double pairwise_bound(const ReducedSystem& rs, double sigma2)
{
    if (!(sigma2 >= 0.0)) {
        throw ConfigError("pairwise_bound: sigma2 must be nonnegative");
    }
    const double e = sigma2 / (rs.beta * rs.beta);
    const double v = 1.0 - 1.0 / std::sqrt(1.0 + e) - 1.0 / std::sqrt(1.0 + e / rs.alpha) +
                     1.0 / std::sqrt(1.0 + e * (1.0 + 1.0 / rs.alpha));
    return std::clamp(0.5 * v, 0.0, 0.5);
}

double pairwise_asymptote(const ReducedSystem& rs, double transmit_power, double gamma)
{
    const double b2 = rs.beta * rs.beta;
    return 3.0 * transmit_power * transmit_power / (8.0 * rs.alpha * b2 * b2) / (gamma * gamma);
}

MonteCarloEstimate simulate_reduced_pairwise(const ReducedSystem& rs, double sigma2, std::uint64_t trials,
                                             std::uint64_t seed, int workers)
{
    if (trials < 10'000) {
        throw ConfigError("simulate_reduced_pairwise needs at least 1e4 trials");
    }
    const double w_std = std::sqrt(sigma2 / 2.0);
    const double s1 = rs.mu1 + rs.lambda1;
    const double s2 = rs.mu2 + rs.lambda2;

    const std::uint64_t blocks = (trials + kReducedBlock - 1) / kReducedBlock;
    std::vector<std::uint64_t> events(blocks, 0);
    parallel_for_blocks(0, blocks, workers, [&](std::size_t b) {
        RandomStream rng(seed, 0x7265647563656400ULL, b);
        const std::uint64_t n = std::min<std::uint64_t>(kReducedBlock, trials - b * kReducedBlock);
        std::uint64_t count = 0;
        for (std::uint64_t t = 0; t < n; ++t) {
            const double h1 = rayleigh(rng);
            const double h2 = rayleigh(rng);
            const double w1 = w_std * rng.normal();
            const double w2 = w_std * rng.normal();
            const bool second_stronger = h2 * s2 > h1 * s1;
            const bool e1 = second_stronger && w2 < -h2 * rs.mu2;
            const bool e2 = h2 * s2 < h1 * s1 && w1 > h1 * rs.mu1;
            count += (e1 || e2) ? 1U : 0U;
        }
        events[b] = count;
    });

    MonteCarloEstimate out;
    out.trials = trials;
    for (auto e : events) {
        out.events += e;
    }
    const auto n = static_cast<double>(trials);
    out.probability = static_cast<double>(out.events) / n;
    out.std_error = std::sqrt(out.probability * (1.0 - out.probability) / n);
    return out;
}

namespace {

template <class PairFn>
double union_sum(const RotatedConstellation& c, const Quantizer& q, PairFn&& pair_value)
{
    if (!is_matched(c, q)) {
        throw ConfigError("union bound requires a constellation matched to the quantizer");
    }
    double total = 0.0;
    for (std::size_t x = 0; x < c.size(); ++x) {
        for (std::size_t y = 0; y < c.size(); ++y) {
            if (x != y) {
                total += pair_value(reduced_system_unchecked(c, q, x, y));
            }
        }
    }
    return total / static_cast<double>(c.size());
}

}  // namespace

double union_bound(const RotatedConstellation& c, const Quantizer& q, const SnrSpec& snr)
{
    const double sigma2 = snr.sigma2();
    return union_sum(c, q, [&](const ReducedSystem& rs) { return pairwise_bound(rs, sigma2); });
}

double union_asymptote(const RotatedConstellation& c, const Quantizer& q, const SnrSpec& snr)
{
    const double g = snr.gamma_linear();
    return union_sum(c, q, [&](const ReducedSystem& rs) {
        return pairwise_asymptote(rs, snr.transmit_power, g);
    });
}

bool BerCurve::any_insufficient() const
{
    return std::any_of(points.begin(), points.end(), [this](const BerPoint& p) { return insufficient(p); });
}

double BerCurve::ber_std_error(const BerPoint& p) const
{
    const double n = static_cast<double>(p.trials) * static_cast<double>(bits_per_trial);
    if (n <= 0.0) {
        throw ConfigError("ber_std_error: curve has no bits-per-trial information");
    }
    return std::sqrt(std::max(p.ber * (1.0 - p.ber), 0.0) / n);
}

double diversity_slope(const BerCurve& curve, std::size_t window, std::uint64_t min_errors)
{
    if (window < 3 || curve.points.size() < window) {
        throw InsufficientStatistics("diversity slope needs a window of at least 3 points");
    }
    std::vector<BerPoint> pts = curve.points;
    std::sort(pts.begin(), pts.end(), [](const BerPoint& a, const BerPoint& b) { return a.gamma_db < b.gamma_db; });
    pts.erase(pts.begin(), pts.end() - static_cast<std::ptrdiff_t>(window));

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& p : pts) {
        if (p.bit_errors < min_errors || !(p.ber > 0.0)) {
            throw InsufficientStatistics("point at " + std::to_string(p.gamma_db) + " dB has " +
                                         std::to_string(p.bit_errors) + " bit errors");
        }
        const double x = p.gamma_db / 10.0;
        const double y = std::log10(p.ber);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const auto n = static_cast<double>(pts.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return -slope;
}

}  // namespace rotsim
