#include "rotsim/simulator.hpp"

#include "rotsim/channel.hpp"
#include "rotsim/detector.hpp"
#include "rotsim/error.hpp"
#include "rotsim/parallel.hpp"
#include "rotsim/random.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace rotsim {

ThetaSpec ThetaSpec::degrees(double d)
{
    return radians(d * std::numbers::pi / 180.0);
}

ThetaSpec ThetaSpec::parse(const std::string& text)
{
    if (text == "matched") {
        return matched();
    }
    if (text == "algebraic") {
        return algebraic();
    }
    std::size_t used = 0;
    double deg = 0.0;
    try {
        deg = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError("theta must be 'matched', 'algebraic' or degrees; got '" + text + "'");
    }
    if (used != text.size()) {
        throw ConfigError("theta must be 'matched', 'algebraic' or degrees; got '" + text + "'");
    }
    return degrees(deg);
}

double ThetaSpec::resolve(int m) const
{
    switch (kind) {
    case Kind::matched:
        return matched_angle(m);
    case Kind::algebraic:
        return algebraic_angle();
    case Kind::radians:
        break;
    }
    return radians_value;
}

std::string ThetaSpec::str() const
{
    switch (kind) {
    case Kind::matched:
        return "matched";
    case Kind::algebraic:
        return "algebraic";
    case Kind::radians:
        break;
    }
    std::ostringstream os;
    os.precision(17);
    os << radians_value * 180.0 / std::numbers::pi;
    return os.str();
}

std::string to_string(DecodeMode mode)
{
    switch (mode) {
    case DecodeMode::perfect_rho:
        return "perfect";
    case DecodeMode::estimated_rho:
        return "estimated";
    case DecodeMode::fixed_rho_hat:
        return "fixed";
    case DecodeMode::unquantized:
        return "unquantized";
    }
    return "unknown";
}

DecodeMode parse_decode_mode(const std::string& text)
{
    if (text == "perfect") {
        return DecodeMode::perfect_rho;
    }
    if (text == "estimated") {
        return DecodeMode::estimated_rho;
    }
    if (text == "fixed") {
        return DecodeMode::fixed_rho_hat;
    }
    if (text == "unquantized") {
        return DecodeMode::unquantized;
    }
    throw ConfigError("unknown mode '" + text + "' (perfect | estimated | fixed | unquantized)");
}

void SimConfig::validate() const
{
    if (!is_supported_order(m)) {
        throw ConfigError("M must be one of 2, 4, 8, 16; got " + std::to_string(m));
    }
    if (bits < 1 || bits > 16) {
        throw ConfigError("bits must be in [1, 16]; got " + std::to_string(bits));
    }
    const double theta_rad = theta.resolve(m);
    if (!(theta_rad >= 0.0 && theta_rad < std::numbers::pi / 4.0)) {
        throw ConfigError("rotation angle must lie in [0, 45) degrees");
    }
    if (snr_db.empty()) {
        throw ConfigError("SNR grid is empty");
    }
    for (std::size_t i = 0; i < snr_db.size(); ++i) {
        if (!std::isfinite(snr_db[i]) || (i > 0 && !(snr_db[i] > snr_db[i - 1]))) {
            throw ConfigError("SNR grid must be finite and strictly increasing");
        }
    }
    if (max_trials < 10'000) {
        throw ConfigError("trial cap must be at least 1e4");
    }
    if (mode == DecodeMode::estimated_rho && training.symbols.empty()) {
        throw ConfigError("estimated-rho mode needs a training sequence");
    }
    if (mode == DecodeMode::fixed_rho_hat && !(fixed_rho_hat > 0.0 && std::isfinite(fixed_rho_hat))) {
        throw ConfigError("fixed rho-hat must be positive");
    }
    if (!(training_noise_sigma2 >= 0.0)) {
        throw ConfigError("training noise variance must be nonnegative");
    }
    if (workers < 1) {
        throw ConfigError("workers must be >= 1");
    }
}

TrialOutcome& TrialOutcome::operator+=(const TrialOutcome& other) noexcept
{
    trials += other.trials;
    symbol_errors += other.symbol_errors;
    bit_errors += other.bit_errors;
    fallbacks += other.fallbacks;
    return *this;
}

namespace {

// Immutable per-sweep state shared by all blocks.
struct Engine {
    const SimConfig& cfg;
    RotatedConstellation constellation;
    Quantizer quantizer;
    std::vector<double> training;
    std::vector<std::uint8_t> bit_distance;  // Gray-label Hamming distance, [i * m + j]

    explicit Engine(const SimConfig& config)
        : cfg(config),
          constellation(config.m, config.theta.resolve(config.m)),
          quantizer(config.bits),
          training(config.training.as_double())
    {
        const auto& pam = constellation.alphabet().values;
        for (int a : pam) {
            for (int b : pam) {
                bit_distance.push_back(
                    static_cast<std::uint8_t>(std::popcount(gray_label(a, config.m) ^ gray_label(b, config.m))));
            }
        }
    }

    // ML interval midpoint/infimum from the training outputs; float path of
    // ml_interval + estimate_rho.
    double estimate(double rho, RandomStream& rng, bool& fallback) const
    {
        const double inv_scale = 1.0 / quantizer.scale();
        const int top = quantizer.scale();
        const double noise_std = std::sqrt(cfg.training_noise_sigma2);
        double lo = 0.0;
        double hi = std::numeric_limits<double>::infinity();
        double last_lo = 0.0;
        double last_hi = hi;
        for (double c : training) {
            double s = rho * c;
            if (noise_std > 0.0) {
                s += noise_std * rng.normal();
            }
            const int k = quantizer.code_unchecked(s);
            const double cell_lo = k == -top ? -std::numeric_limits<double>::infinity() : (k - 1) * inv_scale / c;
            const double cell_hi = k == top ? std::numeric_limits<double>::infinity() : (k + 1) * inv_scale / c;
            lo = std::max(lo, cell_lo);
            hi = std::min(hi, cell_hi);
            last_lo = std::max(0.0, cell_lo);
            last_hi = cell_hi;
        }
        fallback = !(lo < hi);
        if (fallback) {
            lo = last_lo;
            hi = last_hi;
            if (!(lo < hi)) {
                return 0.0;
            }
        }
        return std::isinf(hi) ? lo : 0.5 * (lo + hi);
    }

    TrialOutcome run_block(double gamma_db, std::uint64_t block, std::uint64_t n) const
    {
        RandomStream rng(cfg.seed, stream_key(gamma_db), block);
        const double sigma2 = SnrSpec{gamma_db, constellation.average_power()}.sigma2();
        const auto& cand = constellation.normalized();
        const int m = cfg.m;
        const double x_peak = constellation.peak();
        const bool quantize = cfg.mode != DecodeMode::unquantized;

        TrialOutcome out;
        out.trials = n;
        for (std::uint64_t t = 0; t < n; ++t) {
            const FadePair fp = draw_fade_pair(rng, sigma2);
            const int a1 = rng.uniform_index(m);
            const int a2 = rng.uniform_index(m);
            const int b1 = rng.uniform_index(m);
            const int b2 = rng.uniform_index(m);
            const std::size_t xi = static_cast<std::size_t>(a1 * m + a2);
            const std::size_t xq = static_cast<std::size_t>(b1 * m + b2);

            const double w_std = std::sqrt(fp.sigma2 / 2.0);
            const double n1 = w_std / (fp.h1 * x_peak);
            const double n2 = w_std / (fp.h2 * x_peak);
            double s1i = cand[xi][0] + n1 * rng.normal();
            double s1q = cand[xq][0] + n1 * rng.normal();
            double s2i = cand[xi][1] + n2 * rng.normal();
            double s2q = cand[xq][1] + n2 * rng.normal();
            if (quantize) {
                s1i = quantizer.level(quantizer.code_unchecked(s1i));
                s1q = quantizer.level(quantizer.code_unchecked(s1q));
                s2i = quantizer.level(quantizer.code_unchecked(s2i));
                s2q = quantizer.level(quantizer.code_unchecked(s2q));
            }

            double zeta = fp.rho;
            if (cfg.mode == DecodeMode::fixed_rho_hat) {
                zeta = cfg.fixed_rho_hat;
            } else if (cfg.mode == DecodeMode::estimated_rho) {
                bool fallback = false;
                zeta = estimate(fp.rho, rng, fallback);
                out.fallbacks += fallback ? 1U : 0U;
            }
            const double zeta2 = zeta * zeta;
            const std::size_t di = nearest_index(cand, zeta2, s1i, s2i);
            const std::size_t dq = nearest_index(cand, zeta2, s1q, s2q);

            const int da1 = static_cast<int>(di) / m;
            const int da2 = static_cast<int>(di) % m;
            const int db1 = static_cast<int>(dq) / m;
            const int db2 = static_cast<int>(dq) % m;
            out.symbol_errors += (a1 != da1 || b1 != db1) ? 1U : 0U;
            out.symbol_errors += (a2 != da2 || b2 != db2) ? 1U : 0U;
            const auto d = [this, m](int x, int y) { return bit_distance[static_cast<std::size_t>(x * m + y)]; };
            out.bit_errors += static_cast<std::uint64_t>(d(a1, da1) + d(a2, da2) + d(b1, db1) + d(b2, db2));
        }
        return out;
    }

    BerPoint run_point(double gamma_db) const
    {
        const std::uint64_t cap = cfg.max_trials;
        const std::uint64_t total_blocks = (cap + kBlockTrials - 1) / kBlockTrials;
        const std::uint64_t wave = std::max<std::uint64_t>(8, 4 * static_cast<std::uint64_t>(cfg.workers));

        std::vector<TrialOutcome> blocks;
        TrialOutcome acc;
        std::uint64_t done = 0;
        bool stop = false;
        while (!stop && done < total_blocks) {
            const std::uint64_t count = std::min(wave, total_blocks - done);
            blocks.assign(count, TrialOutcome{});
            parallel_for_blocks(done, count, cfg.workers, [&](std::size_t b) {
                const std::uint64_t n = std::min<std::uint64_t>(kBlockTrials, cap - b * kBlockTrials);
                blocks[b - done] = run_block(gamma_db, b, n);
            });
            // Prefix scan in block order keeps the stopping point independent
            // of scheduling.
            for (const auto& blk : blocks) {
                acc += blk;
                ++done;
                if (cfg.target_errors > 0 && acc.bit_errors >= cfg.target_errors) {
                    stop = true;
                    break;
                }
            }
        }

        BerPoint p;
        p.gamma_db = gamma_db;
        p.trials = acc.trials;
        p.bit_errors = acc.bit_errors;
        p.symbol_errors = acc.symbol_errors;
        p.fallbacks = acc.fallbacks;
        const auto bits = static_cast<double>(bits_per_pair(cfg.m));
        p.ber = static_cast<double>(acc.bit_errors) / (static_cast<double>(acc.trials) * bits);
        p.ser = static_cast<double>(acc.symbol_errors) / (2.0 * static_cast<double>(acc.trials));
        return p;
    }
};

}  // namespace

BerCurve run_ber_sweep(const SimConfig& cfg)
{
    cfg.validate();
    const Engine engine(cfg);
    BerCurve curve;
    curve.bits_per_trial = bits_per_pair(cfg.m);
    curve.min_errors = cfg.target_errors > 0 ? cfg.target_errors : 100;
    for (double g : cfg.snr_db) {
        curve.points.push_back(engine.run_point(g));
    }
    return curve;
}

BerCurve run_unquantized_baseline(const SimConfig& cfg)
{
    if (cfg.mode != DecodeMode::unquantized) {
        throw ConfigError("unquantized baseline requires mode = unquantized");
    }
    return run_ber_sweep(cfg);
}

std::vector<std::pair<double, double>> run_angle_sweep(int m, int bits, double gamma_db,
                                                       const std::vector<double>& theta_deg,
                                                       std::uint64_t trials, std::uint64_t seed, int workers)
{
    std::vector<std::pair<double, double>> out;
    out.reserve(theta_deg.size());
    for (double deg : theta_deg) {
        if (!(deg >= 0.0 && deg < 45.0)) {
            throw ConfigError("angle sweep grid must lie in [0, 45) degrees");
        }
        SimConfig cfg;
        cfg.m = m;
        cfg.bits = bits;
        cfg.theta = ThetaSpec::degrees(deg);
        cfg.snr_db = {gamma_db};
        cfg.max_trials = trials;
        cfg.target_errors = 0;
        cfg.seed = seed;
        cfg.workers = workers;
        const BerCurve curve = run_ber_sweep(cfg);
        out.emplace_back(deg, curve.points.front().ber);
    }
    return out;
}

double snr_at_ber(const BerCurve& curve, double target_ber)
{
    if (!(target_ber > 0.0)) {
        throw ConfigError("target BER must be positive");
    }
    const auto& pts = curve.points;
    const double target = std::log10(target_ber);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const auto& a = pts[i - 1];
        const auto& b = pts[i];
        if (a.ber >= target_ber && b.ber <= target_ber && a.ber > 0.0 && b.ber > 0.0) {
            const double la = std::log10(a.ber);
            const double lb = std::log10(b.ber);
            if (la == lb) {
                return a.gamma_db;
            }
            return a.gamma_db + (target - la) * (b.gamma_db - a.gamma_db) / (lb - la);
        }
    }
    throw ConfigError("curve does not bracket the target BER");
}

}  // namespace rotsim
