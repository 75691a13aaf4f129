#pragma once

#include "rotsim/analysis.hpp"
#include "rotsim/rho_estimation.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rotsim {

/// Rotation angle selection: explicit radians, arctan(1/M), or (1/2) arctan 2.
struct ThetaSpec {
    enum class Kind { radians, matched, algebraic };
    Kind kind = Kind::matched;
    double radians_value = 0.0;

    static ThetaSpec matched() { return {Kind::matched, 0.0}; }
    static ThetaSpec algebraic() { return {Kind::algebraic, 0.0}; }
    static ThetaSpec radians(double r) { return {Kind::radians, r}; }
    static ThetaSpec degrees(double d);
    /// "matched", "algebraic", or an angle in degrees.
    static ThetaSpec parse(const std::string& text);

    [[nodiscard]] double resolve(int m) const;
    [[nodiscard]] std::string str() const;
};

enum class DecodeMode { perfect_rho, estimated_rho, fixed_rho_hat, unquantized };

std::string to_string(DecodeMode mode);
DecodeMode parse_decode_mode(const std::string& text);

struct SimConfig {
    int m = 4;
    int bits = 4;
    ThetaSpec theta = ThetaSpec::matched();
    std::vector<double> snr_db;
    /// Per-point trial cap.
    std::uint64_t max_trials = 100'000'000;
    /// Stop a point once this many bit errors are collected; 0 disables.
    std::uint64_t target_errors = 500;
    DecodeMode mode = DecodeMode::perfect_rho;
    TrainingSequence training;
    double fixed_rho_hat = 1.0;
    /// Gaussian variance added to rho c_k before quantization in training.
    double training_noise_sigma2 = 0.0;
    std::uint64_t seed = 1;
    int workers = 1;

    /// Throws ConfigError.
    void validate() const;
};

/// Counters for a run of trials; merged associatively.
struct TrialOutcome {
    std::uint64_t trials = 0;
    std::uint64_t symbol_errors = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t fallbacks = 0;

    TrialOutcome& operator+=(const TrialOutcome& other) noexcept;
};

/// Trials per RNG block; fixed so results do not depend on worker count.
inline constexpr std::uint64_t kBlockTrials = 4096;

/// Error-rate curve over cfg.snr_db. Deterministic for a fixed config;
/// the worker count does not change the result.
BerCurve run_ber_sweep(const SimConfig& cfg);

/// Unquantized receiver; cfg.mode must be DecodeMode::unquantized.
BerCurve run_unquantized_baseline(const SimConfig& cfg);

/// One BER point per angle (degrees in [0, 45)) at a fixed SNR and trial count.
std::vector<std::pair<double, double>> run_angle_sweep(int m, int bits, double gamma_db,
                                                       const std::vector<double>& theta_deg,
                                                       std::uint64_t trials, std::uint64_t seed,
                                                       int workers = 1);

/// SNR (dB) at which the curve crosses `target_ber`, by linear interpolation
/// of log10(BER) between the bracketing points. Throws ConfigError if the
/// curve does not bracket the target.
double snr_at_ber(const BerCurve& curve, double target_ber);

}  // namespace rotsim
