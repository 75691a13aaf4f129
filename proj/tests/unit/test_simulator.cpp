#include "rotsim/error.hpp"
#include "rotsim/simulator.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace rotsim;

namespace {

SimConfig small_config()
{
    SimConfig cfg;
    cfg.m = 2;
    cfg.bits = 2;
    cfg.snr_db = {5.0, 15.0};
    cfg.max_trials = 40'000;
    cfg.target_errors = 0;
    cfg.seed = 11;
    return cfg;
}

}  // namespace

TEST_CASE("theta keywords")
{
    CHECK(ThetaSpec::parse("matched").resolve(4) == doctest::Approx(std::atan(0.25)));
    CHECK(ThetaSpec::parse("algebraic").resolve(4) == doctest::Approx(0.5 * std::atan(2.0)));
    CHECK(ThetaSpec::parse("20").resolve(2) == doctest::Approx(20.0 * std::numbers::pi / 180));
    CHECK_THROWS_AS(ThetaSpec::parse("20deg"), ConfigError);
    CHECK(parse_decode_mode("fixed") == DecodeMode::fixed_rho_hat);
    CHECK_THROWS_AS(parse_decode_mode("oracle"), ConfigError);
}

TEST_CASE("config validation")
{
    auto cfg = small_config();
    CHECK_NOTHROW(cfg.validate());
    cfg.snr_db = {10.0, 10.0};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = small_config();
    cfg.max_trials = 9999;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = small_config();
    cfg.mode = DecodeMode::estimated_rho;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = small_config();
    cfg.m = 6;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = small_config();
    cfg.theta = ThetaSpec::degrees(45.0);
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("sweeps are deterministic and independent of worker count")
{
    auto cfg = small_config();
    const BerCurve a = run_ber_sweep(cfg);
    const BerCurve b = run_ber_sweep(cfg);
    cfg.workers = 3;
    const BerCurve c = run_ber_sweep(cfg);
    CHECK(a.points == b.points);
    CHECK(a.points == c.points);
    cfg.seed = 12;
    CHECK_FALSE(run_ber_sweep(cfg).points == a.points);
}

TEST_CASE("curve bookkeeping")
{
    auto cfg = small_config();
    const BerCurve curve = run_ber_sweep(cfg);
    REQUIRE(curve.points.size() == 2);
    for (const auto& p : curve.points) {
        CHECK(p.trials == 40'000);
        CHECK(p.ber == doctest::Approx(static_cast<double>(p.bit_errors) / (p.trials * 4.0)));
        CHECK(p.ser == doctest::Approx(static_cast<double>(p.symbol_errors) / (p.trials * 2.0)));
        CHECK(p.fallbacks == 0);
    }
    CHECK(curve.points[1].ber < curve.points[0].ber);

    cfg.target_errors = 200;
    cfg.max_trials = 10'000'000;
    const BerCurve stopped = run_ber_sweep(cfg);
    for (const auto& p : stopped.points) {
        CHECK(p.bit_errors >= 200);
        CHECK(p.trials % kBlockTrials == 0);
        CHECK(p.trials < 10'000'000);
    }
}

TEST_CASE("modes share random numbers at one SNR")
{
    auto cfg = small_config();
    const BerCurve perfect = run_ber_sweep(cfg);
    cfg.mode = DecodeMode::estimated_rho;
    cfg.training = theorem3_sequence(build_qsets(2, 2));
    const BerCurve est = run_ber_sweep(cfg);
    // The optimal sequence reproduces perfect-rho decisions except on a
    // probability-zero tie set.
    CHECK(est.points == perfect.points);

    cfg.mode = DecodeMode::unquantized;
    cfg.theta = ThetaSpec::algebraic();
    const BerCurve unq = run_unquantized_baseline(cfg);
    CHECK(unq.points.size() == 2);
    cfg.mode = DecodeMode::perfect_rho;
    CHECK_THROWS_AS(run_unquantized_baseline(cfg), ConfigError);
}

TEST_CASE("angle sweep reproduces the sweep value at the same seed")
{
    const double deg = std::atan(0.5) * 180 / std::numbers::pi;
    const auto rows = run_angle_sweep(2, 2, 15.0, {deg, 30.0}, 40'000, 11);
    REQUIRE(rows.size() == 2);
    SimConfig cfg = small_config();
    cfg.snr_db = {15.0};
    cfg.theta = ThetaSpec::degrees(deg);
    CHECK(rows[0].second == run_ber_sweep(cfg).points[0].ber);
    CHECK_THROWS_AS(run_angle_sweep(2, 2, 15.0, {50.0}, 40'000, 11), ConfigError);
}

TEST_CASE("SNR at a target BER")
{
    BerCurve c;
    c.points = {{10.0, 1e-2}, {20.0, 1e-4}};
    CHECK(snr_at_ber(c, 1e-3) == doctest::Approx(15.0));
    CHECK_THROWS_AS(snr_at_ber(c, 1e-6), ConfigError);
}
