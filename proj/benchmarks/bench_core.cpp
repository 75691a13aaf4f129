#include <benchmark/benchmark.h>

#include "rotsim/analysis.hpp"
#include "rotsim/detector.hpp"
#include "rotsim/rho_estimation.hpp"
#include "rotsim/simulator.hpp"

#include <bit>
#include <random>

using namespace rotsim;

static void BM_Quantize(benchmark::State& state)
{
    const Quantizer q(static_cast<int>(state.range(0)));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.2, 1.2);
    std::vector<double> xs(4096);
    for (auto& x : xs) {
        x = u(rng);
    }
    for (auto _ : state) {
        int acc = 0;
        for (double x : xs) {
            acc += q.code_unchecked(x);
        }
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(xs.size()));
}
BENCHMARK(BM_Quantize)->Arg(2)->Arg(4)->Arg(6);

static void BM_NearestIndex(benchmark::State& state)
{
    const int m = static_cast<int>(state.range(0));
    const auto c = build_rotated_constellation(m, matched_angle(m));
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Vec2> rs(1024);
    for (auto& r : rs) {
        r = {u(rng), u(rng)};
    }
    for (auto _ : state) {
        std::size_t acc = 0;
        for (const auto& r : rs) {
            acc += nearest_index(c.normalized(), 1.7, r[0], r[1]);
        }
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rs.size()));
}
BENCHMARK(BM_NearestIndex)->Arg(2)->Arg(4)->Arg(8);

// End-to-end trials per second of the BER engine at a single SNR point.
static void BM_SweepTrials(benchmark::State& state)
{
    SimConfig cfg;
    cfg.m = static_cast<int>(state.range(0));
    cfg.bits = 2 * std::countr_zero(static_cast<unsigned>(cfg.m));
    cfg.snr_db = {20.0};
    cfg.max_trials = 1 << 17;
    cfg.target_errors = 0;
    cfg.mode = state.range(1) != 0 ? DecodeMode::estimated_rho : DecodeMode::perfect_rho;
    if (state.range(1) != 0) {
        cfg.training = geometric_sequence(9, 1.57);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_ber_sweep(cfg));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.max_trials));
}
BENCHMARK(BM_SweepTrials)->Args({2, 0})->Args({4, 0})->Args({4, 1})->Args({8, 0})->Unit(benchmark::kMillisecond);

static void BM_ReducedPairwise(benchmark::State& state)
{
    const auto rs = make_reduced_system(1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_reduced_pairwise(rs, 0.01, 1 << 18, 3));
    }
    state.SetItemsProcessed(state.iterations() * (1 << 18));
}
BENCHMARK(BM_ReducedPairwise)->Unit(benchmark::kMillisecond);

static void BM_BuildQSets(benchmark::State& state)
{
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_qsets(m, m == 2 ? 2 : 4));
    }
}
BENCHMARK(BM_BuildQSets)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_Theorem1Check(benchmark::State& state)
{
    const auto c = build_rotated_constellation(2, matched_angle(2));
    const Quantizer q(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_theorem1(1.0, 1.05, c, q));
    }
}
BENCHMARK(BM_Theorem1Check);

BENCHMARK_MAIN();
