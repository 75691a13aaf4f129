// rotsim: command-line driver for the rotated-QAM quantized-receiver library.
//
// Exit codes: 0 success, 2 invalid configuration, 3 insufficient statistics
// under --strict, 1 anything else.

#include "rotsim/analysis.hpp"
#include "rotsim/constellation.hpp"
#include "rotsim/error.hpp"
#include "rotsim/report.hpp"
#include "rotsim/rho_estimation.hpp"
#include "rotsim/simulator.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <bit>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace {

using namespace rotsim;

constexpr int kExitConfig = 2;
constexpr int kExitStatistics = 3;

struct StatisticsShortfall : Error {
    using Error::Error;
};

std::vector<double> snr_grid(double start, double stop, double step)
{
    if (!(step > 0.0) || !(stop >= start)) {
        throw ConfigError("SNR grid needs step > 0 and stop >= start");
    }
    // Grid points are start + i*step; the half-step slack absorbs rounding in
    // (stop - start) / step.
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5)) + 1;
    std::vector<double> grid;
    for (std::size_t i = 0; i < n; ++i) {
        grid.push_back(start + static_cast<double>(i) * step);
    }
    return grid;
}

std::vector<Rational> read_subset_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open subset file '" + path + "'");
    }
    std::vector<Rational> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        const auto last = line.find_last_not_of(" \t\r");
        out.push_back(parse_rational(line.substr(first, last - first + 1)));
    }
    return out;
}

/// theorem3 | geometric:d,l | subset:file | none
TrainingSequence parse_training(const std::string& spec, int m, int bits)
{
    if (spec == "none") {
        return {};
    }
    if (spec == "theorem3") {
        return theorem3_sequence(build_qsets(m, bits));
    }
    if (spec.rfind("geometric:", 0) == 0) {
        const std::string args = spec.substr(10);
        const auto comma = args.find(',');
        if (comma == std::string::npos) {
            throw ConfigError("geometric training takes 'geometric:d,l'");
        }
        double d = 0.0;
        int l = 0;
        try {
            std::size_t used = 0;
            d = std::stod(args.substr(0, comma), &used);
            l = std::stoi(args.substr(comma + 1));
        } catch (const std::exception&) {
            throw ConfigError("geometric training takes 'geometric:d,l'");
        }
        return geometric_sequence(l, d);
    }
    if (spec.rfind("subset:", 0) == 0) {
        auto subset = read_subset_file(spec.substr(7));
        if (m == 2 || m == 4) {
            const QSets q = build_qsets(m, bits);
            return sampled_subset_sequence(std::move(subset), &q);
        }
        return sampled_subset_sequence(std::move(subset));
    }
    throw ConfigError("unknown training '" + spec + "' (theorem3 | geometric:d,l | subset:file | none)");
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write '" + path + "'");
    }
    out << text;
}

int workers_from_env(int requested)
{
    if (const char* env = std::getenv("ROTSIM_WORKERS"); env != nullptr && *env != '\0') {
        try {
            return std::stoi(env);
        } catch (const std::exception&) {
            throw ConfigError(std::string("ROTSIM_WORKERS is not an integer: '") + env + "'");
        }
    }
    return requested;
}

std::string command_line(int argc, char** argv)
{
    std::string s;
    for (int i = 0; i < argc; ++i) {
        s += (i ? " " : "") + std::string(argv[i]);
    }
    return s;
}

struct SweepArgs {
    int m = 4;
    int bits = 4;
    std::string theta = "matched";
    double snr_start = 10.0;
    double snr_stop = 35.0;
    double snr_step = 2.5;
    std::string mode = "perfect";
    std::string training = "none";
    double rho_hat = 1.0;
    double training_noise = 0.0;
    std::uint64_t trials = 100'000'000;
    std::uint64_t target_errors = 500;
    std::uint64_t seed = 1;
    std::string out;
    int workers = 1;
    bool strict = false;
};

int run_sweep(const SweepArgs& a, const std::string& cmdline)
{
    const std::string started = utc_timestamp();
    SimConfig cfg;
    cfg.m = a.m;
    cfg.bits = a.bits;
    cfg.theta = ThetaSpec::parse(a.theta);
    cfg.snr_db = snr_grid(a.snr_start, a.snr_stop, a.snr_step);
    cfg.mode = parse_decode_mode(a.mode);
    if (cfg.mode == DecodeMode::estimated_rho) {
        cfg.training = parse_training(a.training, a.m, a.bits);
    }
    cfg.fixed_rho_hat = a.rho_hat;
    cfg.training_noise_sigma2 = a.training_noise;
    cfg.max_trials = a.trials;
    cfg.target_errors = a.target_errors;
    cfg.seed = a.seed;
    cfg.workers = workers_from_env(a.workers);
    cfg.validate();

    const BerCurve curve = run_ber_sweep(cfg);
    const std::string csv = curve_to_csv(curve);
    if (a.out.empty()) {
        std::cout << csv;
    } else {
        RunManifest man;
        man.command = cmdline;
        man.config_json = config_to_json(cfg);
        man.seed = cfg.seed;
        man.started = started;
        man.outputs = {a.out + ".csv", a.out + ".json"};
        write_file(a.out + ".csv", csv);
        write_file(a.out + ".json", curve_to_json(curve, cfg));
        man.finished = utc_timestamp();
        write_file(a.out + ".manifest.json", manifest_to_json(man));
    }
    for (const auto& p : curve.points) {
        if (curve.insufficient(p)) {
            std::cerr << "warning: " << p.bit_errors << " bit errors at " << p.gamma_db
                      << " dB (fewer than " << curve.min_errors << ")\n";
        }
    }
    if (a.strict && curve.any_insufficient()) {
        throw StatisticsShortfall("insufficient statistics (--strict)");
    }
    return 0;
}

int run_check_angles(int m, int bits, const std::string& theta)
{
    if (!is_supported_order(m) || bits < 1 || bits > 16) {
        throw ConfigError("invalid M/b combination");
    }
    nlohmann::json doc;
    doc["m"] = m;
    doc["bits"] = bits;
    nlohmann::json ranges = nlohmann::json::array();
    for (const auto& r : admissible_angle_range(m, bits)) {
        ranges.push_back({{"lower_deg", r.lower_deg}, {"upper_deg", r.upper_deg},
                          {"open_at_upper_limit", r.open_at_upper_limit}});
    }
    doc["admissible_ranges_deg"] = ranges;
    if (!theta.empty()) {
        const double rad = ThetaSpec::parse(theta).resolve(m);
        const RotatedConstellation c = build_rotated_constellation(m, rad);
        doc["criteria"] = nlohmann::json::parse(criteria_to_json(m, bits, rad, evaluate_criteria(c, Quantizer(bits))));
    }
    std::cout << doc.dump(2) << '\n';
    return 0;
}

int run_qsets(int m, const std::string& check_training)
{
    if (m != 2 && m != 4) {
        throw ConfigError("qsets supports M = 2 or 4");
    }
    const int bits = 2 * std::countr_zero(static_cast<unsigned>(m));
    const QSets q = build_qsets(m, bits);
    auto doc = nlohmann::json::parse(qsets_to_json(q));
    if (!check_training.empty()) {
        const Quantizer quant(bits);
        const TrainingSequence t = parse_training(check_training, m, bits);
        const bool optimal = check_sequence_optimality(t, q, quant);
        doc["training_check"] =
            nlohmann::json::parse(feasible_to_json(t, enumerate_feasible_outputs(t, quant), optimal));
        doc["optimal"] = optimal;
    }
    std::cout << doc.dump(2) << '\n';
    return 0;
}

int run_bound(int m, int bits, const std::string& theta, const std::vector<double>& snr)
{
    if (snr.empty()) {
        throw ConfigError("--snr needs at least one value");
    }
    const double rad = ThetaSpec::parse(theta).resolve(m);
    const RotatedConstellation c = build_rotated_constellation(m, rad);
    const Quantizer q(bits);
    if (!is_matched(c, q)) {
        throw ConfigError("the bound assumes a matched constellation (theta = arctan(1/M), b = 2 log2 M)");
    }
    std::vector<double> bound;
    std::vector<double> asym;
    for (double g : snr) {
        const SnrSpec s{g, c.average_power()};
        bound.push_back(union_bound(c, q, s));
        asym.push_back(union_asymptote(c, q, s));
    }
    std::cout << bound_table_csv(snr, bound, asym);
    return 0;
}

int run_angle(int m, int bits, double snr, double start, double stop, double step, std::uint64_t trials,
              std::uint64_t seed, int workers)
{
    const auto grid = snr_grid(start, stop, step);
    const auto rows = run_angle_sweep(m, bits, snr, grid, trials, seed, workers_from_env(workers));
    std::cout << "theta_deg,ber\n";
    for (const auto& [deg, ber] : rows) {
        std::cout << format_double(deg) << ',' << format_double(ber) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Rotated QAM over block fading with a low-resolution quantized receiver"};
    app.require_subcommand(1);

    SweepArgs sweep;
    auto* cmd_sweep = app.add_subcommand("sweep-ber", "Monte Carlo BER/SER curve");
    cmd_sweep->add_option("--m", sweep.m, "PAM size M (QAM size M^2)");
    cmd_sweep->add_option("--bits", sweep.bits, "quantizer bits b");
    cmd_sweep->add_option("--theta", sweep.theta, "degrees | matched | algebraic");
    cmd_sweep->add_option("--snr-start", sweep.snr_start, "dB");
    cmd_sweep->add_option("--snr-stop", sweep.snr_stop, "dB");
    cmd_sweep->add_option("--snr-step", sweep.snr_step, "dB");
    cmd_sweep->add_option("--mode", sweep.mode, "perfect | estimated | fixed | unquantized");
    cmd_sweep->add_option("--training", sweep.training, "theorem3 | geometric:d,l | subset:file | none");
    cmd_sweep->add_option("--rho-hat", sweep.rho_hat, "fixed-mode estimate");
    cmd_sweep->add_option("--training-noise", sweep.training_noise, "noise variance on training samples");
    cmd_sweep->add_option("--trials", sweep.trials, "trial cap per point");
    cmd_sweep->add_option("--target-errors", sweep.target_errors, "stop after this many bit errors (0: off)");
    cmd_sweep->add_option("--seed", sweep.seed);
    cmd_sweep->add_option("--out", sweep.out, "output prefix for .csv/.json/.manifest.json (stdout if empty)");
    cmd_sweep->add_option("--workers", sweep.workers, "threads (ROTSIM_WORKERS overrides)");
    cmd_sweep->add_flag("--strict", sweep.strict, "exit 3 if any point has too few errors");

    int ca_m = 4;
    int ca_bits = 4;
    std::string ca_theta;
    auto* cmd_angles = app.add_subcommand("check-angles", "admissible angle ranges and criteria report");
    cmd_angles->add_option("--m", ca_m);
    cmd_angles->add_option("--bits", ca_bits);
    cmd_angles->add_option("--theta", ca_theta, "degrees | matched | algebraic");

    int qs_m = 2;
    std::string qs_training;
    auto* cmd_qsets = app.add_subcommand("qsets", "exact difference and ratio sets");
    cmd_qsets->add_option("--m", qs_m);
    cmd_qsets->add_option("--check-training", qs_training, "theorem3 | geometric:d,l | subset:file");

    int bd_m = 2;
    int bd_bits = 2;
    std::string bd_theta = "matched";
    std::vector<double> bd_snr;
    auto* cmd_bound = app.add_subcommand("bound", "union bound and asymptote per SNR");
    cmd_bound->add_option("--m", bd_m);
    cmd_bound->add_option("--bits", bd_bits);
    cmd_bound->add_option("--theta", bd_theta);
    cmd_bound->add_option("--snr", bd_snr, "dB values")->delimiter(',');

    int as_m = 4;
    int as_bits = 4;
    double as_snr = 30.0;
    double as_start = 11.5;
    double as_stop = 16.5;
    double as_step = 0.5;
    std::uint64_t as_trials = 1'000'000;
    std::uint64_t as_seed = 1;
    int as_workers = 1;
    auto* cmd_asweep = app.add_subcommand("sweep-angle", "BER versus rotation angle at one SNR");
    cmd_asweep->add_option("--m", as_m);
    cmd_asweep->add_option("--bits", as_bits);
    cmd_asweep->add_option("--snr", as_snr, "dB");
    cmd_asweep->add_option("--theta-start", as_start, "degrees");
    cmd_asweep->add_option("--theta-stop", as_stop, "degrees");
    cmd_asweep->add_option("--theta-step", as_step, "degrees");
    cmd_asweep->add_option("--trials", as_trials);
    cmd_asweep->add_option("--seed", as_seed);
    cmd_asweep->add_option("--workers", as_workers);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (*cmd_sweep) {
            return run_sweep(sweep, command_line(argc, argv));
        }
        if (*cmd_angles) {
            return run_check_angles(ca_m, ca_bits, ca_theta);
        }
        if (*cmd_qsets) {
            return run_qsets(qs_m, qs_training);
        }
        if (*cmd_bound) {
            return run_bound(bd_m, bd_bits, bd_theta, bd_snr);
        }
        if (*cmd_asweep) {
            return run_angle(as_m, as_bits, as_snr, as_start, as_stop, as_step, as_trials, as_seed, as_workers);
        }
    } catch (const StatisticsShortfall& e) {
        std::cerr << "rotsim: " << e.what() << '\n';
        return kExitStatistics;
    } catch (const ConfigError& e) {
        std::cerr << "rotsim: " << e.what() << '\n';
        return kExitConfig;
    } catch (const SizeError& e) {
        std::cerr << "rotsim: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "rotsim: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
