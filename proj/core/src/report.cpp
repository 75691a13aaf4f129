#include "rotsim/report.hpp"

#include "rotsim/error.hpp"
#include "rotsim/version.hpp"

#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <numbers>
#include <sstream>

namespace rotsim {

using nlohmann::json;

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

namespace {

const char* const kCsvHeader = "gamma_db,ber,ser,bit_errors,sym_errors,trials,fallbacks";

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(line);
    while (std::getline(is, cur, sep)) {
        out.push_back(cur);
    }
    return out;
}

template<class T>
T parse_number(const std::string& s)
{
    T v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw ConfigError("malformed CSV field '" + s + "'");
    }
    return v;
}

json rationals(const std::vector<Rational>& v)
{
    json a = json::array();
    for (const auto& r : v) {
        a.push_back(to_string(r));
    }
    return a;
}

json interval_json(const Interval& iv)
{
    json j;
    j["lower"] = iv.lower ? json(to_string(*iv.lower)) : json(nullptr);
    j["upper"] = iv.upper ? json(to_string(*iv.upper)) : json(nullptr);
    return j;
}

json config_json(const SimConfig& cfg)
{
    json j;
    j["m"] = cfg.m;
    j["bits"] = cfg.bits;
    j["theta"] = cfg.theta.str();
    j["theta_rad"] = cfg.theta.resolve(cfg.m);
    j["snr_db"] = cfg.snr_db;
    j["max_trials"] = cfg.max_trials;
    j["target_errors"] = cfg.target_errors;
    j["mode"] = to_string(cfg.mode);
    j["training"] = cfg.mode == DecodeMode::estimated_rho ? cfg.training.describe() : "none";
    j["fixed_rho_hat"] = cfg.fixed_rho_hat;
    j["training_noise_sigma2"] = cfg.training_noise_sigma2;
    j["seed"] = cfg.seed;
    return j;
}

}  // namespace

std::string curve_to_csv(const BerCurve& curve)
{
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto& p : curve.points) {
        out += format_double(p.gamma_db) + ',' + format_double(p.ber) + ',' + format_double(p.ser) + ',' +
               std::to_string(p.bit_errors) + ',' + std::to_string(p.symbol_errors) + ',' +
               std::to_string(p.trials) + ',' + std::to_string(p.fallbacks) + '\n';
    }
    return out;
}

BerCurve curve_from_csv(const std::string& text)
{
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader) {
        throw ConfigError("unexpected CSV header");
    }
    BerCurve curve;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 7) {
            throw ConfigError("CSV row must have 7 fields: '" + line + "'");
        }
        BerPoint p;
        p.gamma_db = parse_number<double>(f[0]);
        p.ber = parse_number<double>(f[1]);
        p.ser = parse_number<double>(f[2]);
        p.bit_errors = parse_number<std::uint64_t>(f[3]);
        p.symbol_errors = parse_number<std::uint64_t>(f[4]);
        p.trials = parse_number<std::uint64_t>(f[5]);
        p.fallbacks = parse_number<std::uint64_t>(f[6]);
        curve.points.push_back(p);
    }
    return curve;
}

std::string curve_to_json(const BerCurve& curve, const SimConfig& cfg)
{
    json pts = json::array();
    for (const auto& p : curve.points) {
        json j;
        j["gamma_db"] = p.gamma_db;
        j["ber"] = p.ber;
        j["ser"] = p.ser;
        j["bit_errors"] = p.bit_errors;
        j["sym_errors"] = p.symbol_errors;
        j["trials"] = p.trials;
        j["fallbacks"] = p.fallbacks;
        j["ber_std_error"] = curve.ber_std_error(p);
        j["insufficient"] = curve.insufficient(p);
        pts.push_back(j);
    }
    json doc;
    doc["config"] = config_json(cfg);
    doc["bits_per_trial"] = curve.bits_per_trial;
    doc["points"] = pts;
    return doc.dump(2) + '\n';
}

std::string config_to_json(const SimConfig& cfg)
{
    return config_json(cfg).dump(2) + '\n';
}

std::string qsets_to_json(const QSets& q)
{
    json doc;
    doc["m"] = q.m;
    doc["bits"] = q.bits;
    doc["differences"] = rationals(q.differences);
    doc["squares"] = rationals(q.squares);
    doc["nonnegative"] = rationals(q.nonnegative);
    doc["positive_count"] = q.positive_count();
    doc["nonnegative_count"] = q.nonnegative.size();
    doc["ratio_count"] = q.ratios.size();
    return doc.dump(2) + '\n';
}

std::string feasible_to_json(const TrainingSequence& t, const std::vector<FeasibleOutput>& rows, bool optimal)
{
    json list = json::array();
    for (const auto& row : rows) {
        json j;
        j["codes"] = row.codes;
        j["interval"] = interval_json(row.interval);
        j["estimate"] = estimate_rho(row.interval);
        list.push_back(j);
    }
    json doc;
    doc["training"] = t.describe();
    doc["symbols"] = rationals(t.symbols);
    doc["feasible_outputs"] = list;
    doc["optimal"] = optimal;
    return doc.dump(2) + '\n';
}

std::string criteria_to_json(int m, int bits, double theta_rad, const CriteriaReport& report)
{
    json doc;
    doc["m"] = m;
    doc["bits"] = bits;
    doc["theta_deg"] = theta_rad * 180.0 / std::numbers::pi;
    doc["distinguishable"] = report.distinguishable;
    doc["admissible"] = report.admissible;
    doc["matched"] = report.matched;
    doc["min_bits"] = report.min_bits;
    doc["min_product_distance"] = report.min_product_distance;
    return doc.dump(2) + '\n';
}

std::string bound_table_csv(const std::vector<double>& gamma_db, const std::vector<double>& bound,
                            const std::vector<double>& asymptote)
{
    if (gamma_db.size() != bound.size() || gamma_db.size() != asymptote.size()) {
        throw ConfigError("bound table columns differ in length");
    }
    std::string out = "gamma_db,bound,asymptote\n";
    for (std::size_t i = 0; i < gamma_db.size(); ++i) {
        out += format_double(gamma_db[i]) + ',' + format_double(bound[i]) + ',' + format_double(asymptote[i]) + '\n';
    }
    return out;
}

std::string manifest_to_json(const RunManifest& m)
{
    json doc;
    doc["command"] = m.command;
    doc["config"] = m.config_json.empty() ? json::object() : json::parse(m.config_json);
    doc["seed"] = m.seed;
    doc["version"] = kVersion;
    doc["started"] = m.started;
    doc["finished"] = m.finished;
    doc["outputs"] = m.outputs;
    return doc.dump(2) + '\n';
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace rotsim
