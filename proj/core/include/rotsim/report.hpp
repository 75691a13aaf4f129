#pragma once

#include "rotsim/analysis.hpp"
#include "rotsim/rho_estimation.hpp"
#include "rotsim/simulator.hpp"

#include <string>
#include <vector>

namespace rotsim {

/// Shortest string that round-trips to the same double.
std::string format_double(double v);

/// Header: gamma_db,ber,ser,bit_errors,sym_errors,trials,fallbacks
std::string curve_to_csv(const BerCurve& curve);
/// Inverse of curve_to_csv. Throws ConfigError on malformed input.
BerCurve curve_from_csv(const std::string& text);

/// Pretty-printed JSON documents; keys are sorted so output is stable.
std::string curve_to_json(const BerCurve& curve, const SimConfig& cfg);
std::string config_to_json(const SimConfig& cfg);
std::string qsets_to_json(const QSets& q);
std::string feasible_to_json(const TrainingSequence& t, const std::vector<FeasibleOutput>& rows,
                             bool optimal);
std::string criteria_to_json(int m, int bits, double theta_rad, const CriteriaReport& report);

/// Header: gamma_db,bound,asymptote
std::string bound_table_csv(const std::vector<double>& gamma_db, const std::vector<double>& bound,
                            const std::vector<double>& asymptote);

struct RunManifest {
    std::string command;
    std::string config_json;
    std::uint64_t seed = 0;
    std::string started;
    std::string finished;
    std::vector<std::string> outputs;
};

std::string manifest_to_json(const RunManifest& m);

/// UTC time as ISO 8601.
std::string utc_timestamp();

}  // namespace rotsim
