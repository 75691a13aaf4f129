#pragma once

#include "rotsim/rational.hpp"

#include <optional>
#include <string>

namespace rotsim {

/// Half-open interval [lower, upper) of the real line. An empty optional
/// means the corresponding end is unbounded (-inf below, +inf above).
struct Interval {
    std::optional<Rational> lower;
    std::optional<Rational> upper;

    [[nodiscard]] bool contains(const Rational& value) const;
    [[nodiscard]] bool empty() const;
    [[nodiscard]] bool subset_of(const Interval& other) const;

    /// Intersection; may be empty.
    [[nodiscard]] Interval intersect(const Interval& other) const;

    /// "[lo, hi)" with "-inf"/"inf" for unbounded ends.
    [[nodiscard]] std::string str() const;

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// The ML interval estimator output lives on [0, inf).
using MlInterval = Interval;

}  // namespace rotsim
