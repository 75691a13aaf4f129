#include "rotsim/interval.hpp"

namespace rotsim {

bool Interval::contains(const Rational& value) const
{
    if (lower && value < *lower) {
        return false;
    }
    if (upper && value >= *upper) {
        return false;
    }
    return true;
}

bool Interval::empty() const
{
    return lower && upper && *lower >= *upper;
}

bool Interval::subset_of(const Interval& other) const
{
    if (empty()) {
        return true;
    }
    if (other.lower && (!lower || *lower < *other.lower)) {
        return false;
    }
    if (other.upper && (!upper || *upper > *other.upper)) {
        return false;
    }
    return true;
}

Interval Interval::intersect(const Interval& other) const
{
    Interval out;
    if (lower && other.lower) {
        out.lower = *lower > *other.lower ? *lower : *other.lower;
    } else {
        out.lower = lower ? lower : other.lower;
    }
    if (upper && other.upper) {
        out.upper = *upper < *other.upper ? *upper : *other.upper;
    } else {
        out.upper = upper ? upper : other.upper;
    }
    return out;
}

std::string Interval::str() const
{
    std::string s = "[";
    s += lower ? to_string(*lower) : std::string("-inf");
    s += ", ";
    s += upper ? to_string(*upper) : std::string("inf");
    s += ")";
    return s;
}

}  // namespace rotsim
