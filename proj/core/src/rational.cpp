#include "rotsim/rational.hpp"

#include "rotsim/error.hpp"

#include <cmath>
#include <cstdint>
#include <string>

namespace rotsim {

Rational exact_rational(double value)
{
    if (!std::isfinite(value)) {
        throw ConfigError("exact_rational: non-finite value");
    }
    if (value == 0.0) {
        return Rational(0);
    }
    int exponent = 0;
    const double mantissa = std::frexp(value, &exponent);
    // 53 significant bits fit an int64 exactly.
    const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
    exponent -= 53;
    Rational result{BigInt(scaled)};
    if (exponent > 0) {
        result *= Rational(BigInt(1) << exponent);
    } else if (exponent < 0) {
        result /= Rational(BigInt(1) << -exponent);
    }
    return result;
}

double to_double(const Rational& value)
{
    return value.convert_to<double>();
}

std::string to_string(const Rational& value)
{
    return boost::multiprecision::numerator(value).str() + "/" +
           boost::multiprecision::denominator(value).str();
}

namespace {

// Optional sign followed by decimal digits.
BigInt parse_integer(std::string s)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.erase(0, 1);
    }
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
        throw ConfigError("parse_rational: malformed '" + s + "'");
    }
    const auto first = s.find_first_not_of('0');
    const BigInt v = first == std::string::npos ? BigInt(0) : BigInt(s.substr(first));
    return negative ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.pop_back();
    }
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) {
        ++start;
    }
    s = s.substr(start);
    if (s.empty()) {
        throw ConfigError("parse_rational: empty input");
    }
    try {
        // BigInt's string constructor treats a leading 0 as octal, so digits
        // go through parse_integer.
        if (const auto slash = s.find('/'); slash != std::string::npos) {
            const BigInt num = parse_integer(s.substr(0, slash));
            const BigInt den = parse_integer(s.substr(slash + 1));
            if (den == 0) {
                throw ConfigError("parse_rational: zero denominator in '" + s + "'");
            }
            return Rational(num, den);
        }
        if (const auto dot = s.find('.'); dot != std::string::npos) {
            const std::size_t decimals = s.size() - dot - 1;
            BigInt scale = 1;
            for (std::size_t i = 0; i < decimals; ++i) {
                scale *= 10;
            }
            return Rational(parse_integer(s.substr(0, dot) + s.substr(dot + 1)), scale);
        }
        return Rational(parse_integer(s));
    } catch (const std::exception& e) {
        if (dynamic_cast<const ConfigError*>(&e) != nullptr) {
            throw;
        }
        throw ConfigError("parse_rational: malformed '" + std::string(text) + "'");
    }
}

}  // namespace rotsim
