#include "rotsim/quantizer.hpp"

#include "rotsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rotsim {

Quantizer::Quantizer(int bits)
    : bits_(bits), scale_(0), half_scale_(0.0)
{
    if (bits < 1 || bits > 24) {
        throw ConfigError("quantizer bit width must be in [1, 24], got " + std::to_string(bits));
    }
    scale_ = (1 << bits) - 1;
    half_scale_ = static_cast<double>(scale_) / 2.0;
}

std::vector<double> Quantizer::levels() const
{
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(scale_) + 1);
    for (int k = -scale_; k <= scale_; k += 2) {
        out.push_back(level(k));
    }
    return out;
}

std::vector<Rational> Quantizer::exact_levels() const
{
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(scale_) + 1);
    for (int k = -scale_; k <= scale_; k += 2) {
        out.emplace_back(k, scale_);
    }
    return out;
}

std::vector<Rational> Quantizer::boundaries() const
{
    std::vector<Rational> out;
    const int top = (1 << (bits_ - 1)) - 1;
    for (int m = -top; m <= top; ++m) {
        out.emplace_back(2 * m, scale_);
    }
    return out;
}

int Quantizer::code(double t) const
{
    if (!std::isfinite(t)) {
        throw ConfigError("quantizer input must be finite");
    }
    return code_unchecked(t);
}

int Quantizer::code(const Rational& t) const
{
    // floor(t * scale / 2), clamped.
    const Rational scaled = t * Rational(scale_, 2);
    BigInt num = boost::multiprecision::numerator(scaled);
    const BigInt den = boost::multiprecision::denominator(scaled);
    BigInt fl = num / den;
    if (num < 0 && fl * den != num) {
        fl -= 1;
    }
    const BigInt k = 2 * fl + 1;
    if (k > scale_) {
        return scale_;
    }
    if (k < -scale_) {
        return -scale_;
    }
    return k.convert_to<int>();
}

double Quantizer::quantize(double t) const
{
    return level(code(t));
}

Rational Quantizer::quantize(const Rational& t) const
{
    return Rational(code(t), scale_);
}

std::array<std::complex<double>, 2> Quantizer::quantize(
    const std::array<std::complex<double>, 2>& z) const
{
    std::array<std::complex<double>, 2> out;
    for (std::size_t i = 0; i < z.size(); ++i) {
        out[i] = {quantize(z[i].real()), quantize(z[i].imag())};
    }
    return out;
}

bool Quantizer::is_level(const Rational& value) const
{
    const Rational scaled = value * scale_;
    if (boost::multiprecision::denominator(scaled) != 1) {
        return false;
    }
    const BigInt k = boost::multiprecision::numerator(scaled);
    return k >= -scale_ && k <= scale_ && (k % 2 != 0);
}

Interval Quantizer::cell_of_code(int k) const
{
    if (k < -scale_ || k > scale_ || k % 2 == 0) {
        throw ConfigError("not a reconstruction level code: " + std::to_string(k));
    }
    const int xi = (k - 1) / 2;
    Interval cell;
    if (k != -scale_) {
        cell.lower = Rational(2 * xi, scale_);
    }
    if (k != scale_) {
        cell.upper = Rational(2 * (xi + 1), scale_);
    }
    return cell;
}

Interval Quantizer::cell_of(const Rational& value) const
{
    if (!is_level(value)) {
        throw ConfigError("not a reconstruction level: " + to_string(value));
    }
    return cell_of_code((value * scale_).convert_to<int>());
}

}  // namespace rotsim
