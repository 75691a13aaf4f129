#pragma once

#include "rotsim/interval.hpp"
#include "rotsim/rational.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <vector>

namespace rotsim {

/// b-bit uniform mid-rise quantizer with clip level +-1.
///
/// Reconstruction levels are the odd multiples of 1/(2^b - 1) in [-1, 1];
/// cell edges are the even multiples. A point exactly on an edge belongs to
/// the upper cell (floor rule). Levels are addressed internally by their odd
/// integer "code" k, i.e. level = k / (2^b - 1).
class Quantizer {
public:
    explicit Quantizer(int bits);

    [[nodiscard]] int bits() const noexcept { return bits_; }
    /// 2^b - 1; the level denominator.
    [[nodiscard]] int scale() const noexcept { return scale_; }
    [[nodiscard]] double step() const noexcept { return 2.0 / scale_; }

    [[nodiscard]] std::vector<double> levels() const;
    [[nodiscard]] std::vector<Rational> exact_levels() const;
    /// Interior cell edges 2m/(2^b-1), m = -(2^(b-1)-1) .. 2^(b-1)-1.
    [[nodiscard]] std::vector<Rational> boundaries() const;

    /// Odd code in [-scale, scale]. Throws ConfigError on non-finite input.
    [[nodiscard]] int code(double t) const;
    /// Hot-path variant without the finiteness check.
    [[nodiscard]] int code_unchecked(double t) const noexcept
    {
        const double clipped = t > 2.0 ? 2.0 : (t < -2.0 ? -2.0 : t);
        int k = 2 * static_cast<int>(std::floor(clipped * half_scale_)) + 1;
        return k > scale_ ? scale_ : (k < -scale_ ? -scale_ : k);
    }
    [[nodiscard]] int code(const Rational& t) const;

    [[nodiscard]] double quantize(double t) const;
    [[nodiscard]] Rational quantize(const Rational& t) const;
    [[nodiscard]] double level(int code) const noexcept { return static_cast<double>(code) / scale_; }

    /// Component-wise quantization of all four real coordinates.
    [[nodiscard]] std::array<std::complex<double>, 2> quantize(
        const std::array<std::complex<double>, 2>& z) const;

    /// Preimage [lo, hi) of a reconstruction level. Throws ConfigError if
    /// `level` is not one of the levels.
    [[nodiscard]] Interval cell_of(const Rational& level) const;
    [[nodiscard]] Interval cell_of_code(int code) const;

    [[nodiscard]] bool is_level(const Rational& value) const;

private:
    int bits_;
    int scale_;
    double half_scale_;
};

}  // namespace rotsim
