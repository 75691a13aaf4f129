#pragma once

#include "rotsim/quantizer.hpp"
#include "rotsim/rational.hpp"

#include <array>
#include <optional>
#include <vector>

namespace rotsim {

/// Symmetric M-PAM alphabet {-(M-1), ..., -1, 1, ..., M-1}.
struct PamAlphabet {
    int m = 0;
    std::vector<int> values;
};

PamAlphabet make_pam(int m);

/// True for the supported alphabet sizes M in {2, 4, 8, 16}.
bool is_supported_order(int m);

/// Real-component information pair (u1, u2) with entries in S_M.
using RealPair = std::array<int, 2>;
using Vec2 = std::array<double, 2>;
using Mat2 = std::array<Vec2, 2>;

/// Reference angles.
double matched_angle(int m);    ///< arctan(1/M)
double algebraic_angle();       ///< (1/2) arctan 2

/// Rotated M^2-QAM, stored per real component.
///
/// The complex constellation is the Cartesian product of two copies of the
/// real-component set {G u : u in S_M x S_M}, so everything here works on
/// that real set. Vectors are kept unnormalized; `normalized()` divides by
/// the peak component value X.
class RotatedConstellation {
public:
    RotatedConstellation(int m, double theta);

    [[nodiscard]] int order() const noexcept { return m_; }
    [[nodiscard]] double theta() const noexcept { return theta_; }
    [[nodiscard]] const Mat2& rotation() const noexcept { return g_; }
    [[nodiscard]] const PamAlphabet& alphabet() const noexcept { return pam_; }

    /// M^2 vectors in lexicographic (u1, u2) order.
    [[nodiscard]] std::size_t size() const noexcept { return symbols_.size(); }
    [[nodiscard]] const std::vector<RealPair>& symbols() const noexcept { return symbols_; }
    [[nodiscard]] const std::vector<Vec2>& vectors() const noexcept { return vectors_; }
    /// x / X for every vector, same order as vectors().
    [[nodiscard]] const std::vector<Vec2>& normalized() const noexcept { return normalized_; }
    [[nodiscard]] double peak() const noexcept { return peak_; }

    /// Sorted normalized projections onto component `i` (0 or 1).
    [[nodiscard]] const std::vector<double>& projections(int i) const { return projections_.at(i); }

    /// Index of u in symbols().
    [[nodiscard]] std::size_t index_of(const RealPair& u) const;

    /// Average complex transmit power E|x_k|^2 = 2 (M^2 - 1) / 3.
    [[nodiscard]] double average_power() const noexcept;

private:
    int m_;
    double theta_;
    PamAlphabet pam_;
    Mat2 g_{};
    std::vector<RealPair> symbols_;
    std::vector<Vec2> vectors_;
    std::vector<Vec2> normalized_;
    double peak_ = 0.0;
    std::array<std::vector<double>, 2> projections_;
};

/// Throws ConfigError unless M is supported and theta is in [0, pi/4).
RotatedConstellation build_rotated_constellation(int m, double theta);

/// Exact normalized projections for an angle with rational tangent p/q,
/// 0 <= p/q < 1. Rotation by such an angle is a scaled integer matrix
/// [[q, p], [-p, q]], so x / X is rational. Same ordering as
/// RotatedConstellation::normalized().
std::vector<std::array<Rational, 2>> exact_normalized_vectors(int m, long p, long q);

struct CriteriaReport {
    bool distinguishable = false;  ///< Criterion I
    bool admissible = false;       ///< Criterion II
    bool matched = false;          ///< Criterion III
    int min_bits = 0;              ///< ceil(2 log2 M)
    double min_product_distance = 0.0;
};

CriteriaReport evaluate_criteria(const RotatedConstellation& c, const Quantizer& q);

/// Per-component admissibility only (cheaper than the full report).
bool is_admissible(const RotatedConstellation& c, const Quantizer& q);

/// Admissible, and Q_b(x_i / X) == x_i / X (to 1e-12) for every vector and component.
bool is_matched(const RotatedConstellation& c, const Quantizer& q);

/// Minimum over distinct pairs of |x1 - y1| * |x2 - y2| (unnormalized).
double min_product_distance(const RotatedConstellation& c);

struct AngleInterval {
    double lower_deg = 0.0;
    double upper_deg = 0.0;
    /// The scan hit the 45 degree end of the search domain.
    bool open_at_upper_limit = false;
};

/// Maximal runs of admissible grid angles in [0, 45) degrees, with both
/// endpoints refined by bisection to 1e-6 rad. `grid_deg` must be <= 0.01.
std::vector<AngleInterval> admissible_angle_range(int m, int bits, double grid_deg = 0.01);

}  // namespace rotsim
