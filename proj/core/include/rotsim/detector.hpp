#pragma once

#include "rotsim/channel.hpp"
#include "rotsim/constellation.hpp"

#include <cstddef>
#include <vector>

namespace rotsim {

/// Weighted minimum-distance metric context: weights diag(1, zeta^2).
class DecodeContext {
public:
    DecodeContext(const RotatedConstellation& c, double weight);

    [[nodiscard]] const RotatedConstellation& constellation() const noexcept { return *c_; }
    [[nodiscard]] double weight() const noexcept { return zeta_; }
    [[nodiscard]] double weight_squared() const noexcept { return zeta_ * zeta_; }

private:
    const RotatedConstellation* c_;
    double zeta_;
};

/// (r - G u / X)^T diag(1, zeta^2) (r - G u / X).
double metric(const DecodeContext& ctx, const Vec2& r, const RealPair& u);

/// metric(u) - metric(v).
double metric_difference(const DecodeContext& ctx, const Vec2& r, const RealPair& u, const RealPair& v);

/// metric_difference = d1 + zeta^2 d2, split per component.
struct MetricTerms {
    double d1 = 0.0;
    double d2 = 0.0;
};
MetricTerms metric_terms(const RotatedConstellation& c, const Vec2& r, const RealPair& u, const RealPair& v);

/// Index of the argmin over the M^2 normalized candidates, first index wins
/// ties (candidates are in lexicographic (u1, u2) order).
inline std::size_t nearest_index(const std::vector<Vec2>& candidates, double zeta2, double r1, double r2) noexcept
{
    std::size_t best = 0;
    double best_metric = 0.0;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        const double e1 = r1 - candidates[k][0];
        const double e2 = r2 - candidates[k][1];
        const double m = e1 * e1 + zeta2 * e2 * e2;
        if (k == 0 || m < best_metric) {
            best_metric = m;
            best = k;
        }
    }
    return best;
}

/// Decode one real component pair (r_1, r_2).
RealPair decode_component(const DecodeContext& ctx, const Vec2& r);

/// I and Q decoded independently.
InfoPair decode(const DecodeContext& ctx, const ComplexPair& r);

/// Gray label of a PAM value v in S_M.
unsigned gray_label(int value, int m);

/// 4 log2 M bits per codeword pair.
int bits_per_pair(int m);

struct ErrorCount {
    int symbol_errors = 0;  ///< wrong complex symbols, 0..2
    int bit_errors = 0;
};

ErrorCount count_errors(const InfoPair& truth, const InfoPair& decoded, int m);

}  // namespace rotsim
