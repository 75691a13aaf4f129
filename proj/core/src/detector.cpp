#include "rotsim/detector.hpp"

#include "rotsim/error.hpp"

#include <bit>
#include <cmath>

namespace rotsim {

DecodeContext::DecodeContext(const RotatedConstellation& c, double weight)
    : c_(&c), zeta_(weight)
{
    if (!(weight > 0.0) || !std::isfinite(weight)) {
        throw ConfigError("decode weight must be positive and finite");
    }
}

double metric(const DecodeContext& ctx, const Vec2& r, const RealPair& u)
{
    const auto& x = ctx.constellation().normalized()[ctx.constellation().index_of(u)];
    const double e1 = r[0] - x[0];
    const double e2 = r[1] - x[1];
    return e1 * e1 + ctx.weight_squared() * e2 * e2;
}

double metric_difference(const DecodeContext& ctx, const Vec2& r, const RealPair& u, const RealPair& v)
{
    return metric(ctx, r, u) - metric(ctx, r, v);
}

MetricTerms metric_terms(const RotatedConstellation& c, const Vec2& r, const RealPair& u, const RealPair& v)
{
    const auto& x = c.normalized()[c.index_of(u)];
    const auto& y = c.normalized()[c.index_of(v)];
    const auto sq = [](double a) { return a * a; };
    return {sq(r[0] - x[0]) - sq(r[0] - y[0]), sq(r[1] - x[1]) - sq(r[1] - y[1])};
}

RealPair decode_component(const DecodeContext& ctx, const Vec2& r)
{
    const auto& c = ctx.constellation();
    return c.symbols()[nearest_index(c.normalized(), ctx.weight_squared(), r[0], r[1])];
}

InfoPair decode(const DecodeContext& ctx, const ComplexPair& r)
{
    return {decode_component(ctx, {r[0].real(), r[1].real()}),
            decode_component(ctx, {r[0].imag(), r[1].imag()})};
}

unsigned gray_label(int value, int m)
{
    const auto idx = static_cast<unsigned>((value + m - 1) / 2);
    return idx ^ (idx >> 1U);
}

int bits_per_pair(int m)
{
    return 4 * std::countr_zero(static_cast<unsigned>(m));
}

ErrorCount count_errors(const InfoPair& truth, const InfoPair& decoded, int m)
{
    ErrorCount out;
    for (std::size_t k = 0; k < 2; ++k) {
        if (truth.in_phase[k] != decoded.in_phase[k] || truth.quadrature[k] != decoded.quadrature[k]) {
            ++out.symbol_errors;
        }
        out.bit_errors += std::popcount(gray_label(truth.in_phase[k], m) ^ gray_label(decoded.in_phase[k], m));
        out.bit_errors += std::popcount(gray_label(truth.quadrature[k], m) ^ gray_label(decoded.quadrature[k], m));
    }
    return out;
}

}  // namespace rotsim
