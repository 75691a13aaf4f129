#include "rotsim/channel.hpp"

#include "rotsim/error.hpp"

#include <algorithm>
#include <cmath>

namespace rotsim {

double SnrSpec::gamma_linear() const
{
    return std::pow(10.0, gamma_db / 10.0);
}

double SnrSpec::sigma2() const
{
    return transmit_power / gamma_linear();
}

FadePair make_fade_pair(double h1, double h2, double sigma2)
{
    if (!(h1 >= 0.0 && h2 >= 0.0 && sigma2 >= 0.0)) {
        throw ConfigError("fade magnitudes and noise variance must be nonnegative");
    }
    FadePair fp{h1, h2, h1 > 0.0 ? h2 / h1 : 0.0, sigma2};
    return fp;
}

FadePair draw_fade_pair(RandomStream& rng, const SnrSpec& snr)
{
    return draw_fade_pair(rng, snr.sigma2());
}

FadePair draw_fade_pair(RandomStream& rng, double sigma2)
{
    for (;;) {
        const double h1 = rayleigh(rng);
        const double h2 = rayleigh(rng);
        if (h1 > 0.0 && h2 > 0.0) {
            return FadePair{h1, h2, h2 / h1, sigma2};
        }
    }
}

InfoPair draw_info_pair(RandomStream& rng, const RotatedConstellation& c)
{
    const auto& v = c.alphabet().values;
    const int m = c.order();
    InfoPair u;
    u.in_phase = {v[static_cast<std::size_t>(rng.uniform_index(m))],
                  v[static_cast<std::size_t>(rng.uniform_index(m))]};
    u.quadrature = {v[static_cast<std::size_t>(rng.uniform_index(m))],
                    v[static_cast<std::size_t>(rng.uniform_index(m))]};
    return u;
}

ComplexPair transmit_data(const RotatedConstellation& c, const InfoPair& u, const FadePair& fp,
                          RandomStream& rng)
{
    if (!(fp.h1 > 0.0 && fp.h2 > 0.0)) {
        throw ConfigError("transmit_data: zero fade magnitude");
    }
    const auto& xi = c.normalized()[c.index_of(u.in_phase)];
    const auto& xq = c.normalized()[c.index_of(u.quadrature)];
    const double w_std = std::sqrt(fp.sigma2 / 2.0);
    const double x = c.peak();
    const double n1 = w_std / (fp.h1 * x);
    const double n2 = w_std / (fp.h2 * x);
    // Draw order: (1I, 1Q, 2I, 2Q).
    const double w1i = rng.normal();
    const double w1q = rng.normal();
    const double w2i = rng.normal();
    const double w2q = rng.normal();
    return {std::complex<double>(xi[0] + n1 * w1i, xq[0] + n1 * w1q),
            std::complex<double>(xi[1] + n2 * w2i, xq[1] + n2 * w2q)};
}

std::vector<double> transmit_training(const std::vector<double>& symbols, const FadePair& fp,
                                      const Quantizer& q, double noise_sigma2, RandomStream* rng)
{
    if (noise_sigma2 > 0.0 && rng == nullptr) {
        throw ConfigError("noisy training requires a random stream");
    }
    const double noise_std = std::sqrt(std::max(noise_sigma2, 0.0));
    std::vector<double> out;
    out.reserve(symbols.size());
    for (double c : symbols) {
        if (!(c > 0.0)) {
            throw ConfigError("training symbols must be positive");
        }
        double s = fp.rho * c;
        if (noise_std > 0.0) {
            s += noise_std * rng->normal();
        }
        out.push_back(q.quantize(s));
    }
    return out;
}

}  // namespace rotsim
