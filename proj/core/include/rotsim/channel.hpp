#pragma once

#include "rotsim/constellation.hpp"
#include "rotsim/quantizer.hpp"
#include "rotsim/random.hpp"

#include <array>
#include <complex>
#include <vector>

namespace rotsim {

struct SnrSpec {
    double gamma_db = 0.0;
    double transmit_power = 1.0;  ///< P_T = E|x_k|^2

    [[nodiscard]] double gamma_linear() const;
    /// sigma^2 = P_T / gamma (total per complex sample).
    [[nodiscard]] double sigma2() const;
};

/// One block-fading realization over the two coherence intervals.
struct FadePair {
    double h1 = 1.0;  ///< |h_1|
    double h2 = 1.0;  ///< |h_2|
    double rho = 1.0; ///< |h_2| / |h_1|
    double sigma2 = 0.0;
};

/// Complex information pair (u_1, u_2); `in_phase` = (u_1^I, u_2^I).
struct InfoPair {
    RealPair in_phase{};
    RealPair quadrature{};
    friend bool operator==(const InfoPair&, const InfoPair&) = default;
};

using ComplexPair = std::array<std::complex<double>, 2>;

/// Independent CN(0,1) gains; only the magnitudes are kept.
FadePair draw_fade_pair(RandomStream& rng, const SnrSpec& snr);
/// Same draw with the noise variance precomputed.
FadePair draw_fade_pair(RandomStream& rng, double sigma2);

FadePair make_fade_pair(double h1, double h2, double sigma2);

/// Uniform information pair over S_M^4.
InfoPair draw_info_pair(RandomStream& rng, const RotatedConstellation& c);

/// Sample-and-hold output s_i = x_i/X + w_i/(|h_i| X), w real Gaussian with
/// variance sigma^2/2 on each of the four real coordinates.
ComplexPair transmit_data(const RotatedConstellation& c, const InfoPair& u, const FadePair& fp,
                          RandomStream& rng);

/// Quantized training outputs r_k = Q_b(rho c_k) with c_k in units of X.
/// With `noise_sigma2 > 0` a Gaussian perturbation of that variance is added
/// to rho c_k before quantization (requires `rng`).
std::vector<double> transmit_training(const std::vector<double>& symbols, const FadePair& fp,
                                      const Quantizer& q, double noise_sigma2 = 0.0,
                                      RandomStream* rng = nullptr);

}  // namespace rotsim
