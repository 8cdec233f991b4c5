#include "leomec/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace leomec::channel {

GammaApprox gamma_approx_of_sr(const SrFadingParams& sr) {
    if (sr.omega <= 0.0 || sr.b0 <= 0.0 || sr.m <= 0.0)
        throw std::invalid_argument("gamma_approx_of_sr: parameters must be positive");
    const double mean = 2.0 * sr.b0 + sr.omega;
    const double denom = 4.0 * sr.m * sr.b0 * sr.b0 + 4.0 * sr.m * sr.b0 * sr.omega +
                         sr.omega * sr.omega;
    GammaApprox g;
    g.alpha_s = sr.m * mean * mean / denom;
    g.beta_s = denom / (sr.m * mean);
    g.alpha_int = static_cast<int>(std::llround(g.alpha_s));
    if (g.alpha_int < 1) g.alpha_int = 1;
    g.beta_int = mean / g.alpha_int;
    g.mu = std::pow(std::tgamma(g.alpha_int + 1.0), -1.0 / g.alpha_int);
    return g;
}

double gamma_tight_bound_cdf(double t, const GammaApprox& g) {
    if (t <= 0.0) return 0.0;
    return std::pow(1.0 - std::exp(-g.mu * t / g.beta_int), g.alpha_int);
}

double path_loss(double distance, double frequency, double exponent) {
    if (!(distance > 0.0)) throw std::domain_error("path_loss: distance must be > 0");
    return std::pow(kSpeedOfLight / (4.0 * std::numbers::pi * frequency * distance),
                    exponent);
}

double mean_rx_power(const LinkBudget& link, double distance) {
    return link.tx_power * path_loss(distance, link.frequency, link.path_loss_exp);
}

double snr(const LinkBudget& link, double distance, double fading_draw) {
    return mean_rx_power(link, distance) * fading_draw / link.noise;
}

double sample_sr_power(const SrFadingParams& sr, rng::Stream& stream) {
    // LOS power ~ Gamma(m, Omega/m), i.e. Nakagami-m amplitude
    const double los_amp = std::sqrt(stream.gamma(sr.m, sr.omega / sr.m));
    const double theta = stream.uniform(0.0, 2.0 * std::numbers::pi);
    const double sigma = std::sqrt(sr.b0);
    const double re = los_amp * std::cos(theta) + sigma * stream.normal();
    const double im = los_amp * std::sin(theta) + sigma * stream.normal();
    return re * re + im * im;
}

}  // namespace leomec::channel
