#pragma once

#include "leomec/numerics.hpp"
#include "leomec/rng.hpp"

namespace leomec::channel {

using numerics::SrFadingParams;

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

enum class FadingKind { shadowed_rician, rayleigh };

struct LinkBudget {
    double tx_power;       // W
    double frequency;      // Hz
    double noise;          // W
    double path_loss_exp;  // 2 for satellite links, alpha for terrestrial
    FadingKind fading;
};

// Moment-matched Gamma stand-in for squared shadowed-Rician fading, plus the
// integer-shape variant needed by the closed-form coverage bound. Rounding
// the shape changes the scale so that the mean 2 b0 + Omega is preserved.
struct GammaApprox {
    double alpha_s;   // matched shape
    double beta_s;    // matched scale; alpha_s * beta_s = 2 b0 + Omega
    int alpha_int;    // rounded shape, >= 1
    double beta_int;  // mean-preserving scale for the rounded shape
    double mu;        // (alpha_int!)^(-1/alpha_int)
};

GammaApprox gamma_approx_of_sr(const SrFadingParams& sr);

// (1 - exp(-mu t / beta))^alpha with the integer shape; a tight bound on the
// Gamma CDF that turns the coverage integrand into a finite exponential sum.
double gamma_tight_bound_cdf(double t, const GammaApprox& g);

// Free-space style gain (c / (4 pi f d))^exponent, always <= 1 in any
// scenario of interest here.
double path_loss(double distance, double frequency, double exponent);

// Received power with fading averaged out (E[|h|^2] is normalized out of the
// association rule, so this is tx * path loss).
double mean_rx_power(const LinkBudget& link, double distance);

double snr(const LinkBudget& link, double distance, double fading_draw);

// Physical composition sampler for |h|^2: Nakagami LOS amplitude plus
// circularly-symmetric Gaussian scatter with per-component variance b0.
// Independent of the series CDF, so the two validate each other.
double sample_sr_power(const SrFadingParams& sr, rng::Stream& stream);

}  // namespace leomec::channel
