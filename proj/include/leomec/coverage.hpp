#pragma once

#include <vector>

#include "leomec/channel.hpp"
#include "leomec/geometry.hpp"
#include "leomec/numerics.hpp"
#include "leomec/params.hpp"

namespace leomec::coverage {

using params::ConstellationGeometry;
using params::SystemParams;

struct CoverageResult {
    double p_su_down = 0.0;  // nearest usable satellite -> UE
    double p_cu_down = 0.0;  // nearest CS -> UE
    double p_us_up = 0.0;    // UE -> serving satellite
    double p_uc_up = 0.0;    // UE -> serving CS
    double total_down = 0.0;
    double total_up = 0.0;
    double tau = 0.0;
};

// SNR-threshold constants: P(SNR > tau at distance x) needs the fading power
// to exceed A * x^exponent.
double snr_const_down_sat(double tau, const SystemParams& sys);
double snr_const_up_sat(double tau, const SystemParams& sys);
double snr_const_down_cs(double tau, const SystemParams& sys);
double snr_const_up_cs(double tau, const SystemParams& sys);

// Satellite-link coverage probabilities, averaging the exact series CDF of
// the squared shadowed-Rician power over the link's distance law. These are
// the values the delay pipeline consumes.
double cov_down_sat(double tau, double n_i, const SystemParams& sys,
                    const ConstellationGeometry& geom,
                    const numerics::QuadratureSpec& quad = {});
double cov_up_sat(double tau, double n_i, const SystemParams& sys,
                  const ConstellationGeometry& geom,
                  const numerics::QuadratureSpec& quad = {});

// Closed-form variants built on the integer-shape Gamma bound; cheaper and
// the form the alternating binomial sum reduces to, but biased by the bound.
// Kept callable so the gap against the exact route stays measurable.
double cov_down_sat_closed_form(double tau, double n_i, const SystemParams& sys,
                                const ConstellationGeometry& geom,
                                const numerics::QuadratureSpec& quad = {});
double cov_up_sat_closed_form(double tau, double n_i, const SystemParams& sys,
                              const ConstellationGeometry& geom,
                              const numerics::QuadratureSpec& quad = {});

// Terrestrial-link coverage under Rayleigh fading and nearest-CS association.
double cov_down_cs(double tau, const SystemParams& sys,
                   const numerics::QuadratureSpec& quad = {});
double cov_up_cs(double tau, const SystemParams& sys,
                 const numerics::QuadratureSpec& quad = {});

// q_i-weighted mixtures over tasks: sum_i q_i (A_i P_sat + A_0 P_cs).
double total_coverage(const std::vector<double>& q, const std::vector<double>& a_sat,
                      const std::vector<double>& a_cs,
                      const std::vector<double>& p_sat, const std::vector<double>& p_cs);

}  // namespace leomec::coverage
