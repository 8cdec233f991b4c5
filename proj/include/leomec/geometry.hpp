#pragma once

#include "leomec/params.hpp"

namespace leomec::geometry {

using params::ConstellationGeometry;

// Horizon quantities of the visible spherical cap above a ground UE.
// d_max_down and d_max_up are the same length by the identity
// 2 r_e a_s + a_s^2 = r_s^2 - r_e^2; both are kept so that the two
// derivations can be cross-checked.
struct HorizonQuantities {
    double d_max_down;  // sqrt(2 r_e a_s + a_s^2)
    double d_max_up;    // sqrt(r_s^2 - r_e^2)
    double theta_c;     // arccos(r_e / r_s), polar half-angle of the cap
    double cap_vis;     // fraction of the shell visible: (1 - cos theta_c) / 2
};

HorizonQuantities horizon(const ConstellationGeometry& geom);

// Fraction of the orbital shell within slant distance x of the UE,
// i.e. the cap-area share (1 - cos phi(x)) / 2 = (x^2 - a_s^2) / (4 r_e r_s).
// Clamped to [0, cap_vis]; defined for x in [a_s, d_max].
double cap_fraction(double x, const ConstellationGeometry& geom);

// Contact distance of the nearest of n i.i.d. uniform satellites on the
// shell. n may be fractional: the association fixed point works with
// effective (thinned) satellite counts.
double contact_cdf_nearest_sat(double x, double n, const ConstellationGeometry& geom);
double contact_pdf_nearest_sat(double x, double n, const ConstellationGeometry& geom);

// Distance between the UE and a single uniformly placed satellite
// conditioned on that satellite being above the horizon (uplink serving
// satellite law).
double contact_cdf_serving_sat_uplink(double x, const ConstellationGeometry& geom);
double contact_pdf_serving_sat_uplink(double x, const ConstellationGeometry& geom);

// Nearest point of a planar PPP with density lambda (void probability).
double nearest_cs_cdf(double x, double lambda_c);
double nearest_cs_pdf(double x, double lambda_c);

// Probability weight that at least one of n satellites is visible, with the
// n-1 exponent kept as derived for the uplink coverage weight.
double visibility_weight(double n, const ConstellationGeometry& geom);

}  // namespace leomec::geometry
