#include "leomec/association.hpp"

#include <cmath>
#include <numbers>

#include "leomec/channel.hpp"

namespace leomec::association {

namespace {
constexpr double kPi = std::numbers::pi;
}

double q_s_constant(const SystemParams& sys) {
    const double c = channel::kSpeedOfLight;
    const double power_ratio = (sys.p_c / sys.p_s) / sys.bias_ratio;  // p_c B_c / (p_s B_s)
    return std::pow(power_ratio, 1.0 / sys.alpha) *
           std::pow(4.0 * kPi * sys.f_s / c, 2.0 / sys.alpha) *
           (c / (4.0 * kPi * sys.f_c));
}

double assoc_prob_sat(double n_i, const SystemParams& sys,
                      const ConstellationGeometry& geom,
                      const numerics::QuadratureSpec& quad) {
    if (n_i <= 0.0) return 0.0;
    const double q_s = q_s_constant(sys);
    const double d_max = geometry::horizon(geom).d_max_down;
    auto integrand = [&](double x) {
        const double tie_radius = q_s * std::pow(x, 2.0 / sys.alpha);
        const double win = std::exp(-sys.lambda_c * kPi * tie_radius * tie_radius);
        return win * geometry::contact_pdf_nearest_sat(x, n_i, geom);
    };
    return numerics::integrate(integrand, geom.a_s, d_max, quad);
}

double assoc_prob_cs(double n_i, const SystemParams& sys,
                     const ConstellationGeometry& geom,
                     const numerics::QuadratureSpec& quad) {
    if (n_i <= 0.0) return 1.0;
    const double q_s = q_s_constant(sys);
    const geometry::HorizonQuantities h = geometry::horizon(geom);

    // CS distances split at the tie radii of the closest and farthest
    // possible satellite positions.
    const double r_lo = q_s * std::pow(geom.a_s, 2.0 / sys.alpha);
    const double r_hi = q_s * std::pow(h.d_max_down, 2.0 / sys.alpha);

    // CS so close that even a zenith satellite loses.
    const double piece_near = 1.0 - std::exp(-sys.lambda_c * kPi * r_lo * r_lo);

    // CS so far that it only wins when no satellite is visible.
    const double void_mass = std::pow(1.0 - h.cap_vis, n_i);
    const double piece_far = void_mass * std::exp(-sys.lambda_c * kPi * r_hi * r_hi);

    // In between, the CS wins iff the nearest visible satellite sits beyond
    // the distance whose biased power ties with the CS at radius r.
    auto integrand = [&](double r) {
        const double d_tie = std::pow(r / q_s, sys.alpha / 2.0);
        const double sat_farther =
            1.0 - geometry::contact_cdf_nearest_sat(d_tie, n_i, geom);
        return sat_farther * geometry::nearest_cs_pdf(r, sys.lambda_c);
    };
    const double piece_mid = numerics::integrate(integrand, r_lo, r_hi, quad);

    return piece_near + piece_mid + piece_far;
}

AssociationResult associate(double n_i, const SystemParams& sys,
                            const ConstellationGeometry& geom,
                            const numerics::QuadratureSpec& quad) {
    AssociationResult r;
    r.q_s_factor = q_s_constant(sys);
    r.n_offloadable = n_i;
    r.a_sat = assoc_prob_sat(n_i, sys, geom, quad);
    r.a_cs = assoc_prob_cs(n_i, sys, geom, quad);
    return r;
}

}  // namespace leomec::association
