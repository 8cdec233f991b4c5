#include "leomec/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace leomec::geometry {

namespace {

// arccos arguments are clamped within a 1e-12 slack; drift past that means
// a caller fed a distance outside the geometric support.
double clamp_unit(double v) {
    if (v > 1.0) {
        if (v > 1.0 + 1e-12) throw std::domain_error("geometry: arccos argument > 1");
        return 1.0;
    }
    if (v < -1.0) {
        if (v < -1.0 - 1e-12) throw std::domain_error("geometry: arccos argument < -1");
        return -1.0;
    }
    return v;
}

}  // namespace

HorizonQuantities horizon(const ConstellationGeometry& geom) {
    HorizonQuantities h;
    h.d_max_down = std::sqrt(2.0 * geom.r_e * geom.a_s + geom.a_s * geom.a_s);
    h.d_max_up = std::sqrt(geom.r_s * geom.r_s - geom.r_e * geom.r_e);
    h.theta_c = std::acos(clamp_unit(geom.r_e / geom.r_s));
    h.cap_vis = 0.5 * (1.0 - geom.r_e / geom.r_s);
    return h;
}

double cap_fraction(double x, const ConstellationGeometry& geom) {
    const double c = (x * x - geom.a_s * geom.a_s) / (4.0 * geom.r_e * geom.r_s);
    const double vis = 0.5 * geom.a_s / geom.r_s;
    if (c < 0.0) return 0.0;
    return c > vis ? vis : c;
}

double contact_cdf_nearest_sat(double x, double n, const ConstellationGeometry& geom) {
    if (n <= 0.0) return 0.0;
    if (x < geom.a_s) return 0.0;
    const double c = cap_fraction(x, geom);
    return 1.0 - std::pow(1.0 - c, n);
}

double contact_pdf_nearest_sat(double x, double n, const ConstellationGeometry& geom) {
    if (n <= 0.0) return 0.0;
    const double d_max = horizon(geom).d_max_down;
    if (x < geom.a_s || x >= d_max) return 0.0;
    const double c = cap_fraction(x, geom);
    return n * std::pow(1.0 - c, n - 1.0) * x / (2.0 * geom.r_e * geom.r_s);
}

double contact_cdf_serving_sat_uplink(double x, const ConstellationGeometry& geom) {
    const HorizonQuantities h = horizon(geom);
    if (x < geom.a_s) return 0.0;
    if (x >= h.d_max_up) return 1.0;
    return cap_fraction(x, geom) / h.cap_vis;
}

double contact_pdf_serving_sat_uplink(double x, const ConstellationGeometry& geom) {
    const HorizonQuantities h = horizon(geom);
    if (x < geom.a_s || x >= h.d_max_up) return 0.0;
    return x / (2.0 * geom.r_e * geom.r_s * h.cap_vis);
}

double nearest_cs_cdf(double x, double lambda_c) {
    if (!(lambda_c > 0.0)) throw std::domain_error("nearest_cs_cdf: lambda_c must be > 0");
    if (x <= 0.0) return 0.0;
    return 1.0 - std::exp(-lambda_c * std::numbers::pi * x * x);
}

double nearest_cs_pdf(double x, double lambda_c) {
    if (!(lambda_c > 0.0)) throw std::domain_error("nearest_cs_pdf: lambda_c must be > 0");
    if (x <= 0.0) return 0.0;
    return 2.0 * lambda_c * std::numbers::pi * x *
           std::exp(-lambda_c * std::numbers::pi * x * x);
}

double visibility_weight(double n, const ConstellationGeometry& geom) {
    if (n < 1.0) return 0.0;
    const double cos_tc = geom.r_e / geom.r_s;
    return 1.0 - std::pow(0.5 * (1.0 + cos_tc), n - 1.0);
}

}  // namespace leomec::geometry
