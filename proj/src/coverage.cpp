#include "leomec/coverage.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace leomec::coverage {

namespace {

constexpr double kPi = std::numbers::pi;

double sat_freq_gain(const SystemParams& sys) {
    const double g = channel::kSpeedOfLight / (4.0 * kPi * sys.f_s);
    return g * g;
}

double cs_freq_gain(const SystemParams& sys) {
    return std::pow(channel::kSpeedOfLight / (4.0 * kPi * sys.f_c), sys.alpha);
}

// One integrand builder serves all four links: coverage is the fading CCDF
// evaluated at A * x^exp, weighted by the link's distance density.
double link_coverage(const std::function<double(double)>& fade_ccdf, double a_const,
                     double dist_exp, const std::function<double(double)>& density,
                     double lo, double hi, const numerics::QuadratureSpec& quad) {
    auto integrand = [&](double x) {
        const double d = density(x);
        return d == 0.0 ? 0.0 : fade_ccdf(a_const * std::pow(x, dist_exp)) * d;
    };
    return numerics::integrate(integrand, lo, hi, quad);
}

}  // namespace

double snr_const_down_sat(double tau, const SystemParams& sys) {
    return tau * sys.sigma2_u / (sys.p_s * sat_freq_gain(sys));
}

double snr_const_up_sat(double tau, const SystemParams& sys) {
    return tau * sys.sigma2_s / (sys.p_u * sat_freq_gain(sys));
}

double snr_const_down_cs(double tau, const SystemParams& sys) {
    return tau * sys.sigma2_u / (sys.p_c * cs_freq_gain(sys));
}

double snr_const_up_cs(double tau, const SystemParams& sys) {
    return tau * sys.sigma2_c / (sys.p_u * cs_freq_gain(sys));
}

double cov_down_sat(double tau, double n_i, const SystemParams& sys,
                    const ConstellationGeometry& geom,
                    const numerics::QuadratureSpec& quad) {
    if (!(tau > 0.0)) throw std::domain_error("cov_down_sat: tau must be > 0");
    if (n_i <= 0.0) return 0.0;
    auto ccdf = [&sys](double t) { return 1.0 - numerics::sr_power_cdf(t, sys.sr); };
    auto density = [&](double x) { return geometry::contact_pdf_nearest_sat(x, n_i, geom); };
    const double d_max = geometry::horizon(geom).d_max_down;
    return link_coverage(ccdf, snr_const_down_sat(tau, sys), 2.0, density, geom.a_s,
                         d_max, quad);
}

double cov_up_sat(double tau, double n_i, const SystemParams& sys,
                  const ConstellationGeometry& geom,
                  const numerics::QuadratureSpec& quad) {
    if (!(tau > 0.0)) throw std::domain_error("cov_up_sat: tau must be > 0");
    if (n_i <= 0.0) return 0.0;
    const double w = geometry::visibility_weight(n_i, geom);
    if (w == 0.0) return 0.0;
    auto ccdf = [&sys](double t) { return 1.0 - numerics::sr_power_cdf(t, sys.sr); };
    auto density = [&](double x) { return geometry::contact_pdf_serving_sat_uplink(x, geom); };
    const double d_max = geometry::horizon(geom).d_max_up;
    return w * link_coverage(ccdf, snr_const_up_sat(tau, sys), 2.0, density, geom.a_s,
                             d_max, quad);
}

double cov_down_sat_closed_form(double tau, double n_i, const SystemParams& sys,
                                const ConstellationGeometry& geom,
                                const numerics::QuadratureSpec& quad) {
    if (!(tau > 0.0)) throw std::domain_error("cov_down_sat_closed_form: tau must be > 0");
    if (n_i <= 0.0) return 0.0;
    const channel::GammaApprox g = channel::gamma_approx_of_sr(sys.sr);
    auto ccdf = [&g](double t) { return 1.0 - channel::gamma_tight_bound_cdf(t, g); };
    auto density = [&](double x) { return geometry::contact_pdf_nearest_sat(x, n_i, geom); };
    const double d_max = geometry::horizon(geom).d_max_down;
    return link_coverage(ccdf, snr_const_down_sat(tau, sys), 2.0, density, geom.a_s,
                         d_max, quad);
}

double cov_up_sat_closed_form(double tau, double n_i, const SystemParams& sys,
                              const ConstellationGeometry& geom,
                              const numerics::QuadratureSpec& quad) {
    if (!(tau > 0.0)) throw std::domain_error("cov_up_sat_closed_form: tau must be > 0");
    if (n_i <= 0.0) return 0.0;
    const double w = geometry::visibility_weight(n_i, geom);
    if (w == 0.0) return 0.0;
    const channel::GammaApprox g = channel::gamma_approx_of_sr(sys.sr);
    auto ccdf = [&g](double t) { return 1.0 - channel::gamma_tight_bound_cdf(t, g); };
    auto density = [&](double x) { return geometry::contact_pdf_serving_sat_uplink(x, geom); };
    const double d_max = geometry::horizon(geom).d_max_up;
    return w * link_coverage(ccdf, snr_const_up_sat(tau, sys), 2.0, density, geom.a_s,
                             d_max, quad);
}

namespace {

double cov_cs_common(double a_const, const SystemParams& sys,
                     const numerics::QuadratureSpec& quad) {
    auto ccdf = [](double t) { return std::exp(-t); };  // Rayleigh power is Exp(1)
    auto density = [&sys](double r) { return geometry::nearest_cs_pdf(r, sys.lambda_c); };
    // Truncate where the nearest-CS density has decayed below 1e-16 of its
    // total mass; the transformed semi-infinite integral is checked against
    // this cut in tests.
    const double r_cut = std::sqrt(37.0 / (sys.lambda_c * kPi));
    return link_coverage(ccdf, a_const, sys.alpha, density, 0.0, r_cut, quad);
}

}  // namespace

double cov_down_cs(double tau, const SystemParams& sys,
                   const numerics::QuadratureSpec& quad) {
    if (!(tau > 0.0)) throw std::domain_error("cov_down_cs: tau must be > 0");
    return cov_cs_common(snr_const_down_cs(tau, sys), sys, quad);
}

double cov_up_cs(double tau, const SystemParams& sys,
                 const numerics::QuadratureSpec& quad) {
    if (!(tau > 0.0)) throw std::domain_error("cov_up_cs: tau must be > 0");
    return cov_cs_common(snr_const_up_cs(tau, sys), sys, quad);
}

double total_coverage(const std::vector<double>& q, const std::vector<double>& a_sat,
                      const std::vector<double>& a_cs,
                      const std::vector<double>& p_sat, const std::vector<double>& p_cs) {
    if (q.size() != a_sat.size() || q.size() != a_cs.size() || q.size() != p_sat.size() ||
        q.size() != p_cs.size())
        throw std::invalid_argument("total_coverage: mismatched per-task vectors");
    double total = 0.0;
    for (size_t i = 0; i < q.size(); ++i)
        total += q[i] * (a_sat[i] * p_sat[i] + a_cs[i] * p_cs[i]);
    return total;
}

}  // namespace leomec::coverage
