#pragma once

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace leomec::numerics {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 2000;
};

// Thrown when adaptive subdivision exhausts its budget; carries the best
// estimate so callers can decide whether the bound is still usable.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), best_estimate(estimate), error(error_bound) {}
    double best_estimate;
    double error;
};

// Adaptive Gauss-Kronrod (15|7) integration of f over (a, b).
// b may be +inf; the tail is folded onto (0,1) with x = a + t/(1-t).
// Endpoints are never evaluated, so integrable endpoint singularities are fine.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

// Lower incomplete gamma y(s, x), s > 0, x >= 0.
double lower_incomplete_gamma(double s, double x);

// Regularized P(s, x) = y(s, x) / Gamma(s).
double regularized_lower_gamma(double s, double x);

namespace detail {
// The two independent evaluation routes behind regularized_lower_gamma,
// exposed so they can be cross-checked against each other.
double gamma_p_series(double s, double x);
double gamma_p_contfrac(double s, double x);
}  // namespace detail

struct SrFadingParams {
    double omega;  // average LOS power
    double b0;     // half average scatter power
    double m;      // Nakagami shape of the LOS amplitude
};

// CDF of the squared shadowed-Rician envelope |h|^2 at t, evaluated from its
// power-series expansion in the LOS/scatter power ratio. Truncation stops
// once the geometric tail bound drops below trunc_tol relative to the sum.
double sr_power_cdf(double t, const SrFadingParams& sr, double trunc_tol = 1e-12);

}  // namespace leomec::numerics
