#include "leomec/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace leomec::numerics {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct PanelResult {
    double integral;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv[15];
    const double fc = f(center);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    fv[14] = fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv[j] = f1;
        fv[7 + j] = f2;
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1)  // indices 1, 3, 5 are the Gauss nodes
            resg += kWg[j / 2] * (f1 + f2);
    }

    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv[j] - reskh) + std::abs(fv[7 + j] - reskh));
    resasc *= std::abs(half);

    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    return {resk * half, err};
}

struct Interval {
    double a, b, integral, error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

double integrate_finite(const std::function<double(double)>& f, double a, double b,
                        const QuadratureSpec& spec) {
    std::priority_queue<Interval> heap;
    PanelResult first = gk15(f, a, b);
    heap.push({a, b, first.integral, first.error});
    double total = first.integral;
    double total_err = first.error;

    int splits = 0;
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
        if (splits >= spec.max_subdivisions || heap.top().error == 0.0) {
            throw QuadratureError(
                "quadrature did not converge after " + std::to_string(splits) +
                    " subdivisions (estimate " + std::to_string(total) +
                    ", error bound " + std::to_string(total_err) + ")",
                total, total_err);
        }
        Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        PanelResult left = gk15(f, worst.a, mid);
        PanelResult right = gk15(f, mid, worst.b);
        total += left.integral + right.integral - worst.integral;
        total_err += left.error + right.error - worst.error;
        heap.push({worst.a, mid, left.integral, left.error});
        heap.push({mid, worst.b, right.integral, right.error});
        ++splits;
    }
    return total;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
    if (!(a < b)) throw std::invalid_argument("integrate: requires a < b");
    if (std::isinf(b)) {
        // x = a + t/(1-t) maps (0,1) onto (a, inf)
        auto g = [&f, a](double t) {
            const double u = 1.0 - t;
            const double x = a + t / u;
            const double v = f(x);
            return v == 0.0 ? 0.0 : v / (u * u);
        };
        return integrate_finite(g, 0.0, 1.0, spec);
    }
    return integrate_finite(f, a, b, spec);
}

namespace detail {

// Series and continued-fraction forms of the regularized lower incomplete
// gamma function, split at x ~ s+1 in the usual way.

double gamma_p_series(double s, double x) {
    if (x <= 0.0) return 0.0;
    double ap = s;
    double del = 1.0 / s;
    double sum = del;
    for (int n = 0; n < 10000; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * std::numeric_limits<double>::epsilon())
            return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
    }
    throw std::runtime_error("gamma_p_series: no convergence");
}

double gamma_p_contfrac(double s, double x) {
    // Modified Lentz evaluation of Q(s, x); returns P = 1 - Q.
    constexpr double kTiny = std::numeric_limits<double>::min() /
                             std::numeric_limits<double>::epsilon();
    const double eps = std::numeric_limits<double>::epsilon();
    double b = x + 1.0 - s;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) <= eps) {
            const double q = std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
            return 1.0 - q;
        }
    }
    throw std::runtime_error("gamma_p_contfrac: no convergence");
}

}  // namespace detail

double regularized_lower_gamma(double s, double x) {
    if (s <= 0.0) throw std::invalid_argument("regularized_lower_gamma: s must be > 0");
    if (x < 0.0) throw std::invalid_argument("regularized_lower_gamma: x must be >= 0");
    if (x == 0.0) return 0.0;
    return x < s + 1.0 ? detail::gamma_p_series(s, x) : detail::gamma_p_contfrac(s, x);
}

double lower_incomplete_gamma(double s, double x) {
    return std::exp(std::lgamma(s)) * regularized_lower_gamma(s, x);
}

double sr_power_cdf(double t, const SrFadingParams& sr, double trunc_tol) {
    if (sr.omega <= 0.0 || sr.b0 <= 0.0 || sr.m <= 0.0)
        throw std::invalid_argument("sr_power_cdf: fading parameters must be positive");
    if (trunc_tol <= 0.0) throw std::invalid_argument("sr_power_cdf: trunc_tol must be > 0");
    if (t <= 0.0) return 0.0;

    const double denom = 2.0 * sr.b0 * sr.m + sr.omega;
    const double delta = sr.omega / denom;               // term ratio base
    const double prefactor = std::exp(sr.m * std::log(2.0 * sr.b0 * sr.m / denom));
    const double y = t / (2.0 * sr.b0);

    // c_z = (m)_z delta^z / z!, P_z = P(z+1, y) built from the running
    // partial sum of exp(y).
    const double ey = std::exp(-y);
    double pow_term = 1.0;  // y^z / z!
    double partial = 1.0;   // sum_{k<=z} y^k / k!
    double c = 1.0;
    double sum = 0.0;
    for (int z = 0; z < 100000; ++z) {
        const double p_z = ey > 0.0 ? std::max(0.0, 1.0 - ey * partial) : 1.0;
        sum += c * p_z;

        const double ratio = (sr.m + z) * delta / (z + 1);
        const double c_next = c * ratio;
        // ratio decays toward delta for m >= 1 and climbs toward it for
        // m < 1, so max(ratio, delta) dominates every later term ratio.
        const double r = std::max(ratio, delta);
        if (z > sr.m && r < 1.0) {
            const double tail_bound = c_next / (1.0 - r);  // geometric tail, P <= 1
            if (tail_bound < trunc_tol * sum) break;
        }
        c = c_next;
        pow_term *= y / (z + 1);
        partial += pow_term;
    }
    return std::clamp(prefactor * sum, 0.0, 1.0);
}

}  // namespace leomec::numerics
