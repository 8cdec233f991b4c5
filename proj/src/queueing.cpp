#include "leomec/queueing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace leomec::queueing {

namespace {

struct StationaryWeights {
    double total = 0.0;       // sum of weights
    double weighted_n = 0.0;  // sum of n * weight
    double top = 0.0;         // weight of the full state
};

// Stationary weights of the birth-death chain, normalized by rho^N when
// rho > 1 so nothing overflows.
StationaryWeights mm1n_weights(double rho, int buffer) {
    if (rho < 0.0) throw std::domain_error("mm1n: rho must be >= 0");
    if (buffer < 1) throw std::domain_error("mm1n: buffer must be >= 1");
    StationaryWeights w;
    const bool descending = rho > 1.0;
    const double base = descending ? 1.0 / rho : rho;
    double weight = 1.0;  // state 0 (ascending) or state N (descending)
    for (int k = 0; k <= buffer; ++k) {
        const int n = descending ? buffer - k : k;
        w.total += weight;
        w.weighted_n += n * weight;
        if (n == buffer) w.top = weight;
        weight *= base;
    }
    return w;
}

}  // namespace

double mm1n_blocking(double rho, int buffer) {
    if (rho == 0.0) return 0.0;
    const StationaryWeights w = mm1n_weights(rho, buffer);
    return w.top / w.total;
}

double mm1n_mean_queue(double rho, int buffer) {
    if (rho == 0.0) return 0.0;
    const StationaryWeights w = mm1n_weights(rho, buffer);
    return w.weighted_n / w.total;
}

double offload_probability(double rho, int buffer) {
    return 1.0 - mm1n_blocking(rho, buffer);
}

double sat_response_time(double lambda, double mu, int buffer) {
    if (!(mu > 0.0)) throw std::domain_error("sat_response_time: mu must be > 0");
    if (lambda < 0.0) throw std::domain_error("sat_response_time: lambda must be >= 0");
    if (lambda == 0.0) return 1.0 / mu;
    const double rho = lambda / mu;
    const double mean_in_system = mm1n_mean_queue(rho, buffer);
    const double accepted = lambda * (1.0 - mm1n_blocking(rho, buffer));
    return mean_in_system / accepted;
}

std::vector<double> cs_response_times(const std::vector<double>& lambda,
                                      const std::vector<double>& mu) {
    if (lambda.size() != mu.size())
        throw std::invalid_argument("cs_response_times: class size mismatch");
    double total_arrival = 0.0;
    for (double l : lambda) {
        if (l < 0.0) throw std::domain_error("cs_response_times: negative arrival rate");
        total_arrival += l;
    }

    double wait = 0.0;
    if (total_arrival > 0.0) {
        double second_moment_sum = 0.0;  // sum of hat-shares times E[S^2] per class
        double utilization = 0.0;
        for (size_t j = 0; j < lambda.size(); ++j) {
            if (!(mu[j] > 0.0)) throw std::domain_error("cs_response_times: mu must be > 0");
            const double share = lambda[j] / total_arrival;
            second_moment_sum += share * 2.0 / (mu[j] * mu[j]);
            utilization += total_arrival * share / mu[j];
        }
        if (utilization >= 1.0)
            throw StabilityError("cloud server unstable: utilization " +
                                     std::to_string(utilization) + " >= 1",
                                 utilization);
        wait = total_arrival * second_moment_sum / (2.0 * (1.0 - utilization));
    }

    std::vector<double> response(lambda.size());
    for (size_t i = 0; i < lambda.size(); ++i) response[i] = 1.0 / mu[i] + wait;
    return response;
}

TierLoad mean_loads(const Scenario& sc, int task, double a_sat, double a_cs) {
    TierLoad load;
    const double lambda_si = sc.lambda_s_type(task);
    if (lambda_si > 0.0) {
        const double lambda_ui =
            sc.sys.tasks.at(task).q * sc.sys.lambda_u_sat();  // footprint-averaged
        load.mean_ues_sat = 1.0 + 1.28 * lambda_ui * a_sat / lambda_si;
    }
    load.mean_ues_cs = sc.sys.lambda_u * a_cs / sc.sys.lambda_c;
    load.w_sat = sc.sys.bandwidth / load.mean_ues_sat;
    load.w_cs = load.mean_ues_cs > 0.0 ? sc.sys.bandwidth / load.mean_ues_cs
                                       : sc.sys.bandwidth;
    return load;
}

double transmission_time(double bits, double p_cov, double bandwidth, double tau,
                         const char* label) {
    const double spectral = std::log2(1.0 + tau);
    if (!(spectral > 0.0))
        throw std::domain_error("transmission_time: log2(1+tau) must be > 0");
    if (!(p_cov > 0.0))
        throw StabilityError(std::string("link unserviceable at tau: ") + label, 0.0);
    return bits / (p_cov * bandwidth * spectral);
}

TransmissionTimes transmission_times(const Scenario& sc, int task, const TierLoad& load,
                                     double p_up_cs, double p_down_cs, double p_up_sat,
                                     double p_down_sat) {
    const params::TaskSpec& t = sc.sys.tasks.at(task);
    TransmissionTimes tx;
    tx.t_up_cs = transmission_time(t.uplink_bits, p_up_cs, load.w_cs, sc.sys.tau, "UE->CS");
    tx.t_down_cs =
        transmission_time(t.downlink_bits, p_down_cs, load.w_cs, sc.sys.tau, "CS->UE");
    tx.t_up_sat =
        transmission_time(t.uplink_bits, p_up_sat, load.w_sat, sc.sys.tau, "UE->SAT");
    tx.t_down_sat =
        transmission_time(t.downlink_bits, p_down_sat, load.w_sat, sc.sys.tau, "SAT->UE");
    return tx;
}

double average_delay(double a_sat, double a_cs, const DelayBreakdown& parts) {
    return a_cs * (parts.t_resp_cs + parts.tx.t_up_cs + parts.tx.t_down_cs) +
           a_sat * (parts.t_resp_sat + parts.tx.t_up_sat + parts.tx.t_down_sat);
}

FixedPoint solve_offload_probability(const std::function<double(double)>& g, double tol,
                                     int max_iter) {
    FixedPoint fp;
    double x = 1.0;
    double gamma = 0.5;
    double prev_delta = 0.0;
    for (int k = 0; k < max_iter; ++k) {
        const double gx = g(x);
        const double delta = gx - x;
        fp.iterations = k + 1;
        if (std::abs(delta) < tol) {
            fp.p_ofld = x;
            return fp;
        }
        if (k > 0 && delta * prev_delta < 0.0 && gamma > 0.02) gamma *= 0.5;
        prev_delta = delta;
        x = std::clamp(x + gamma * delta, 0.0, 1.0);
    }
    throw ConvergenceError(
        "offload fixed point did not converge after " + std::to_string(max_iter) +
        " iterations (last x = " + std::to_string(x) +
        ", residual = " + std::to_string(prev_delta) + ")");
}

}  // namespace leomec::queueing
