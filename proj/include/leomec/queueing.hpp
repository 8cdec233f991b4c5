#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "leomec/params.hpp"

namespace leomec::queueing {

using params::Scenario;

class StabilityError : public std::runtime_error {
public:
    StabilityError(const std::string& what, double rho)
        : std::runtime_error(what), utilization(rho) {}
    double utilization;
};

class ConvergenceError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite-buffer M/M/1/N quantities (states 0..N). Evaluated from the
// normalized stationary weights, which stays finite for any rho including
// rho = 1 and rho >> 1.
double mm1n_blocking(double rho, int buffer);
double mm1n_mean_queue(double rho, int buffer);  // mean number in system

// Probability the satellite buffer has room: 1 - blocking.
double offload_probability(double rho, int buffer);

// Mean response time of an M/M/1/N queue: mean number in system over
// effective throughput. lambda = 0 degenerates to the bare service time.
double sat_response_time(double lambda, double mu, int buffer);

// Multi-class M/G/1 FIFO mean response per class: own mean service time plus
// the Pollaczek-Khinchine mean wait of the aggregate (hyperexponential
// service). Throws StabilityError when the total utilization reaches 1.
std::vector<double> cs_response_times(const std::vector<double>& lambda,
                                      const std::vector<double>& mu);

struct TierLoad {
    double mean_ues_sat = 1.0;  // 1 + 1.28 lambda_{u_i} A_s / lambda_{s_i}
    double mean_ues_cs = 0.0;   // lambda_u A_0 / lambda_c
    double w_sat = 0.0;         // per-UE bandwidth share, Hz
    double w_cs = 0.0;
};

TierLoad mean_loads(const Scenario& sc, int task, double a_sat, double a_cs);

struct TransmissionTimes {
    double t_up_cs = 0.0;
    double t_down_cs = 0.0;
    double t_up_sat = 0.0;
    double t_down_sat = 0.0;
};

// D / (P * W * log2(1 + tau)). Zero coverage means the link cannot carry the
// task at this threshold and is reported as unserviceable.
double transmission_time(double bits, double p_cov, double bandwidth, double tau,
                         const char* label);

TransmissionTimes transmission_times(const Scenario& sc, int task, const TierLoad& load,
                                     double p_up_cs, double p_down_cs, double p_up_sat,
                                     double p_down_sat);

struct DelayBreakdown {
    TransmissionTimes tx;
    double t_resp_cs = 0.0;
    double t_resp_sat = 0.0;
    double t_avg = 0.0;
};

double average_delay(double a_sat, double a_cs, const DelayBreakdown& parts);

struct FixedPoint {
    double p_ofld = 1.0;
    double n_eff = 0.0;   // N_{s_i} * p_ofld
    double a_sat = 0.0;   // association probability at the fixed point
    int iterations = 0;
};

// Damped fixed-point iteration x <- (1-gamma) x + gamma G(x) on the
// offloadability probability, where G closes the cycle
//   x -> effective satellite count -> association -> arrival rate -> x.
// The step shrinks when the iterates oscillate; the map is monotone
// decreasing so the root is unique.
FixedPoint solve_offload_probability(const std::function<double(double)>& g,
                                     double tol = 1e-9, int max_iter = 500);

}  // namespace leomec::queueing
