#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <vector>

#include "leomec/params.hpp"
#include "leomec/rng.hpp"

namespace leomec::montecarlo {

using params::ConstellationGeometry;
using params::Scenario;

struct SatellitePoint {
    double x, y, z;  // on the shell of radius r_s
    int type;        // task type cached by this satellite (0-based)
};

// N_s i.i.d. points uniform on the shell (z uniform, azimuth uniform), each
// independently labeled with a cached service type.
std::vector<SatellitePoint> sample_constellation(int n_sats,
                                                 const ConstellationGeometry& geom,
                                                 const std::vector<double>& q,
                                                 rng::Stream& stream);

struct PlanarPoint {
    double x, y;
};

// Homogeneous PPP on a disk of radius r around the origin.
std::vector<PlanarPoint> sample_ground_ppp(double lambda, double r, rng::Stream& stream);

enum class Tier { sat, cs };

struct TrialOutcome {
    bool sat_visible = false;  // at least one offloadable type-i satellite in view
    double d_sat = 0.0;        // nearest such satellite (downlink server)
    double d_sat_up = 0.0;     // uniformly drawn visible one (uplink server)
    double d_cs = 0.0;         // nearest cloud server
    double snr_sat_down = 0.0;
    double snr_sat_up = 0.0;
    double snr_cs_down = 0.0;
    double snr_cs_up = 0.0;
    Tier assoc_tier = Tier::cs;
    int redraws = 0;
};

// One network draw for a UE holding a type-`task` job: constellation with
// offloadability thinning at p_ofld, ground PPP, biased-power association and
// fading draws on every link. The vanishing no-satellite-and-empty-disk event
// is redrawn; more than ten redraws aborts.
TrialOutcome run_trial(const Scenario& sc, int task, double p_ofld, rng::Stream& stream);

struct Estimate {
    double mean = 0.0;
    double ci_half = 0.0;  // 95% halfwidth
};

// Normal-approximation interval for a sample mean.
Estimate estimate_mean(double sum, double sum_sq, long long n);
// Wilson score interval for a Bernoulli proportion.
Estimate estimate_binomial(long long successes, long long n);

struct TaskSimCounts {
    long long trials = 0;
    long long redraws = 0;
    long long sat_visible = 0;
    long long assoc_sat = 0;
    long long cov_down_sat = 0;  // nearest-satellite downlink SNR > tau
    long long cov_up_sat = 0;
    long long cov_down_cs = 0;
    long long cov_up_cs = 0;

    TaskSimCounts& operator+=(const TaskSimCounts& o);
};

struct TaskSimEstimates {
    TaskSimCounts counts;
    Estimate assoc_sat, cov_down_sat, cov_up_sat, cov_down_cs, cov_up_cs, visibility;
};

// Deterministic parallel estimation: trials are split into fixed-size chunks
// with per-trial substreams, so the result is identical for any thread count.
TaskSimEstimates simulate_task(const Scenario& sc, int task, double p_ofld,
                               long long trials, std::uint64_t seed, int threads);

// Debug dump: one tab-separated row per trial outcome.
void dump_trials(const Scenario& sc, int task, double p_ofld, long long count,
                 std::uint64_t seed, std::ostream& out);

// Two-sided Kolmogorov-Smirnov distance between a sample (sorted in place)
// and a reference CDF.
double ks_distance(std::vector<double>& samples, const std::function<double(double)>& cdf);

// 95% acceptance band 1.358 / sqrt(n).
double ks_band_95(long long n);

double effective_disk_radius(const Scenario& sc);

}  // namespace leomec::montecarlo
