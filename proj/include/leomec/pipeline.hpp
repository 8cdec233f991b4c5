#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leomec/association.hpp"
#include "leomec/coverage.hpp"
#include "leomec/montecarlo.hpp"
#include "leomec/params.hpp"
#include "leomec/queueing.hpp"

namespace leomec::pipeline {

using params::Scenario;

// Which tiers carry traffic. Baseline modes force the association weights
// and the tier loads to a single server class.
enum class NetworkMode { integrated, cs_only, sat_only };

struct TaskEvaluation {
    int task = 0;
    double n_eff = 0.0;    // offloadable satellite count at the fixed point
    double p_ofld = 1.0;
    double a_sat = 0.0;
    double a_cs = 1.0;
    double p_down_sat = 0.0;
    double p_up_sat = 0.0;
    double p_down_cs = 0.0;
    double p_up_cs = 0.0;
    queueing::TierLoad load;
    double lambda_sat = 0.0;  // per-satellite arrival rate of this class
    double lambda_cs = 0.0;   // per-CS arrival rate of this class
    queueing::DelayBreakdown delay;
    std::string status = "ok";  // "unstable: ..." rows keep partial results
};

struct ScenarioEvaluation {
    std::vector<TaskEvaluation> tasks;
    double total_cov_down = 0.0;
    double total_cov_up = 0.0;
    double t_avg_mix = 0.0;  // q-weighted average delay across tasks
    bool all_ok = true;
};

// Full analytic evaluation: per-task offload fixed point, association,
// coverage, loads, transmission and response times, then the averaged delay.
ScenarioEvaluation evaluate(const Scenario& sc, NetworkMode mode = NetworkMode::integrated,
                            const numerics::QuadratureSpec& quad = {});

struct TaskComparison {
    TaskEvaluation analytic;
    montecarlo::TaskSimEstimates sim;
    double sim_t_avg = 0.0;  // delay reassembled from the empirical estimates
};

// Analytic evaluation plus an independent simulation of the same scenario.
// The simulator consumes only the fixed-point offloadability (the same
// mean-field decoupling the analysis uses) and re-estimates association and
// coverage empirically; delays are then reassembled from those estimates.
std::vector<TaskComparison> compare(const Scenario& sc, long long trials,
                                    std::uint64_t seed, int threads,
                                    const numerics::QuadratureSpec& quad = {});

}  // namespace leomec::pipeline
