#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "leomec/params.hpp"

namespace leomec::validation {

// Baseline evaluation scenario (the shipped configs/default.ini carries the
// same values). Scenario-defining keys can be overridden before building.
params::ConfigDoc default_config();
params::Scenario default_scenario();

// --- independent oracles -------------------------------------------------
// These deliberately avoid the closed forms in queueing: the chain solves
// the balance equations with dense elimination, the simulator runs the
// actual queue.

struct ChainResult {
    double blocking = 0.0;        // stationary probability of the full state
    double mean_in_system = 0.0;
    double response_time = 0.0;   // mean sojourn of accepted jobs
};

ChainResult mm1n_chain_oracle(double lambda, double mu, int buffer);

// FIFO single-server discrete-event simulation with per-class exponential
// service; returns the per-class mean sojourn time.
std::vector<double> mg1_fifo_des(const std::vector<double>& lambda,
                                 const std::vector<double>& mu, long long jobs,
                                 std::uint64_t seed);

// --- acceptance suite ----------------------------------------------------

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

// Runs every acceptance criterion, printing one PASS/FAIL line per criterion
// to `out`. Returns the individual results.
std::vector<CriterionResult> run_acceptance(std::ostream& out, int threads = 0);

}  // namespace leomec::validation
