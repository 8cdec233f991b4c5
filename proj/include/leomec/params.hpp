#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "leomec/numerics.hpp"

namespace leomec::params {

class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Watts <-> dBm and linear <-> dB. The config layer is the only place dB
// units exist; everything past it is linear SI.
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);
double db_to_linear(double db);

struct TaskSpec {
    int service_id = 0;
    double cycles = 0.0;         // CPU cycles per task
    double uplink_bits = 0.0;    // offloaded input size
    double downlink_bits = 0.0;  // result size
    double q = 0.0;              // probability a generated task is of this type
};

struct SystemParams {
    double p_u = 0.0, p_c = 0.0, p_s = 0.0;  // transmit powers, W
    double f_s = 0.0, f_c = 0.0;             // carrier frequencies, Hz
    double sigma2_u = 0.0, sigma2_c = 0.0, sigma2_s = 0.0;  // noise powers, W
    double alpha = 0.0;                      // terrestrial path-loss exponent
    double lambda_c = 0.0, lambda_u = 0.0;   // ground densities, points/m^2
    double bias_ratio = 0.0;                 // B_s / B_c
    double bandwidth = 0.0;                  // W, Hz
    double tau = 0.0;                        // SNR threshold, linear
    numerics::SrFadingParams sr{0.0, 0.0, 0.0};
    std::vector<TaskSpec> tasks;
    double cap_sat = 0.0, cap_cs = 0.0;      // F_s, F_c, cycles/s
    int buffer_jobs = 0;                     // satellite computing buffer size
    // Fraction of lambda_u that a satellite sees averaged over its whole
    // footprint. Terrestrial cells are local and use lambda_u directly;
    // a satellite footprint spans ocean and empty land, so the density it
    // serves is far below the density around the typical UE.
    double sat_ue_fraction = 1.0;

    double lambda_u_sat() const { return lambda_u * sat_ue_fraction; }
};

struct ConstellationGeometry {
    double r_e = 0.0;  // Earth radius, m
    double a_s = 0.0;  // satellite altitude, m
    double r_s = 0.0;  // orbital-shell radius, m (r_e + a_s)
    int n_sats = 0;
};

ConstellationGeometry make_geometry(double earth_radius_m, double altitude_m, int n_sats);

// Shell density N_s / (4 pi r_s^2), points per m^2.
double derived_sat_density(const ConstellationGeometry& geom);

struct SimSettings {
    long long trials = 100000;
    unsigned long long seed = 1;
    int threads = 0;               // 0 = hardware concurrency
    double disk_radius = 0.0;      // m; 0 = derived from lambda_c
    bool report_ci = true;
};

struct Scenario {
    SystemParams sys;
    ConstellationGeometry geom;
    SimSettings sim;
    std::vector<int> sats_per_type;  // N_{s_i}, sums to n_sats

    double lambda_s_type(int task) const;   // N_{s_i} / (4 pi r_s^2)
    double lambda_u_type(int task) const;   // q_i * lambda_u
};

// Expectation-matching integer split of n_sats across task types
// (largest-remainder rounding of q_i * n_sats).
std::vector<int> split_satellites(const std::vector<TaskSpec>& tasks, int n_sats);

// Flat key-value document with [section] headers. Duplicate keys within a
// section are rejected.
struct ConfigDoc {
    std::map<std::string, std::string> values;  // "section.key" -> raw text

    static ConfigDoc parse_file(const std::string& path);
    static ConfigDoc parse_text(const std::string& text);
    void apply_override(const std::string& key_equals_value);

    bool has(const std::string& key) const;
    double number(const std::string& key) const;
    long long integer(const std::string& key) const;
};

// Validates and converts a parsed document into a linear-SI scenario.
// Rejections name the offending key.
Scenario from_config(const ConfigDoc& doc);

void validate(const SystemParams& sys);
void validate(const ConstellationGeometry& geom);

}  // namespace leomec::params
