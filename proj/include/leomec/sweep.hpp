#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "leomec/params.hpp"
#include "leomec/pipeline.hpp"

namespace leomec::sweep {

enum class Mode { analytic, simulate, compare };

struct SweepSpec {
    std::string variable;        // n_sats | altitude_km | lambda_u_per_km2 | tau_db
    std::vector<double> values;  // nonempty, strictly increasing
    Mode mode = Mode::analytic;
};

struct ConstellationPreset {
    std::string name;
    double altitude_km;
    int n_sats;
};

const std::vector<ConstellationPreset>& presets();
// Unknown names raise ConfigError listing every available preset.
const ConstellationPreset& find_preset(const std::string& name);

// Overrides the swept key on a copy of the document and rebuilds the
// scenario, so each row reflects a fully revalidated configuration.
params::Scenario scenario_with(const params::ConfigDoc& base, const std::string& variable,
                               double value);

void validate_spec(const SweepSpec& spec);

// One CSV row per sweep value and task class; floats carry 17 significant
// digits so reruns are byte-comparable. Compare mode appends simulation
// estimates, confidence halfwidths and absolute gaps.
void run_sweep(const params::ConfigDoc& base, const SweepSpec& spec, std::ostream& out,
               int threads);

// Integrated vs satellite-only vs cloud-only delay over an n_sats grid.
void run_baselines(const params::ConfigDoc& base, const std::vector<double>& n_sats_values,
                   std::ostream& out, int threads);

// Single-row evaluation of a named constellation under the base config.
void run_preset(const params::ConfigDoc& base, const std::string& name, Mode mode,
                std::ostream& out, int threads);

std::string format_double(double v);  // %.17g

}  // namespace leomec::sweep
