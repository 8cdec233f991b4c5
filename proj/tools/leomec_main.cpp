// Experiment runner for the LEO satellite-assisted edge-computing evaluator.
//
// Subcommands:
//   analytic  - evaluate the analytical pipeline over a parameter sweep
//   simulate  - Monte Carlo estimates over a sweep
//   compare   - analytic and Monte Carlo side by side with gap columns
//   preset    - evaluate a named constellation (see --list)
//   baselines - integrated vs satellite-only vs cloud-only delay curves
//   validate  - run the full oracle/invariant suite and report pass/fail
//
// Exit codes: 0 ok, 1 config error, 2 numerical failure, 3 validation failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "leomec/params.hpp"
#include "leomec/pipeline.hpp"
#include "leomec/sweep.hpp"
#include "leomec/validation.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_path;
    long long trials = -1;
    long long seed = -1;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_config = true) {
    auto* cfg = cmd->add_option("--config", o.config_path, "scenario config file");
    if (needs_config) cfg->required();
    cmd->add_option("--set", o.overrides, "override, section.key=value (repeatable)");
    cmd->add_option("--out", o.out_path, "output CSV path (default: stdout)");
    cmd->add_option("--trials", o.trials, "Monte Carlo trials per point");
    cmd->add_option("--seed", o.seed, "master RNG seed");
    cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)");
}

leomec::params::ConfigDoc load_config(const CommonOpts& o) {
    auto doc = o.config_path.empty() ? leomec::validation::default_config()
                                     : leomec::params::ConfigDoc::parse_file(o.config_path);
    for (const auto& kv : o.overrides) doc.apply_override(kv);
    if (o.trials >= 0) doc.values["sim.trials"] = std::to_string(o.trials);
    if (o.seed >= 0) doc.values["sim.seed"] = std::to_string(o.seed);
    return doc;
}

int with_output(const CommonOpts& o, const std::function<void(std::ostream&)>& fn) {
    if (o.out_path.empty()) {
        fn(std::cout);
        return 0;
    }
    std::ofstream out(o.out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file " << o.out_path << "\n";
        return 1;
    }
    fn(out);
    return 0;
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) values.push_back(std::stod(item));
    return values;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LEO satellite-assisted edge computing performance evaluator"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string sweep_var = "n_sats";
    std::string sweep_values;
    std::string preset_name;
    bool list_presets = false;
    std::string dump_path;
    long long dump_count = 1000;

    auto add_sweep_opts = [&](CLI::App* cmd) {
        cmd->add_option("--sweep", sweep_var,
                        "swept variable: n_sats | altitude_km | lambda_u_per_km2 | tau_db");
        cmd->add_option("--values", sweep_values, "comma-separated sweep values")
            ->required();
    };

    auto* analytic = app.add_subcommand("analytic", "closed-form/numerical evaluation");
    add_common(analytic, opts);
    add_sweep_opts(analytic);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates");
    add_common(simulate, opts);
    add_sweep_opts(simulate);
    simulate->add_option("--dump-trials", dump_path,
                         "also write per-trial outcomes (first sweep point, task 1)");
    simulate->add_option("--dump-count", dump_count, "trials to dump (default 1000)");

    auto* compare = app.add_subcommand("compare", "analytic vs Monte Carlo with gaps");
    add_common(compare, opts);
    add_sweep_opts(compare);

    auto* preset = app.add_subcommand("preset", "evaluate a named constellation");
    add_common(preset, opts, false);
    preset->add_option("--name", preset_name, "preset name");
    preset->add_flag("--list", list_presets, "list available presets");

    auto* baselines =
        app.add_subcommand("baselines", "integrated vs single-tier delay curves");
    add_common(baselines, opts);
    baselines->add_option("--values", sweep_values, "comma-separated n_sats grid")
        ->required();

    auto* validate = app.add_subcommand("validate", "run the oracle/invariant suite");
    add_common(validate, opts, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analytic || *simulate || *compare) {
            leomec::sweep::SweepSpec spec;
            spec.variable = sweep_var;
            spec.values = parse_values(sweep_values);
            spec.mode = *analytic ? leomec::sweep::Mode::analytic
                        : *simulate ? leomec::sweep::Mode::simulate
                                    : leomec::sweep::Mode::compare;
            const auto doc = load_config(opts);
            if (*simulate && !dump_path.empty()) {
                const auto sc =
                    leomec::sweep::scenario_with(doc, spec.variable, spec.values.at(0));
                const auto ev = leomec::pipeline::evaluate(sc);
                std::ofstream dump(dump_path);
                if (!dump) {
                    std::cerr << "error: cannot open dump file " << dump_path << "\n";
                    return 1;
                }
                leomec::montecarlo::dump_trials(sc, 0, ev.tasks[0].p_ofld, dump_count,
                                                sc.sim.seed, dump);
            }
            return with_output(opts, [&](std::ostream& out) {
                leomec::sweep::run_sweep(doc, spec, out, opts.threads);
            });
        }
        if (*preset) {
            if (list_presets) {
                for (const auto& p : leomec::sweep::presets())
                    std::cout << p.name << " (altitude " << p.altitude_km << " km, "
                              << p.n_sats << " satellites)\n";
                return 0;
            }
            if (preset_name.empty())
                throw leomec::params::ConfigError("preset: --name or --list required");
            const auto doc = load_config(opts);
            return with_output(opts, [&](std::ostream& out) {
                leomec::sweep::run_preset(doc, preset_name, leomec::sweep::Mode::analytic,
                                          out, opts.threads);
            });
        }
        if (*baselines) {
            const auto doc = load_config(opts);
            const auto values = parse_values(sweep_values);
            return with_output(opts, [&](std::ostream& out) {
                leomec::sweep::run_baselines(doc, values, out, opts.threads);
            });
        }
        if (*validate) {
            const auto results = leomec::validation::run_acceptance(std::cout, opts.threads);
            for (const auto& r : results)
                if (!r.pass) return 3;
            return 0;
        }
    } catch (const leomec::params::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
