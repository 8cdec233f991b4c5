#include "leomec/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include "leomec/rng.hpp"

namespace leomec::sweep {

using params::ConfigDoc;
using params::ConfigError;
using params::Scenario;

const std::vector<ConstellationPreset>& presets() {
    static const std::vector<ConstellationPreset> table = {
        {"starlink-1584", 550.0, 1584},  {"starlink-12000", 550.0, 12000},
        {"oneweb-716", 1200.0, 716},     {"oneweb-6372", 1200.0, 6372},
        {"amazon-578", 630.0, 578},      {"amazon-3236", 630.0, 3236},
        {"telesat-298", 1015.0, 298},    {"telesat-1671", 1325.0, 1671},
    };
    return table;
}

const ConstellationPreset& find_preset(const std::string& name) {
    for (const auto& p : presets())
        if (p.name == name) return p;
    std::string known;
    for (const auto& p : presets()) known += (known.empty() ? "" : ", ") + p.name;
    throw ConfigError("unknown preset '" + name + "'; available: " + known);
}

namespace {

const char* variable_key(const std::string& variable) {
    if (variable == "n_sats") return "constellation.n_sats";
    if (variable == "altitude_km") return "constellation.altitude_km";
    if (variable == "lambda_u_per_km2") return "link.lambda_u_per_km2";
    if (variable == "tau_db") return "link.tau_db";
    throw ConfigError("unknown sweep variable '" + variable +
                      "'; expected n_sats, altitude_km, lambda_u_per_km2 or tau_db");
}

}  // namespace

Scenario scenario_with(const ConfigDoc& base, const std::string& variable, double value) {
    ConfigDoc doc = base;
    std::ostringstream v;
    v.precision(17);
    v << value;
    doc.values[variable_key(variable)] = v.str();
    return params::from_config(doc);
}

void validate_spec(const SweepSpec& spec) {
    variable_key(spec.variable);
    if (spec.values.empty()) throw ConfigError("sweep values list is empty");
    for (size_t i = 1; i < spec.values.size(); ++i)
        if (!(spec.values[i] > spec.values[i - 1]))
            throw ConfigError("sweep values must be strictly increasing");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void write_echo_header(std::ostream& out) {
    out << "variable,value,task,q,n_sats,altitude_km,lambda_u_per_km2,lambda_c_per_km2,"
           "tau_db,bias_ratio,sat_ue_fraction,cycles,n_type";
}

void write_echo_row(std::ostream& out, const Scenario& sc, const std::string& variable,
                    double value, int task) {
    out << variable << ',' << format_double(value) << ',' << (task + 1) << ','
        << format_double(sc.sys.tasks[task].q) << ',' << sc.geom.n_sats << ','
        << format_double(sc.geom.a_s / 1e3) << ',' << format_double(sc.sys.lambda_u * 1e6)
        << ',' << format_double(sc.sys.lambda_c * 1e6) << ','
        << format_double(10.0 * std::log10(sc.sys.tau)) << ','
        << format_double(sc.sys.bias_ratio) << ','
        << format_double(sc.sys.sat_ue_fraction) << ','
        << format_double(sc.sys.tasks[task].cycles) << ',' << sc.sats_per_type[task];
}

void write_analytic_header(std::ostream& out) {
    out << ",p_ofld,n_eff,a_sat,a_cs,p_down_sat,p_up_sat,p_down_cs,p_up_cs,"
           "mean_ues_sat,mean_ues_cs,w_sat_hz,w_cs_hz,lambda_sat,lambda_cs,"
           "t_up_cs,t_down_cs,t_up_sat,t_down_sat,t_resp_cs,t_resp_sat,t_avg,t_avg_mix,"
           "status";
}

void write_analytic_row(std::ostream& out, const pipeline::ScenarioEvaluation& ev,
                        int task) {
    const pipeline::TaskEvaluation& te = ev.tasks[task];
    out << ',' << format_double(te.p_ofld) << ',' << format_double(te.n_eff) << ','
        << format_double(te.a_sat) << ',' << format_double(te.a_cs) << ','
        << format_double(te.p_down_sat) << ',' << format_double(te.p_up_sat) << ','
        << format_double(te.p_down_cs) << ',' << format_double(te.p_up_cs) << ','
        << format_double(te.load.mean_ues_sat) << ',' << format_double(te.load.mean_ues_cs)
        << ',' << format_double(te.load.w_sat) << ',' << format_double(te.load.w_cs) << ','
        << format_double(te.lambda_sat) << ',' << format_double(te.lambda_cs) << ','
        << format_double(te.delay.tx.t_up_cs) << ',' << format_double(te.delay.tx.t_down_cs)
        << ',' << format_double(te.delay.tx.t_up_sat) << ','
        << format_double(te.delay.tx.t_down_sat) << ',' << format_double(te.delay.t_resp_cs)
        << ',' << format_double(te.delay.t_resp_sat) << ',' << format_double(te.delay.t_avg)
        << ',' << format_double(ev.t_avg_mix) << ',' << te.status;
}

void write_sim_header(std::ostream& out) {
    out << ",trials,seed,sim_a_sat,sim_a_sat_ci,sim_p_down_sat,sim_p_down_sat_ci,"
           "sim_p_up_sat,sim_p_up_sat_ci,sim_p_down_cs,sim_p_down_cs_ci,"
           "sim_p_up_cs,sim_p_up_cs_ci,sim_t_avg";
}

void write_sim_row(std::ostream& out, const pipeline::TaskComparison& tc, long long trials,
                   std::uint64_t seed) {
    out << ',' << trials << ',' << seed << ',' << format_double(tc.sim.assoc_sat.mean)
        << ',' << format_double(tc.sim.assoc_sat.ci_half) << ','
        << format_double(tc.sim.cov_down_sat.mean) << ','
        << format_double(tc.sim.cov_down_sat.ci_half) << ','
        << format_double(tc.sim.cov_up_sat.mean) << ','
        << format_double(tc.sim.cov_up_sat.ci_half) << ','
        << format_double(tc.sim.cov_down_cs.mean) << ','
        << format_double(tc.sim.cov_down_cs.ci_half) << ','
        << format_double(tc.sim.cov_up_cs.mean) << ','
        << format_double(tc.sim.cov_up_cs.ci_half) << ',' << format_double(tc.sim_t_avg);
}

void write_gap_header(std::ostream& out) {
    out << ",gap_a_sat,gap_p_down_sat,gap_p_up_sat,gap_p_down_cs,gap_p_up_cs,gap_t_avg";
}

void write_gap_row(std::ostream& out, const pipeline::TaskComparison& tc) {
    const auto& a = tc.analytic;
    out << ',' << format_double(std::abs(a.a_sat - tc.sim.assoc_sat.mean)) << ','
        << format_double(std::abs(a.p_down_sat - tc.sim.cov_down_sat.mean)) << ','
        << format_double(std::abs(a.p_up_sat - tc.sim.cov_up_sat.mean)) << ','
        << format_double(std::abs(a.p_down_cs - tc.sim.cov_down_cs.mean)) << ','
        << format_double(std::abs(a.p_up_cs - tc.sim.cov_up_cs.mean)) << ','
        << format_double(std::abs(a.delay.t_avg - tc.sim_t_avg));
}

}  // namespace

void run_sweep(const ConfigDoc& base, const SweepSpec& spec, std::ostream& out,
               int threads) {
    validate_spec(spec);

    write_echo_header(out);
    if (spec.mode != Mode::simulate) write_analytic_header(out);
    if (spec.mode != Mode::analytic) write_sim_header(out);
    if (spec.mode == Mode::compare) write_gap_header(out);
    out << '\n';

    // Analytic points are independent; dispatch them to a pool and write the
    // rows in sweep order once everything has completed.
    std::vector<pipeline::ScenarioEvaluation> analytic_evals;
    if (spec.mode == Mode::analytic) {
        analytic_evals.resize(spec.values.size());
        int n_workers = threads > 0 ? threads
                                    : static_cast<int>(std::thread::hardware_concurrency());
        n_workers = std::max(1, std::min<int>(n_workers, spec.values.size()));
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        std::mutex error_mutex;
        std::exception_ptr first_error;
        for (int w = 0; w < n_workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const size_t pt = next.fetch_add(1);
                    if (pt >= spec.values.size()) return;
                    try {
                        const Scenario sc =
                            scenario_with(base, spec.variable, spec.values[pt]);
                        analytic_evals[pt] = pipeline::evaluate(sc);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!first_error) first_error = std::current_exception();
                        return;
                    }
                }
            });
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    for (size_t pt = 0; pt < spec.values.size(); ++pt) {
        const double value = spec.values[pt];
        const Scenario sc = scenario_with(base, spec.variable, value);
        const std::uint64_t point_seed = rng::mix64(sc.sim.seed ^ rng::mix64(pt));

        if (spec.mode == Mode::analytic) {
            const auto& ev = analytic_evals[pt];
            for (size_t t = 0; t < sc.sys.tasks.size(); ++t) {
                write_echo_row(out, sc, spec.variable, value, static_cast<int>(t));
                write_analytic_row(out, ev, static_cast<int>(t));
                out << '\n';
            }
        } else {
            const auto cmp = pipeline::compare(sc, sc.sim.trials, point_seed, threads);
            pipeline::ScenarioEvaluation ev;
            ev.tasks.resize(cmp.size());
            ev.t_avg_mix = 0.0;
            for (size_t k = 0; k < cmp.size(); ++k) {
                ev.tasks[k] = cmp[k].analytic;
                ev.t_avg_mix += sc.sys.tasks[k].q * cmp[k].analytic.delay.t_avg;
            }
            for (size_t t = 0; t < sc.sys.tasks.size(); ++t) {
                write_echo_row(out, sc, spec.variable, value, static_cast<int>(t));
                if (spec.mode == Mode::compare)
                    write_analytic_row(out, ev, static_cast<int>(t));
                write_sim_row(out, cmp[t], sc.sim.trials, sc.sim.seed);
                if (spec.mode == Mode::compare) write_gap_row(out, cmp[t]);
                out << '\n';
            }
        }
    }
}

void run_baselines(const ConfigDoc& base, const std::vector<double>& n_sats_values,
                   std::ostream& out, int /*threads*/) {
    SweepSpec spec{"n_sats", n_sats_values, Mode::analytic};
    validate_spec(spec);

    write_echo_header(out);
    out << ",t_avg_integrated,t_avg_sat_only,t_avg_cs_only,"
           "status_integrated,status_sat_only,status_cs_only\n";

    for (double value : n_sats_values) {
        const Scenario sc = scenario_with(base, "n_sats", value);
        const auto integrated = pipeline::evaluate(sc, pipeline::NetworkMode::integrated);
        const auto sat_only = pipeline::evaluate(sc, pipeline::NetworkMode::sat_only);
        const auto cs_only = pipeline::evaluate(sc, pipeline::NetworkMode::cs_only);
        auto status_of = [](const pipeline::ScenarioEvaluation& ev) {
            for (const auto& t : ev.tasks)
                if (t.status != "ok") return t.status;
            return std::string("ok");
        };
        write_echo_row(out, sc, "n_sats", value, 0);
        out << ',' << format_double(integrated.t_avg_mix) << ','
            << format_double(sat_only.t_avg_mix) << ',' << format_double(cs_only.t_avg_mix)
            << ',' << status_of(integrated) << ',' << status_of(sat_only) << ','
            << status_of(cs_only) << '\n';
    }
}

void run_preset(const ConfigDoc& base, const std::string& name, Mode mode,
                std::ostream& out, int threads) {
    const ConstellationPreset& p = find_preset(name);
    ConfigDoc doc = base;
    doc.apply_override("constellation.altitude_km=" + format_double(p.altitude_km));
    SweepSpec spec{"n_sats", {static_cast<double>(p.n_sats)}, mode};
    run_sweep(doc, spec, out, threads);
}

}  // namespace leomec::sweep
