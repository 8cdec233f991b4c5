#include "leomec/pipeline.hpp"

#include <cmath>
#include <limits>

namespace leomec::pipeline {

namespace {

// G(x): offloadability -> usable satellites -> association -> per-satellite
// arrival rate -> buffer occupancy -> offloadability.
double offload_map(double x, const Scenario& sc, int task, NetworkMode mode,
                   const numerics::QuadratureSpec& quad) {
    const int n_type = sc.sats_per_type.at(task);
    const double n_eff = n_type * x;
    double a_sat;
    switch (mode) {
        case NetworkMode::sat_only:
            a_sat = 1.0;
            break;
        case NetworkMode::cs_only:
            a_sat = 0.0;
            break;
        default:
            a_sat = association::assoc_prob_sat(n_eff, sc.sys, sc.geom, quad);
    }
    const double p_up = coverage::cov_up_sat(sc.sys.tau, n_eff, sc.sys, sc.geom, quad);
    const double lambda_si = sc.lambda_s_type(task);
    const double lambda_ui = sc.sys.tasks.at(task).q * sc.sys.lambda_u_sat();
    const double arrival = lambda_si > 0.0 ? a_sat * lambda_ui * p_up / lambda_si : 0.0;
    const double mu = sc.sys.cap_sat / sc.sys.tasks.at(task).cycles;
    return queueing::offload_probability(arrival / mu, sc.sys.buffer_jobs);
}

}  // namespace

ScenarioEvaluation evaluate(const Scenario& sc, NetworkMode mode,
                            const numerics::QuadratureSpec& quad) {
    ScenarioEvaluation ev;
    const size_t n_tasks = sc.sys.tasks.size();
    ev.tasks.resize(n_tasks);

    // Terrestrial link coverage is task-independent.
    const double p_down_cs = coverage::cov_down_cs(sc.sys.tau, sc.sys, quad);
    const double p_up_cs = coverage::cov_up_cs(sc.sys.tau, sc.sys, quad);

    for (size_t i = 0; i < n_tasks; ++i) {
        TaskEvaluation& te = ev.tasks[i];
        te.task = static_cast<int>(i);
        te.p_down_cs = p_down_cs;
        te.p_up_cs = p_up_cs;

        const int n_type = sc.sats_per_type.at(i);
        if (n_type > 0 && mode != NetworkMode::cs_only) {
            auto g = [&](double x) {
                return offload_map(x, sc, static_cast<int>(i), mode, quad);
            };
            const queueing::FixedPoint fp = queueing::solve_offload_probability(g);
            te.p_ofld = fp.p_ofld;
            te.n_eff = n_type * fp.p_ofld;
        } else {
            te.p_ofld = 1.0;
            te.n_eff = 0.0;
        }

        switch (mode) {
            case NetworkMode::integrated: {
                const auto assoc = association::associate(te.n_eff, sc.sys, sc.geom, quad);
                te.a_sat = assoc.a_sat;
                te.a_cs = assoc.a_cs;
                break;
            }
            case NetworkMode::sat_only:
                te.a_sat = 1.0;
                te.a_cs = 0.0;
                break;
            case NetworkMode::cs_only:
                te.a_sat = 0.0;
                te.a_cs = 1.0;
                break;
        }

        te.p_down_sat = coverage::cov_down_sat(sc.sys.tau, te.n_eff, sc.sys, sc.geom, quad);
        te.p_up_sat = coverage::cov_up_sat(sc.sys.tau, te.n_eff, sc.sys, sc.geom, quad);
        te.load = queueing::mean_loads(sc, static_cast<int>(i), te.a_sat, te.a_cs);

        const double lambda_si = sc.lambda_s_type(i);
        const double lambda_ui_sat = sc.sys.tasks[i].q * sc.sys.lambda_u_sat();
        te.lambda_sat = lambda_si > 0.0
                            ? te.a_sat * lambda_ui_sat * te.p_up_sat / lambda_si
                            : 0.0;
        te.lambda_cs = te.a_cs * sc.sys.lambda_u * sc.sys.tasks[i].q * te.p_up_cs /
                       sc.sys.lambda_c;
    }

    // Cloud response times couple every class through the shared queue.
    std::vector<double> lambda_cs(n_tasks), mu_cs(n_tasks);
    for (size_t i = 0; i < n_tasks; ++i) {
        lambda_cs[i] = ev.tasks[i].lambda_cs;
        mu_cs[i] = sc.sys.cap_cs / sc.sys.tasks[i].cycles;
    }
    std::vector<double> t_resp_cs;
    std::string cs_status = "ok";
    try {
        t_resp_cs = queueing::cs_response_times(lambda_cs, mu_cs);
    } catch (const queueing::StabilityError& e) {
        cs_status = std::string("unstable: ") + e.what();
    }

    std::vector<double> q(n_tasks), a_sat(n_tasks), a_cs(n_tasks);
    std::vector<double> pd_sat(n_tasks), pd_cs(n_tasks), pu_sat(n_tasks), pu_cs(n_tasks);

    for (size_t i = 0; i < n_tasks; ++i) {
        TaskEvaluation& te = ev.tasks[i];
        const double mu_sat = sc.sys.cap_sat / sc.sys.tasks[i].cycles;
        te.delay.t_resp_sat =
            queueing::sat_response_time(te.lambda_sat, mu_sat, sc.sys.buffer_jobs);
        if (cs_status == "ok") {
            te.delay.t_resp_cs = t_resp_cs[i];
            try {
                // Only tiers that carry weight need usable links.
                const auto& task = sc.sys.tasks[i];
                if (te.a_cs > 0.0) {
                    te.delay.tx.t_up_cs = queueing::transmission_time(
                        task.uplink_bits, te.p_up_cs, te.load.w_cs, sc.sys.tau, "UE->CS");
                    te.delay.tx.t_down_cs = queueing::transmission_time(
                        task.downlink_bits, te.p_down_cs, te.load.w_cs, sc.sys.tau, "CS->UE");
                }
                if (te.a_sat > 0.0) {
                    te.delay.tx.t_up_sat = queueing::transmission_time(
                        task.uplink_bits, te.p_up_sat, te.load.w_sat, sc.sys.tau, "UE->SAT");
                    te.delay.tx.t_down_sat = queueing::transmission_time(
                        task.downlink_bits, te.p_down_sat, te.load.w_sat, sc.sys.tau,
                        "SAT->UE");
                }
                te.delay.t_avg = queueing::average_delay(te.a_sat, te.a_cs, te.delay);
            } catch (const queueing::StabilityError& e) {
                te.status = std::string("unserviceable: ") + e.what();
            }
        } else {
            te.status = cs_status;
        }

        q[i] = sc.sys.tasks[i].q;
        a_sat[i] = te.a_sat;
        a_cs[i] = te.a_cs;
        pd_sat[i] = te.p_down_sat;
        pd_cs[i] = te.p_down_cs;
        pu_sat[i] = te.p_up_sat;
        pu_cs[i] = te.p_up_cs;
        if (te.status != "ok") ev.all_ok = false;
    }

    ev.total_cov_down = coverage::total_coverage(q, a_sat, a_cs, pd_sat, pd_cs);
    ev.total_cov_up = coverage::total_coverage(q, a_sat, a_cs, pu_sat, pu_cs);
    if (ev.all_ok) {
        ev.t_avg_mix = 0.0;
        for (size_t i = 0; i < n_tasks; ++i) ev.t_avg_mix += q[i] * ev.tasks[i].delay.t_avg;
    } else {
        ev.t_avg_mix = std::numeric_limits<double>::infinity();
    }
    return ev;
}

std::vector<TaskComparison> compare(const Scenario& sc, long long trials,
                                    std::uint64_t seed, int threads,
                                    const numerics::QuadratureSpec& quad) {
    const ScenarioEvaluation analytic = evaluate(sc, NetworkMode::integrated, quad);
    std::vector<TaskComparison> result;
    result.reserve(analytic.tasks.size());

    // First pass: simulate every class (association + coverage estimates).
    std::vector<montecarlo::TaskSimEstimates> sims;
    for (size_t i = 0; i < analytic.tasks.size(); ++i)
        sims.push_back(montecarlo::simulate_task(sc, static_cast<int>(i),
                                                 analytic.tasks[i].p_ofld, trials, seed,
                                                 threads));

    // Cloud queue rebuilt from the empirical association / coverage values.
    std::vector<double> lambda_cs(sims.size()), mu_cs(sims.size());
    for (size_t i = 0; i < sims.size(); ++i) {
        const double a0 = 1.0 - sims[i].assoc_sat.mean;
        lambda_cs[i] = a0 * sc.sys.lambda_u * sc.sys.tasks[i].q * sims[i].cov_up_cs.mean /
                       sc.sys.lambda_c;
        mu_cs[i] = sc.sys.cap_cs / sc.sys.tasks[i].cycles;
    }
    std::vector<double> t_resp_cs;
    bool cs_ok = true;
    try {
        t_resp_cs = queueing::cs_response_times(lambda_cs, mu_cs);
    } catch (const queueing::StabilityError&) {
        cs_ok = false;
    }

    for (size_t i = 0; i < sims.size(); ++i) {
        TaskComparison tc;
        tc.analytic = analytic.tasks[i];
        tc.sim = sims[i];

        const double a_sat = sims[i].assoc_sat.mean;
        const double a_cs = 1.0 - a_sat;
        const auto load = queueing::mean_loads(sc, static_cast<int>(i), a_sat, a_cs);
        const double lambda_si = sc.lambda_s_type(i);
        const double lambda_sat =
            lambda_si > 0.0 ? a_sat * sc.sys.tasks[i].q * sc.sys.lambda_u_sat() *
                                  sims[i].cov_up_sat.mean / lambda_si
                            : 0.0;
        const double mu_sat = sc.sys.cap_sat / sc.sys.tasks[i].cycles;
        queueing::DelayBreakdown parts;
        parts.t_resp_sat = queueing::sat_response_time(lambda_sat, mu_sat, sc.sys.buffer_jobs);
        if (cs_ok) {
            parts.t_resp_cs = t_resp_cs[i];
            try {
                parts.tx = queueing::transmission_times(
                    sc, static_cast<int>(i), load, sims[i].cov_up_cs.mean,
                    sims[i].cov_down_cs.mean, sims[i].cov_up_sat.mean,
                    sims[i].cov_down_sat.mean);
                tc.sim_t_avg = queueing::average_delay(a_sat, a_cs, parts);
            } catch (const queueing::StabilityError&) {
                tc.sim_t_avg = std::numeric_limits<double>::infinity();
            }
        } else {
            tc.sim_t_avg = std::numeric_limits<double>::infinity();
        }
        result.push_back(tc);
    }
    return result;
}

}  // namespace leomec::pipeline
