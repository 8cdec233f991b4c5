#include "leomec/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <vector>

#include "leomec/channel.hpp"
#include "leomec/geometry.hpp"
#include "leomec/montecarlo.hpp"
#include "leomec/numerics.hpp"
#include "leomec/pipeline.hpp"
#include "leomec/rng.hpp"
#include "leomec/sweep.hpp"

namespace leomec::validation {

namespace {

const char* kDefaultConfigText = R"CFG(
# Baseline scenario: LEO-assisted edge-computing network evaluation defaults.
# Powers/noise in dBm, SNR threshold in dB, densities per km^2; everything is
# converted to linear SI units at load time.

[link]
p_u_dbm = 23
p_c_dbm = 45
p_s_dbm = 60
f_s_hz = 2e9
f_c_hz = 1e9
noise_u_dbm = -98
noise_c_dbm = -117
noise_s_dbm = -174
alpha = 2.7
tau_db = 0
bandwidth_hz = 5e8
bias_ratio = 200
lambda_c_per_km2 = 1
lambda_u_per_km2 = 45
# UE density a satellite sees averaged over its footprint, as a share of the
# local density above (footprints are dominated by ocean and empty land).
sat_ue_fraction = 2e-6
sr_omega = 1.29
sr_b0 = 0.158
sr_m = 19.4
sat_capacity_cps = 3e9
cs_capacity_cps = 1e10
buffer_jobs = 2

[constellation]
earth_radius_km = 6371
altitude_km = 500
n_sats = 1000

[tasks.1]
q = 0.25
cycles = 1.7e8
uplink_bits = 500
downlink_bits = 300

[tasks.2]
q = 0.25
cycles = 1.7e8
uplink_bits = 500
downlink_bits = 300

[tasks.3]
q = 0.25
cycles = 1.7e8
uplink_bits = 500
downlink_bits = 300

[tasks.4]
q = 0.25
cycles = 1.7e8
uplink_bits = 500
downlink_bits = 300

[sim]
trials = 1000000
seed = 42
threads = 0
)CFG";

}  // namespace

params::ConfigDoc default_config() {
    return params::ConfigDoc::parse_text(kDefaultConfigText);
}

params::Scenario default_scenario() { return params::from_config(default_config()); }

ChainResult mm1n_chain_oracle(double lambda, double mu, int buffer) {
    const int n = buffer + 1;  // states 0..buffer
    // Global balance per state (inflow - outflow = 0) with the last equation
    // replaced by the normalization constraint; solved by Gaussian
    // elimination. Unknown s sits in column s.
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    for (int st = 0; st < n - 1; ++st) {
        if (st > 0) a[st][st - 1] = lambda;  // arrival from state st-1
        a[st][st] = -((st < buffer ? lambda : 0.0) + (st > 0 ? mu : 0.0));
        if (st < buffer) a[st][st + 1] = mu;  // departure from state st+1
    }
    for (int s = 0; s < n; ++s) a[n - 1][s] = 1.0;  // sum pi = 1
    a[n - 1][n] = 1.0;

    // column-major unknowns pi_s; rows are equations
    for (int piv = 0; piv < n; ++piv) {
        int best = piv;
        for (int r = piv + 1; r < n; ++r)
            if (std::abs(a[r][piv]) > std::abs(a[best][piv])) best = r;
        std::swap(a[piv], a[best]);
        for (int r = 0; r < n; ++r) {
            if (r == piv || a[r][piv] == 0.0) continue;
            const double f = a[r][piv] / a[piv][piv];
            for (int cidx = piv; cidx <= n; ++cidx) a[r][cidx] -= f * a[piv][cidx];
        }
    }
    std::vector<double> pi(n);
    for (int s = 0; s < n; ++s) pi[s] = a[s][n] / a[s][s];

    ChainResult r;
    r.blocking = pi[buffer];
    for (int s = 0; s <= buffer; ++s) r.mean_in_system += s * pi[s];
    const double accepted = lambda * (1.0 - r.blocking);
    r.response_time = accepted > 0.0 ? r.mean_in_system / accepted : 1.0 / mu;
    return r;
}

std::vector<double> mg1_fifo_des(const std::vector<double>& lambda,
                                 const std::vector<double>& mu, long long jobs,
                                 std::uint64_t seed) {
    double total = 0.0;
    for (double l : lambda) total += l;
    rng::Stream stream(rng::mix64(seed));
    std::vector<double> sojourn_sum(lambda.size(), 0.0);
    std::vector<long long> count(lambda.size(), 0);

    const long long warmup = jobs / 10;
    double t_arrival = 0.0;
    double server_free = 0.0;
    for (long long j = 0; j < jobs + warmup; ++j) {
        t_arrival += stream.exponential(total);
        // class draw proportional to arrival rates
        double u = stream.u01() * total;
        size_t k = 0;
        for (; k + 1 < lambda.size(); ++k) {
            if (u < lambda[k]) break;
            u -= lambda[k];
        }
        const double start = std::max(t_arrival, server_free);
        const double done = start + stream.exponential(mu[k]);
        server_free = done;
        if (j >= warmup) {
            sojourn_sum[k] += done - t_arrival;
            count[k] += 1;
        }
    }
    std::vector<double> mean(lambda.size(), 0.0);
    for (size_t k = 0; k < lambda.size(); ++k)
        if (count[k] > 0) mean[k] = sojourn_sum[k] / count[k];
    return mean;
}

namespace {

using params::ConfigDoc;
using params::Scenario;

std::string fmt(double v) { return sweep::format_double(v); }

Scenario scenario_overridden(const ConfigDoc& base,
                             const std::vector<std::string>& overrides) {
    ConfigDoc doc = base;
    for (const auto& kv : overrides) doc.apply_override(kv);
    return params::from_config(doc);
}

struct SimBundle {
    pipeline::TaskEvaluation analytic;
    montecarlo::TaskSimEstimates sim;
    double seconds = 0.0;
};

// Table-defaults simulation shared by the coverage and association criteria.
SimBundle table_point_simulation(const ConfigDoc& base, long long trials, int threads) {
    const Scenario sc = params::from_config(base);
    const auto ev = pipeline::evaluate(sc);
    SimBundle b;
    b.analytic = ev.tasks[0];
    const auto t0 = std::chrono::steady_clock::now();
    b.sim = montecarlo::simulate_task(sc, 0, b.analytic.p_ofld, trials, 987654321ULL,
                                      threads);
    b.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return b;
}

CriterionResult criterion_coverage(const SimBundle& b, long long trials) {
    CriterionResult r{1, "analytic vs Monte Carlo coverage at table defaults", true, ""};
    std::ostringstream d;
    auto sat_check = [&](const char* name, double analytic, double sim) {
        const double gap = std::abs(analytic - sim);
        d << name << " analytic " << fmt(analytic) << " sim " << fmt(sim) << " gap "
          << fmt(gap) << "; ";
        if (gap > 0.015) r.pass = false;
    };
    auto cs_check = [&](const char* name, double analytic, double sim) {
        const double sigma = std::sqrt(std::max(sim * (1.0 - sim), 1e-12) / trials);
        const double gap = std::abs(analytic - sim);
        d << name << " gap " << fmt(gap) << " vs 3sigma " << fmt(3.0 * sigma) << "; ";
        if (gap > 3.0 * sigma) r.pass = false;
    };
    sat_check("P_down_sat", b.analytic.p_down_sat, b.sim.cov_down_sat.mean);
    sat_check("P_up_sat", b.analytic.p_up_sat, b.sim.cov_up_sat.mean);
    cs_check("P_down_cs", b.analytic.p_down_cs, b.sim.cov_down_cs.mean);
    cs_check("P_up_cs", b.analytic.p_up_cs, b.sim.cov_up_cs.mean);
    d << "runtime " << fmt(b.seconds) << "s";
    if (b.seconds > 120.0) r.pass = false;
    r.detail = d.str();
    return r;
}

CriterionResult criterion_association(const ConfigDoc& base, const SimBundle& b,
                                      long long trials) {
    CriterionResult r{2, "association partition and empirical frequency", true, ""};
    std::ostringstream d;
    double worst = 0.0;
    for (double a_km : {500.0, 800.0, 1000.0})
        for (double n : {200.0, 1000.0, 2500.0})
            for (double lc : {0.5, 1.0, 2.0}) {
                const Scenario sc = scenario_overridden(
                    base, {"constellation.altitude_km=" + fmt(a_km),
                           "constellation.n_sats=" + fmt(n),
                           "link.lambda_c_per_km2=" + fmt(lc)});
                const auto assoc = association::associate(
                    static_cast<double>(sc.sats_per_type[0]), sc.sys, sc.geom);
                worst = std::max(worst, std::abs(assoc.a_sat + assoc.a_cs - 1.0));
            }
    d << "worst |A_sat + A_cs - 1| over 27-point grid: " << fmt(worst) << "; ";
    if (worst > 1e-6) r.pass = false;

    const double sim = b.sim.assoc_sat.mean;
    const double sigma = std::sqrt(std::max(sim * (1.0 - sim), 1e-12) / trials);
    const double gap = std::abs(b.analytic.a_sat - sim);
    d << "table point |analytic - empirical| " << fmt(gap) << " vs 3sigma "
      << fmt(3.0 * sigma);
    if (gap > 3.0 * sigma) r.pass = false;
    r.detail = d.str();
    return r;
}

CriterionResult criterion_queue_oracles() {
    CriterionResult r{3, "queue formulas vs chain and event-driven oracles", true, ""};
    std::ostringstream d;
    double worst = 0.0;
    for (int buffer : {1, 2, 5})
        for (double rho : {0.1, 0.5, 1.0, 2.0}) {
            const double mu = 1.7;  // arbitrary service rate; rho fixes lambda
            const double lambda = rho * mu;
            const ChainResult chain = mm1n_chain_oracle(lambda, mu, buffer);
            const double p_ofld = queueing::offload_probability(rho, buffer);
            const double resp = queueing::sat_response_time(lambda, mu, buffer);
            worst = std::max(worst, std::abs(p_ofld - (1.0 - chain.blocking)));
            worst = std::max(worst, std::abs(resp - chain.response_time) /
                                        std::max(1.0, chain.response_time));
        }
    d << "worst M/M/1/N gap " << fmt(worst) << "; ";
    if (worst > 1e-10) r.pass = false;

    {
        const double lambda = 0.7, mu = 1.3;
        const double pk = queueing::cs_response_times({lambda}, {mu})[0];
        const double mm1 = 1.0 / (mu - lambda);
        d << "single-class P-K vs M/M/1 gap " << fmt(std::abs(pk - mm1)) << "; ";
        if (std::abs(pk - mm1) > 1e-12 * mm1) r.pass = false;

        // two symmetric classes must equal one class at the doubled rate
        const auto sym = queueing::cs_response_times({0.3, 0.3}, {mu, mu});
        const double merged = queueing::cs_response_times({0.6}, {mu})[0];
        if (std::abs(sym[0] - merged) > 1e-12 * merged ||
            std::abs(sym[1] - merged) > 1e-12 * merged)
            r.pass = false;
    }
    {
        const std::vector<double> lambda{0.25, 0.35}, mu{1.4, 2.6};
        const auto pk = queueing::cs_response_times(lambda, mu);
        const auto des = mg1_fifo_des(lambda, mu, 1000000, 2024);
        for (size_t k = 0; k < pk.size(); ++k) {
            const double rel = std::abs(pk[k] - des[k]) / pk[k];
            d << "class " << k << " P-K " << fmt(pk[k]) << " DES " << fmt(des[k])
              << " rel " << fmt(rel) << "; ";
            if (rel > 0.01) r.pass = false;
        }
    }
    r.detail = d.str();
    return r;
}

std::vector<double> delay_curve(const ConfigDoc& base, double altitude_km,
                                const std::vector<double>& n_grid,
                                pipeline::NetworkMode mode) {
    std::vector<double> t;
    for (double n : n_grid) {
        const Scenario sc = scenario_overridden(
            base, {"constellation.altitude_km=" + fmt(altitude_km),
                   "constellation.n_sats=" + fmt(n)});
        t.push_back(pipeline::evaluate(sc, mode).t_avg_mix);
    }
    return t;
}

bool nonincreasing(const std::vector<double>& v) {
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[i - 1] * (1.0 + 1e-9)) return false;
    return true;
}

const std::vector<double> kNsGrid{200, 500, 1000, 1500, 2000, 2500};

CriterionResult criterion_altitude_trend(const ConfigDoc& base) {
    CriterionResult r{4, "delay falls with constellation size; high shells win", true, ""};
    std::ostringstream d;
    std::vector<double> last;
    for (double a_km : {500.0, 800.0, 1000.0}) {
        const auto curve =
            delay_curve(base, a_km, kNsGrid, pipeline::NetworkMode::integrated);
        d << "a_s=" << a_km << "km: [";
        for (double t : curve) d << fmt(t) << " ";
        d << "]; ";
        if (!nonincreasing(curve)) {
            r.pass = false;
            d << "NOT nonincreasing; ";
        }
        last.push_back(curve.back());
    }
    const double lo = *std::min_element(last.begin(), last.end());
    const double hi = *std::max_element(last.begin(), last.end());
    d << "largest-grid delays 500/800/1000km: " << fmt(last[0]) << "/" << fmt(last[1])
      << "/" << fmt(last[2]);
    if (!(last[2] <= last[0] && last[2] <= last[1])) {
        r.pass = false;
        d << "; 1000 km curve not lowest";
    }
    if ((hi - lo) / lo > 0.25) {
        r.pass = false;
        d << "; altitude band wider than 25%";
    }
    r.detail = d.str();
    return r;
}

CriterionResult criterion_baselines(const ConfigDoc& base) {
    CriterionResult r{5, "integrated network beats satellite-only and cloud-only", true, ""};
    std::ostringstream d;
    const auto integrated =
        delay_curve(base, 500.0, kNsGrid, pipeline::NetworkMode::integrated);
    const auto sat_only = delay_curve(base, 500.0, kNsGrid, pipeline::NetworkMode::sat_only);
    const auto cs_only = delay_curve(base, 500.0, kNsGrid, pipeline::NetworkMode::cs_only);
    for (size_t i = 0; i < kNsGrid.size(); ++i) {
        const double best_pure = std::min(sat_only[i], cs_only[i]);
        d << "N=" << kNsGrid[i] << ": " << fmt(integrated[i]) << " vs sat "
          << fmt(sat_only[i]) << " cs " << fmt(cs_only[i]) << "; ";
        if (integrated[i] > best_pure * (1.0 + 1e-9)) r.pass = false;
    }
    r.detail = d.str();
    return r;
}

CriterionResult criterion_presets_and_density(const ConfigDoc& base) {
    CriterionResult r{6, "preset families improve with size; delay grows with UE density",
                      true, ""};
    std::ostringstream d;
    const std::vector<std::pair<std::string, std::string>> families = {
        {"starlink-1584", "starlink-12000"},
        {"oneweb-716", "oneweb-6372"},
        {"amazon-578", "amazon-3236"},
    };
    for (const auto& [small, big] : families) {
        const auto& ps = sweep::find_preset(small);
        const auto& pb = sweep::find_preset(big);
        auto eval_at = [&](const sweep::ConstellationPreset& p) {
            const Scenario sc = scenario_overridden(
                base, {"constellation.altitude_km=" + fmt(p.altitude_km),
                       "constellation.n_sats=" + fmt(static_cast<double>(p.n_sats))});
            return pipeline::evaluate(sc).t_avg_mix;
        };
        const double t_small = eval_at(ps), t_big = eval_at(pb);
        d << small << " " << fmt(t_small) << " -> " << big << " " << fmt(t_big) << "; ";
        if (t_big > t_small * (1.0 + 1e-9)) r.pass = false;
    }

    std::vector<double> by_density;
    for (double lu : {15.0, 30.0, 45.0, 60.0, 75.0}) {
        const Scenario sc =
            scenario_overridden(base, {"link.lambda_u_per_km2=" + fmt(lu)});
        by_density.push_back(pipeline::evaluate(sc).t_avg_mix);
    }
    d << "delay vs lambda_u: [";
    for (double t : by_density) d << fmt(t) << " ";
    d << "]";
    for (size_t i = 1; i < by_density.size(); ++i)
        if (by_density[i] < by_density[i - 1] * (1.0 - 1e-9)) {
            r.pass = false;
            d << "; NOT nondecreasing";
            break;
        }
    r.detail = d.str();
    return r;
}

CriterionResult criterion_distributions(const ConfigDoc& base, int threads) {
    (void)threads;
    CriterionResult r{7, "distance distributions and fading sampler validity", true, ""};
    std::ostringstream d;
    const numerics::QuadratureSpec quad;

    for (double a_km : {500.0, 1000.0}) {
        const Scenario sc = scenario_overridden(
            base, {"constellation.altitude_km=" + fmt(a_km)});
        const auto h = geometry::horizon(sc.geom);
        if (std::abs(h.d_max_down - h.d_max_up) > 1e-9 * h.d_max_down) {
            r.pass = false;
            d << "d_max identity broken at " << a_km << "km; ";
        }
        for (double n : {1.0, 10.0, 250.0}) {
            // monotone, bounded CDF and pdf/CDF consistency for the
            // nearest-satellite law
            double prev = -1.0;
            bool mono = true, bounded = true;
            for (int k = 0; k <= 200; ++k) {
                const double x = 0.5 * sc.geom.a_s +
                                 (1.2 * h.d_max_down - 0.5 * sc.geom.a_s) * k / 200.0;
                const double f = geometry::contact_cdf_nearest_sat(x, n, sc.geom);
                if (f < prev - 1e-12) mono = false;
                if (f < 0.0 || f > 1.0) bounded = false;
                prev = f;
            }
            const double mass = numerics::integrate(
                [&](double x) { return geometry::contact_pdf_nearest_sat(x, n, sc.geom); },
                sc.geom.a_s, h.d_max_down, quad);
            const double expect =
                geometry::contact_cdf_nearest_sat(h.d_max_down, n, sc.geom);
            if (!mono || !bounded || std::abs(mass - expect) > 1e-8) {
                r.pass = false;
                d << "nearest-sat law fails at a_s=" << a_km << "km n=" << n << " (mass gap "
                  << fmt(std::abs(mass - expect)) << "); ";
            }
            // branch continuity at the support edges; the probe step sits far
            // below the density scale so a real jump would dominate
            const double eps = 1e-4;
            const double at_as = geometry::contact_cdf_nearest_sat(sc.geom.a_s + eps, n,
                                                                   sc.geom) -
                                 geometry::contact_cdf_nearest_sat(sc.geom.a_s - eps, n,
                                                                   sc.geom);
            const double at_dmax =
                geometry::contact_cdf_nearest_sat(h.d_max_down + eps, n, sc.geom) -
                geometry::contact_cdf_nearest_sat(h.d_max_down - eps, n, sc.geom);
            if (std::abs(at_as) > 1e-9 || std::abs(at_dmax) > 1e-9) {
                r.pass = false;
                d << "branch discontinuity a_s=" << a_km << "km n=" << n << "; ";
            }
        }
        // serving-satellite uplink law
        const double mass_up = numerics::integrate(
            [&](double x) { return geometry::contact_pdf_serving_sat_uplink(x, sc.geom); },
            sc.geom.a_s, h.d_max_up, quad);
        if (std::abs(mass_up - 1.0) > 1e-8) {
            r.pass = false;
            d << "uplink law mass " << fmt(mass_up) << " at " << a_km << "km; ";
        }
    }
    {
        const Scenario sc = params::from_config(base);
        const double mass_cs = numerics::integrate(
            [&](double x) { return geometry::nearest_cs_pdf(x, sc.sys.lambda_c); }, 0.0,
            numerics::kInf, quad);
        if (std::abs(mass_cs - 1.0) > 1e-8) {
            r.pass = false;
            d << "nearest-CS law mass " << fmt(mass_cs) << "; ";
        }

        // shadowed-Rician sampler against the series CDF
        const long long n = 1000000;
        std::vector<double> samples(n);
        rng::Stream stream(20250815ULL);
        for (auto& s : samples) s = channel::sample_sr_power(sc.sys.sr, stream);
        const double ks = montecarlo::ks_distance(
            samples, [&](double t) { return numerics::sr_power_cdf(t, sc.sys.sr); });
        d << "SR sampler KS " << fmt(ks) << " vs band " << fmt(montecarlo::ks_band_95(n));
        if (ks > montecarlo::ks_band_95(n)) r.pass = false;
    }
    r.detail = d.str();
    return r;
}

CriterionResult criterion_determinism(const ConfigDoc& base) {
    CriterionResult r{8, "seeded compare runs are byte-identical across thread counts",
                      true, ""};
    auto run_with = [&](int threads) {
        params::ConfigDoc doc = base;
        doc.apply_override("sim.trials=20000");
        std::ostringstream out;
        sweep::SweepSpec spec{"n_sats", {500.0, 1000.0}, sweep::Mode::compare};
        sweep::run_sweep(doc, spec, out, threads);
        return out.str();
    };
    const std::string a1 = run_with(1);
    const std::string a2 = run_with(1);
    const std::string b1 = run_with(8);
    const std::string b2 = run_with(8);
    if (a1 != a2 || b1 != b2 || a1 != b1) r.pass = false;
    r.detail = "csv bytes: repeat@1thread " + std::string(a1 == a2 ? "equal" : "DIFFER") +
               ", repeat@8threads " + std::string(b1 == b2 ? "equal" : "DIFFER") +
               ", 1vs8 " + std::string(a1 == b1 ? "equal" : "DIFFER");
    return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::ostream& out, int threads) {
    const ConfigDoc base = default_config();
    std::vector<CriterionResult> results;

    const long long trials = 1000000;
    const SimBundle bundle = table_point_simulation(base, trials, threads);

    results.push_back(criterion_coverage(bundle, trials));
    results.push_back(criterion_association(base, bundle, trials));
    results.push_back(criterion_queue_oracles());
    results.push_back(criterion_altitude_trend(base));
    results.push_back(criterion_baselines(base));
    results.push_back(criterion_presets_and_density(base));
    results.push_back(criterion_distributions(base, threads));
    results.push_back(criterion_determinism(base));

    for (const auto& r : results)
        out << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << ": " << r.name
            << "\n        " << r.detail << "\n";
    return results;
}

}  // namespace leomec::validation
