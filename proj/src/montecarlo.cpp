#include "leomec/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "leomec/channel.hpp"
#include "leomec/geometry.hpp"

namespace leomec::montecarlo {

namespace {
constexpr double kPi = std::numbers::pi;

int pick_type(const std::vector<double>& q, double u) {
    double acc = 0.0;
    for (size_t i = 0; i < q.size(); ++i) {
        acc += q[i];
        if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(q.size()) - 1;
}

int pick_task_type(const std::vector<params::TaskSpec>& tasks, double u) {
    double acc = 0.0;
    for (size_t i = 0; i < tasks.size(); ++i) {
        acc += tasks[i].q;
        if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(tasks.size()) - 1;
}
}  // namespace

std::vector<SatellitePoint> sample_constellation(int n_sats,
                                                 const ConstellationGeometry& geom,
                                                 const std::vector<double>& q,
                                                 rng::Stream& stream) {
    std::vector<SatellitePoint> sats(n_sats);
    for (auto& s : sats) {
        const double z = stream.uniform(-geom.r_s, geom.r_s);
        const double phi = stream.uniform(0.0, 2.0 * kPi);
        const double rho = std::sqrt(std::max(0.0, geom.r_s * geom.r_s - z * z));
        s.x = rho * std::cos(phi);
        s.y = rho * std::sin(phi);
        s.z = z;
        s.type = pick_type(q, stream.u01());
    }
    return sats;
}

std::vector<PlanarPoint> sample_ground_ppp(double lambda, double r, rng::Stream& stream) {
    if (!(lambda > 0.0) || !(r > 0.0))
        throw std::domain_error("sample_ground_ppp: lambda and r must be > 0");
    const long long count = stream.poisson(lambda * kPi * r * r);
    std::vector<PlanarPoint> pts(count);
    for (auto& p : pts) {
        const double rad = r * std::sqrt(stream.u01());
        const double ang = stream.uniform(0.0, 2.0 * kPi);
        p.x = rad * std::cos(ang);
        p.y = rad * std::sin(ang);
    }
    return pts;
}

double effective_disk_radius(const Scenario& sc) {
    if (sc.sim.disk_radius > 0.0) return sc.sim.disk_radius;
    // exp(-lambda_c pi R^2) < 1e-12 so truncating the CS process is harmless
    return std::sqrt(30.0 / (sc.sys.lambda_c * kPi));
}

TrialOutcome run_trial(const Scenario& sc, int task, double p_ofld, rng::Stream& stream) {
    const auto& sys = sc.sys;
    const auto& geom = sc.geom;
    const double cos_tc = geom.r_e / geom.r_s;
    const double disk_r = effective_disk_radius(sc);

    TrialOutcome out;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 10)
            throw std::runtime_error("run_trial: empty-network redraw limit exceeded");

        // Satellite draws: only the polar angle relative to the UE zenith
        // matters for distances, so azimuths are integrated out here.
        // Distribution matches sample_constellation exactly.
        double best_cos = -2.0;
        int visible_usable = 0;
        double up_cos = 0.0;
        for (int s = 0; s < geom.n_sats; ++s) {
            const double cos_phi = stream.uniform(-1.0, 1.0);
            const int type = pick_task_type(sys.tasks, stream.u01());
            if (type != task) continue;
            if (stream.u01() >= p_ofld) continue;  // buffer full, not offloadable
            if (cos_phi < cos_tc) continue;        // below horizon
            ++visible_usable;
            if (cos_phi > best_cos) best_cos = cos_phi;
            // reservoir-select one visible usable satellite uniformly
            if (stream.u01() * visible_usable < 1.0) up_cos = cos_phi;
        }

        const auto cs_field = sample_ground_ppp(sys.lambda_c, disk_r, stream);
        if (visible_usable == 0 && cs_field.empty()) {
            ++out.redraws;
            continue;
        }

        auto slant = [&](double cos_phi) {
            return std::sqrt(geom.r_e * geom.r_e + geom.r_s * geom.r_s -
                             2.0 * geom.r_e * geom.r_s * cos_phi);
        };

        out.sat_visible = visible_usable > 0;
        if (out.sat_visible) {
            out.d_sat = slant(best_cos);
            out.d_sat_up = slant(up_cos);
        }
        double best_cs = std::numeric_limits<double>::infinity();
        for (const auto& p : cs_field) best_cs = std::min(best_cs, std::hypot(p.x, p.y));
        out.d_cs = best_cs;

        // biased maximum average power rule
        const double c = channel::kSpeedOfLight;
        double sat_score = -1.0;
        if (out.sat_visible) {
            const double g = c / (4.0 * kPi * sys.f_s * out.d_sat);
            sat_score = sys.p_s * sys.bias_ratio * g * g;
        }
        double cs_score = -1.0;
        if (!cs_field.empty())
            cs_score = sys.p_c * std::pow(c / (4.0 * kPi * sys.f_c * out.d_cs), sys.alpha);
        out.assoc_tier = sat_score >= cs_score ? Tier::sat : Tier::cs;

        // fading and SNR on every link that exists in this draw
        const double h_down = channel::sample_sr_power(sys.sr, stream);
        const double h_up = channel::sample_sr_power(sys.sr, stream);
        const double g_down = stream.exponential();
        const double g_up = stream.exponential();
        if (out.sat_visible) {
            const double gain_d = std::pow(c / (4.0 * kPi * sys.f_s * out.d_sat), 2.0);
            const double gain_u = std::pow(c / (4.0 * kPi * sys.f_s * out.d_sat_up), 2.0);
            out.snr_sat_down = sys.p_s * gain_d * h_down / sys.sigma2_u;
            out.snr_sat_up = sys.p_u * gain_u * h_up / sys.sigma2_s;
        }
        if (!cs_field.empty()) {
            const double gain = std::pow(c / (4.0 * kPi * sys.f_c * out.d_cs), sys.alpha);
            out.snr_cs_down = sys.p_c * gain * g_down / sys.sigma2_u;
            out.snr_cs_up = sys.p_u * gain * g_up / sys.sigma2_c;
        }
        return out;
    }
}

Estimate estimate_mean(double sum, double sum_sq, long long n) {
    Estimate e;
    if (n <= 0) return e;
    e.mean = sum / n;
    if (n >= 2) {
        const double var = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1));
        e.ci_half = 1.959963984540054 * std::sqrt(var / n);
    }
    return e;
}

Estimate estimate_binomial(long long successes, long long n) {
    Estimate e;
    if (n <= 0) return e;
    const double z = 1.959963984540054;
    const double p = static_cast<double>(successes) / n;
    const double z2n = z * z / n;
    e.mean = p;
    e.ci_half = z * std::sqrt(p * (1.0 - p) / n + z2n / (4.0 * n)) / (1.0 + z2n);
    return e;
}

TaskSimCounts& TaskSimCounts::operator+=(const TaskSimCounts& o) {
    trials += o.trials;
    redraws += o.redraws;
    sat_visible += o.sat_visible;
    assoc_sat += o.assoc_sat;
    cov_down_sat += o.cov_down_sat;
    cov_up_sat += o.cov_up_sat;
    cov_down_cs += o.cov_down_cs;
    cov_up_cs += o.cov_up_cs;
    return *this;
}

TaskSimEstimates simulate_task(const Scenario& sc, int task, double p_ofld,
                               long long trials, std::uint64_t seed, int threads) {
    constexpr long long kChunk = 8192;
    const long long n_chunks = (trials + kChunk - 1) / kChunk;
    std::vector<TaskSimCounts> partials(n_chunks);

    const std::uint64_t task_seed = rng::mix64(seed ^ rng::mix64(task + 1));
    const double tau = sc.sys.tau;

    auto worker_body = [&](long long chunk) {
        TaskSimCounts c;
        const long long lo = chunk * kChunk;
        const long long hi = std::min(trials, lo + kChunk);
        for (long long t = lo; t < hi; ++t) {
            rng::Stream stream = rng::Stream::substream(task_seed, static_cast<std::uint64_t>(t));
            const TrialOutcome o = run_trial(sc, task, p_ofld, stream);
            ++c.trials;
            c.redraws += o.redraws;
            c.sat_visible += o.sat_visible;
            c.assoc_sat += o.assoc_tier == Tier::sat;
            c.cov_down_sat += o.sat_visible && o.snr_sat_down > tau;
            c.cov_up_sat += o.sat_visible && o.snr_sat_up > tau;
            c.cov_down_cs += o.snr_cs_down > tau;
            c.cov_up_cs += o.snr_cs_up > tau;
        }
        partials[chunk] = c;
    };

    int n_threads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
    if (n_threads == 1 || n_chunks == 1) {
        for (long long ch = 0; ch < n_chunks; ++ch) worker_body(ch);
    } else {
        std::atomic<long long> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < n_threads; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const long long ch = next.fetch_add(1);
                    if (ch >= n_chunks) return;
                    worker_body(ch);
                }
            });
        for (auto& th : pool) th.join();
    }

    TaskSimEstimates est;
    for (const auto& p : partials) est.counts += p;  // fixed chunk order
    const long long n = est.counts.trials;
    est.assoc_sat = estimate_binomial(est.counts.assoc_sat, n);
    est.cov_down_sat = estimate_binomial(est.counts.cov_down_sat, n);
    est.cov_up_sat = estimate_binomial(est.counts.cov_up_sat, n);
    est.cov_down_cs = estimate_binomial(est.counts.cov_down_cs, n);
    est.cov_up_cs = estimate_binomial(est.counts.cov_up_cs, n);
    est.visibility = estimate_binomial(est.counts.sat_visible, n);
    return est;
}

void dump_trials(const Scenario& sc, int task, double p_ofld, long long count,
                 std::uint64_t seed, std::ostream& out) {
    const std::uint64_t task_seed = rng::mix64(seed ^ rng::mix64(task + 1));
    out << "trial\ttask\tsat_visible\td_sat_m\td_sat_up_m\td_cs_m\tsnr_sat_down\t"
           "snr_sat_up\tsnr_cs_down\tsnr_cs_up\tassoc\tredraws\n";
    for (long long t = 0; t < count; ++t) {
        rng::Stream stream = rng::Stream::substream(task_seed, static_cast<std::uint64_t>(t));
        const TrialOutcome o = run_trial(sc, task, p_ofld, stream);
        out << t << '\t' << (task + 1) << '\t' << (o.sat_visible ? 1 : 0) << '\t' << o.d_sat
            << '\t' << o.d_sat_up << '\t' << o.d_cs << '\t' << o.snr_sat_down << '\t'
            << o.snr_sat_up << '\t' << o.snr_cs_down << '\t' << o.snr_cs_up << '\t'
            << (o.assoc_tier == Tier::sat ? "sat" : "cs") << '\t' << o.redraws << '\n';
    }
}

double ks_distance(std::vector<double>& samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs((i + 1) / n - f));
        d = std::max(d, std::abs(f - i / n));
    }
    return d;
}

double ks_band_95(long long n) { return 1.358 / std::sqrt(static_cast<double>(n)); }

}  // namespace leomec::montecarlo
