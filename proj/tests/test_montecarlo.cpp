#include <doctest.h>

#include <cmath>

#include "leomec/geometry.hpp"
#include "leomec/montecarlo.hpp"
#include "leomec/validation.hpp"

using namespace leomec;

TEST_SUITE_BEGIN("montecarlo");

TEST_CASE("constellation sampling is area-correct") {
    const auto sc = validation::default_scenario();
    rng::Stream stream(31337ULL);
    const std::vector<double> q{0.25, 0.25, 0.25, 0.25};

    const long long n = 1000000;
    double z_sum = 0.0, z_sq = 0.0;
    long long in_cap = 0;
    std::vector<long long> type_counts(4, 0);
    const double cos_tc = sc.geom.r_e / sc.geom.r_s;
    for (long long done = 0; done < n;) {
        const auto sats = montecarlo::sample_constellation(1000, sc.geom, q, stream);
        for (const auto& s : sats) {
            z_sum += s.z;
            z_sq += s.z * s.z;
            if (s.z / sc.geom.r_s >= cos_tc) ++in_cap;
            ++type_counts[s.type];
            // points lie on the shell
            const double r = std::sqrt(s.x * s.x + s.y * s.y + s.z * s.z);
            if (done < 1000) CHECK(r == doctest::Approx(sc.geom.r_s).epsilon(1e-12));
            ++done;
        }
    }
    const double z_mean = z_sum / n;
    const double z_se = std::sqrt((z_sq / n - z_mean * z_mean) / n);
    CHECK(std::abs(z_mean) < 3.0 * z_se);

    const double cap = 0.5 * (1.0 - cos_tc);
    const double cap_se = std::sqrt(cap * (1.0 - cap) / n);
    CHECK(std::abs(static_cast<double>(in_cap) / n - cap) < 3.0 * cap_se);

    for (long long c : type_counts) {
        const double se = std::sqrt(0.25 * 0.75 / n);
        CHECK(std::abs(static_cast<double>(c) / n - 0.25) < 3.0 * se);
    }
}

TEST_CASE("nearest-satellite distances from sampled constellations match the law") {
    const auto sc = validation::default_scenario();
    rng::Stream stream(555ULL);
    const std::vector<double> q{1.0};

    const int n_constellations = 100000;
    const int n_sats = 1000;
    std::vector<double> nearest;
    nearest.reserve(n_constellations);
    long long within_1000km = 0;
    for (int c = 0; c < n_constellations; ++c) {
        double best = std::numeric_limits<double>::infinity();
        for (int s = 0; s < n_sats; ++s) {
            const double z = stream.uniform(-sc.geom.r_s, sc.geom.r_s);
            const double d2 = sc.geom.r_e * sc.geom.r_e + sc.geom.r_s * sc.geom.r_s -
                              2.0 * sc.geom.r_e * z;
            best = std::min(best, d2);
        }
        const double d = std::sqrt(best);
        nearest.push_back(d);
        if (d <= 1000e3) ++within_1000km;
    }

    // point check against the closed form at 1000 km
    const double ref = geometry::contact_cdf_nearest_sat(1000e3, n_sats, sc.geom);
    const double se = std::sqrt(ref * (1.0 - ref) / n_constellations);
    CHECK(std::abs(static_cast<double>(within_1000km) / n_constellations - ref) <
          3.0 * se);

    // whole-distribution check (every constellation has a visible satellite
    // at this size, so the law is a proper CDF here)
    const double ks = montecarlo::ks_distance(nearest, [&](double x) {
        return geometry::contact_cdf_nearest_sat(x, n_sats, sc.geom);
    });
    CHECK(ks < montecarlo::ks_band_95(n_constellations));
}

TEST_CASE("uplink serving-satellite law from conditioned single draws") {
    const auto sc = validation::default_scenario();
    rng::Stream stream(808ULL);
    const double cos_tc = sc.geom.r_e / sc.geom.r_s;
    std::vector<double> sample;
    while (sample.size() < 200000) {
        const double u = stream.uniform(-1.0, 1.0);
        if (u < cos_tc) continue;  // condition on visibility
        sample.push_back(std::sqrt(sc.geom.r_e * sc.geom.r_e +
                                   sc.geom.r_s * sc.geom.r_s -
                                   2.0 * sc.geom.r_e * sc.geom.r_s * u));
    }
    const double ks = montecarlo::ks_distance(sample, [&](double x) {
        return geometry::contact_cdf_serving_sat_uplink(x, sc.geom);
    });
    CHECK(ks < montecarlo::ks_band_95(static_cast<long long>(sample.size())));
}

TEST_CASE("ground process sampling") {
    rng::Stream stream(2468ULL);
    const double lambda = 1e-6;  // 1 per km^2
    const double r = 10e3;
    const double expected = lambda * std::numbers::pi * r * r;  // ~314.16

    double count_sum = 0.0;
    std::vector<double> nearest;
    for (int t = 0; t < 10000; ++t) {
        const auto pts = montecarlo::sample_ground_ppp(lambda, r, stream);
        count_sum += static_cast<double>(pts.size());
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : pts) best = std::min(best, std::hypot(p.x, p.y));
        if (!pts.empty()) nearest.push_back(best);
    }
    const double mean = count_sum / 10000.0;
    const double se = std::sqrt(expected / 10000.0);  // Poisson variance = mean
    CHECK(std::abs(mean - expected) < 3.0 * se);

    // nearest-distance law, conditioned on nonempty (empty is ~1e-137 here)
    const double ks = montecarlo::ks_distance(
        nearest, [&](double x) { return geometry::nearest_cs_cdf(x, lambda); });
    CHECK(ks < montecarlo::ks_band_95(static_cast<long long>(nearest.size())));

    // near-zero density leaves the disk empty almost surely
    rng::Stream s2(97ULL);
    long long empties = 0;
    for (int t = 0; t < 1000; ++t)
        empties += montecarlo::sample_ground_ppp(1e-16, 1e3, s2).empty();
    CHECK(empties == 1000);
}

TEST_CASE("estimate intervals") {
    const auto all_ones = montecarlo::estimate_binomial(100, 100);
    CHECK(all_ones.mean == 1.0);
    // Wilson halfwidth at p=1: (z^2/2n) / (1 + z^2/n)
    const double z = 1.959963984540054;
    const double expect = (z * z / 200.0) / (1.0 + z * z / 100.0);
    CHECK(all_ones.ci_half == doctest::Approx(expect).epsilon(1e-12));

    const auto half = montecarlo::estimate_binomial(500000, 1000000);
    CHECK(half.ci_half == doctest::Approx(0.00097998).epsilon(2e-3));

    const auto m = montecarlo::estimate_mean(50.0, 30.0, 100);
    CHECK(m.mean == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m.ci_half > 0.0);
}

TEST_CASE("trial outcomes respect the association rule") {
    auto sc = validation::default_scenario();

    SUBCASE("overwhelming satellite bias wins whenever a satellite is visible") {
        sc.sys.bias_ratio = 1e30;
        for (int t = 0; t < 200; ++t) {
            rng::Stream stream = rng::Stream::substream(1001ULL, t);
            const auto o = montecarlo::run_trial(sc, 0, 1.0, stream);
            if (o.sat_visible) CHECK(o.assoc_tier == montecarlo::Tier::sat);
        }
    }
    SUBCASE("links carry positive SNR whenever they exist") {
        for (int t = 0; t < 200; ++t) {
            rng::Stream stream = rng::Stream::substream(1002ULL, t);
            const auto o = montecarlo::run_trial(sc, 0, 1.0, stream);
            CHECK(o.snr_cs_down > 0.0);  // auto disk radius never leaves it empty
            CHECK(o.snr_cs_up > 0.0);
            if (o.sat_visible) {
                CHECK(o.snr_sat_down > 0.0);
                CHECK(o.d_sat >= sc.geom.a_s);
                CHECK(o.d_sat <= geometry::horizon(sc.geom).d_max_down * (1 + 1e-12));
                CHECK(o.d_cs > 0.0);
            }
        }
    }
    SUBCASE("empty networks are redrawn and eventually abort") {
        sc.sim.disk_radius = 100.0;  // ~3e-5 expected cloud servers
        auto tiny = sc;
        tiny.geom.n_sats = 1;
        long long redraws = 0, aborts = 0;
        for (int t = 0; t < 50; ++t) {
            rng::Stream stream = rng::Stream::substream(1003ULL, t);
            try {
                redraws += montecarlo::run_trial(tiny, 0, 1e-9, stream).redraws;
            } catch (const std::runtime_error&) {
                ++aborts;
            }
        }
        CHECK(redraws + aborts > 0);
        CHECK(aborts > 0);
    }
}

TEST_CASE("simulation is deterministic across thread counts") {
    auto sc = validation::default_scenario();
    const auto a = montecarlo::simulate_task(sc, 0, 0.95, 20000, 7777ULL, 1);
    const auto b = montecarlo::simulate_task(sc, 0, 0.95, 20000, 7777ULL, 4);
    const auto c = montecarlo::simulate_task(sc, 0, 0.95, 20000, 7777ULL, 4);
    CHECK(a.counts.assoc_sat == b.counts.assoc_sat);
    CHECK(a.counts.cov_down_sat == b.counts.cov_down_sat);
    CHECK(a.counts.cov_up_sat == b.counts.cov_up_sat);
    CHECK(a.counts.cov_down_cs == b.counts.cov_down_cs);
    CHECK(a.counts.cov_up_cs == b.counts.cov_up_cs);
    CHECK(a.counts.sat_visible == b.counts.sat_visible);
    CHECK(b.counts.assoc_sat == c.counts.assoc_sat);
    CHECK(a.assoc_sat.mean == b.assoc_sat.mean);
}

TEST_CASE("doubling the ground disk does not move the estimates") {
    auto sc = validation::default_scenario();
    const auto a = montecarlo::simulate_task(sc, 0, 0.95, 50000, 3131ULL, 0);
    auto wide = sc;
    wide.sim.disk_radius = 2.0 * montecarlo::effective_disk_radius(sc);
    const auto b = montecarlo::simulate_task(wide, 0, 0.95, 50000, 3131ULL, 0);
    CHECK(std::abs(a.assoc_sat.mean - b.assoc_sat.mean) <
          a.assoc_sat.ci_half + b.assoc_sat.ci_half);
    CHECK(std::abs(a.cov_down_cs.mean - b.cov_down_cs.mean) <
          a.cov_down_cs.ci_half + b.cov_down_cs.ci_half);
}

TEST_SUITE_END();
