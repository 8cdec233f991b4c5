#include <doctest.h>

#include <cmath>

#include "leomec/association.hpp"
#include "leomec/coverage.hpp"
#include "leomec/queueing.hpp"
#include "leomec/validation.hpp"

using namespace leomec;

TEST_SUITE_BEGIN("queueing");

TEST_CASE("offload probability limits") {
    CHECK(queueing::offload_probability(0.0, 2) == 1.0);

    // critical load: the chain is uniform over its states
    CHECK(queueing::offload_probability(1.0, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    // continuity across the removable singularity at rho = 1
    const double at_one = queueing::offload_probability(1.0, 5);
    CHECK(std::abs(queueing::offload_probability(1.0 + 1e-6, 5) - at_one) < 1e-5);
    CHECK(std::abs(queueing::offload_probability(1.0 - 1e-6, 5) - at_one) < 1e-5);

    // overload: direct evaluation of the stationary form, plus chain oracle
    CHECK(queueing::offload_probability(100.0, 2) ==
          doctest::Approx(0.009999009999010045).epsilon(1e-12));
    const auto chain = validation::mm1n_chain_oracle(100.0, 1.0, 2);
    CHECK(std::abs(queueing::offload_probability(100.0, 2) - (1.0 - chain.blocking)) <
          1e-12);

    // extreme loads stay finite and in (0, 1]
    CHECK(queueing::offload_probability(1e12, 5) > 0.0);
    CHECK(queueing::offload_probability(1e12, 5) < 1e-11);
}

TEST_CASE("finite-buffer queue matches the balance-equation oracle") {
    for (int buffer : {1, 2, 5}) {
        for (double rho : {0.1, 0.5, 1.0, 2.0}) {
            const double mu = 2.31;
            const double lambda = rho * mu;
            const auto chain = validation::mm1n_chain_oracle(lambda, mu, buffer);
            CHECK(std::abs(queueing::mm1n_blocking(rho, buffer) - chain.blocking) < 1e-10);
            CHECK(std::abs(queueing::mm1n_mean_queue(rho, buffer) - chain.mean_in_system) <
                  1e-10);
            CHECK(std::abs(queueing::sat_response_time(lambda, mu, buffer) -
                           chain.response_time) < 1e-10 * chain.response_time);
        }
    }
    // empty system serves at the bare service time
    CHECK(queueing::sat_response_time(0.0, 4.0, 2) == doctest::Approx(0.25).epsilon(1e-15));
    // vanishing load approaches it smoothly
    CHECK(queueing::sat_response_time(1e-9, 4.0, 2) ==
          doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("multi-class mean response reduces to the single-queue closed form") {
    const double lambda = 0.7, mu = 1.3;
    const auto t = queueing::cs_response_times({lambda}, {mu});
    CHECK(t[0] == doctest::Approx(1.0 / (mu - lambda)).epsilon(1e-12));

    // vanishing arrivals leave the bare service time
    CHECK(queueing::cs_response_times({1e-15}, {mu})[0] ==
          doctest::Approx(1.0 / mu).epsilon(1e-9));

    // two symmetric classes equal one class at the doubled rate
    const auto sym = queueing::cs_response_times({0.3, 0.3}, {mu, mu});
    const auto merged = queueing::cs_response_times({0.6}, {mu});
    CHECK(sym[0] == doctest::Approx(merged[0]).epsilon(1e-12));
    CHECK(sym[1] == doctest::Approx(merged[0]).epsilon(1e-12));
}

TEST_CASE("multi-class mean response matches an event-driven simulation") {
    const std::vector<double> lambda{0.25, 0.35}, mu{1.4, 2.6};
    const auto pk = queueing::cs_response_times(lambda, mu);
    const auto des = validation::mg1_fifo_des(lambda, mu, 1000000, 99);
    for (size_t k = 0; k < pk.size(); ++k)
        CHECK(std::abs(pk[k] - des[k]) < 0.01 * pk[k]);
}

TEST_CASE("instability is reported with the utilization value") {
    try {
        queueing::cs_response_times({1.0, 0.5}, {1.0, 1.0});
        FAIL("expected StabilityError");
    } catch (const queueing::StabilityError& e) {
        CHECK(e.utilization == doctest::Approx(1.5).epsilon(1e-12));
    }
}

TEST_CASE("transmission times") {
    // coverage 1 and bandwidth*log2(1+tau) equal to the payload give 1 second
    CHECK(queueing::transmission_time(500.0, 1.0, 500.0, 1.0, "x") ==
          doctest::Approx(1.0).epsilon(1e-15));
    // halving coverage doubles the time
    CHECK(queueing::transmission_time(500.0, 0.5, 500.0, 1.0, "x") ==
          doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(queueing::transmission_time(500.0, 0.0, 500.0, 1.0, "x"),
                    queueing::StabilityError);
}

TEST_CASE("mean loads") {
    auto sc = validation::default_scenario();

    const auto idle = queueing::mean_loads(sc, 0, 0.0, 1.0);
    CHECK(idle.mean_ues_sat == 1.0);
    CHECK(idle.w_sat == sc.sys.bandwidth);

    // lambda_u * A_0 = lambda_c puts exactly one UE on the cloud server
    const double a0 = sc.sys.lambda_c / sc.sys.lambda_u;
    const auto one = queueing::mean_loads(sc, 0, 0.0, a0);
    CHECK(one.mean_ues_cs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(one.w_cs == doctest::Approx(sc.sys.bandwidth).epsilon(1e-12));

    // the satellite tier load uses the footprint-averaged density
    const auto load = queueing::mean_loads(sc, 0, 0.5, 0.5);
    const double expect =
        1.0 + 1.28 * (0.25 * sc.sys.lambda_u_sat()) * 0.5 / sc.lambda_s_type(0);
    CHECK(load.mean_ues_sat == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("average delay is a convex combination") {
    queueing::DelayBreakdown parts;
    parts.tx = {1.0, 1.0, 1.0, 1.0};
    parts.t_resp_cs = 1.0;
    parts.t_resp_sat = 1.0;
    CHECK(queueing::average_delay(0.4, 0.6, parts) == doctest::Approx(3.0).epsilon(1e-15));

    parts.t_resp_sat = 9.0;  // satellite side now sums to 11
    const double t = queueing::average_delay(0.25, 0.75, parts);
    CHECK(t >= 3.0);
    CHECK(t <= 11.0);
}

TEST_CASE("offload fixed point agrees with bisection and obeys limits") {
    const auto sc = validation::default_scenario();
    const int task = 0;
    const int n_type = sc.sats_per_type[task];

    // independent reconstruction of the cycle map from public pieces
    auto g = [&](double x) {
        const double n_eff = n_type * x;
        const double a_sat = association::assoc_prob_sat(n_eff, sc.sys, sc.geom);
        const double p_up = coverage::cov_up_sat(sc.sys.tau, n_eff, sc.sys, sc.geom);
        const double arrival = a_sat * (sc.sys.tasks[task].q * sc.sys.lambda_u_sat()) *
                               p_up / sc.lambda_s_type(task);
        const double mu = sc.sys.cap_sat / sc.sys.tasks[task].cycles;
        return queueing::offload_probability(arrival / mu, sc.sys.buffer_jobs);
    };

    const auto fp = queueing::solve_offload_probability(g);
    CHECK(fp.p_ofld > 0.0);
    CHECK(fp.p_ofld <= 1.0);
    CHECK(std::abs(g(fp.p_ofld) - fp.p_ofld) < 1e-8);

    // bisection oracle on the residual
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) - mid > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    CHECK(std::abs(fp.p_ofld - 0.5 * (lo + hi)) < 1e-8);

    // unloaded network: nothing ever blocks
    auto empty = sc;
    empty.sys.lambda_u = 1e-20;
    auto g_empty = [&](double x) {
        const double n_eff = n_type * x;
        const double a_sat = association::assoc_prob_sat(n_eff, empty.sys, empty.geom);
        const double p_up = coverage::cov_up_sat(empty.sys.tau, n_eff, empty.sys, empty.geom);
        const double arrival = a_sat * (empty.sys.tasks[task].q * empty.sys.lambda_u_sat()) *
                               p_up / empty.lambda_s_type(task);
        const double mu = empty.sys.cap_sat / empty.sys.tasks[task].cycles;
        return queueing::offload_probability(arrival / mu, empty.sys.buffer_jobs);
    };
    CHECK(queueing::solve_offload_probability(g_empty).p_ofld ==
          doctest::Approx(1.0).epsilon(1e-8));

    // infinitely fast satellite servers never block either
    auto fast = sc;
    fast.sys.cap_sat = 1e30;
    auto g_fast = [&](double x) {
        const double n_eff = n_type * x;
        const double a_sat = association::assoc_prob_sat(n_eff, fast.sys, fast.geom);
        const double arrival = a_sat * (fast.sys.tasks[task].q * fast.sys.lambda_u_sat()) /
                               fast.lambda_s_type(task);
        const double mu = fast.sys.cap_sat / fast.sys.tasks[task].cycles;
        return queueing::offload_probability(arrival / mu, fast.sys.buffer_jobs);
    };
    CHECK(queueing::solve_offload_probability(g_fast).p_ofld ==
          doctest::Approx(1.0).epsilon(1e-8));
}

TEST_SUITE_END();
