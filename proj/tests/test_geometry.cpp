#include <doctest.h>

#include <cmath>

#include "leomec/geometry.hpp"
#include "leomec/numerics.hpp"

using namespace leomec;
using params::make_geometry;

TEST_SUITE_BEGIN("geometry");

namespace {
const auto kLeo = make_geometry(6371e3, 500e3, 1000);
}

TEST_CASE("horizon quantities and the d_max identity") {
    const auto h = geometry::horizon(kLeo);
    CHECK(std::abs(h.d_max_down - h.d_max_up) < 1e-9 * h.d_max_down);
    CHECK(h.theta_c == doctest::Approx(0.38384819529001624).epsilon(1e-12));
    CHECK(h.cap_vis == doctest::Approx(0.03638480570513754).epsilon(1e-12));
    CHECK(h.theta_c > 0.0);
    CHECK(h.theta_c < std::numbers::pi / 2.0);
}

TEST_CASE("nearest-satellite contact CDF branches") {
    const auto h = geometry::horizon(kLeo);

    CHECK(geometry::contact_cdf_nearest_sat(0.5 * kLeo.a_s, 10, kLeo) == 0.0);

    // above the horizon distance the CDF is the visibility mass; for a
    // single satellite that is the visible cap share a_s / (2 r_s)
    CHECK(geometry::contact_cdf_nearest_sat(2.0 * h.d_max_down, 1, kLeo) ==
          doctest::Approx(0.03638480570513754).epsilon(1e-12));

    // frozen direct evaluation of the cap law at 1000 km for 1000 satellites
    CHECK(geometry::contact_cdf_nearest_sat(1000e3, 1000, kLeo) ==
          doctest::Approx(0.9863286423118871).epsilon(1e-12));

    // monotone in x, bounded, and monotone in the satellite count
    double prev = -1.0;
    for (int k = 0; k <= 300; ++k) {
        const double x = 0.4 * kLeo.a_s + (1.2 * h.d_max_down) * k / 300.0;
        const double f = geometry::contact_cdf_nearest_sat(x, 40, kLeo);
        CHECK(f >= prev - 1e-15);
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
        CHECK(geometry::contact_cdf_nearest_sat(x, 60, kLeo) >= f);
        prev = f;
    }

    // continuity at both branch points (probe step well below the slope scale)
    for (double n : {1.0, 25.0, 700.0}) {
        const double e1 = geometry::contact_cdf_nearest_sat(kLeo.a_s + 1e-4, n, kLeo) -
                          geometry::contact_cdf_nearest_sat(kLeo.a_s - 1e-4, n, kLeo);
        const double e2 =
            geometry::contact_cdf_nearest_sat(h.d_max_down + 1e-4, n, kLeo) -
            geometry::contact_cdf_nearest_sat(h.d_max_down - 1e-4, n, kLeo);
        CHECK(std::abs(e1) < 1e-9);
        CHECK(std::abs(e2) < 1e-9);
    }
}

TEST_CASE("pdf integrates to the CDF mass and matches finite differences") {
    const auto h = geometry::horizon(kLeo);
    for (double n : {1.0, 10.0, 100.0, 1000.0}) {
        const double mass = numerics::integrate(
            [&](double x) { return geometry::contact_pdf_nearest_sat(x, n, kLeo); },
            kLeo.a_s, h.d_max_down);
        CHECK(std::abs(mass - geometry::contact_cdf_nearest_sat(h.d_max_down, n, kLeo)) <
              1e-8);
    }
    CHECK(geometry::contact_pdf_nearest_sat(0.9 * kLeo.a_s, 10, kLeo) == 0.0);
    CHECK(geometry::contact_pdf_nearest_sat(1.01 * h.d_max_down, 10, kLeo) == 0.0);

    const double x0 = 900e3, dx = 10.0;
    for (double n : {5.0, 250.0}) {
        const double fd = (geometry::contact_cdf_nearest_sat(x0 + dx, n, kLeo) -
                           geometry::contact_cdf_nearest_sat(x0 - dx, n, kLeo)) /
                          (2.0 * dx);
        const double pdf = geometry::contact_pdf_nearest_sat(x0, n, kLeo);
        CHECK(std::abs(fd - pdf) < 1e-6 * pdf);
    }
}

TEST_CASE("serving-satellite uplink law") {
    const auto h = geometry::horizon(kLeo);
    CHECK(geometry::contact_cdf_serving_sat_uplink(kLeo.a_s, kLeo) == 0.0);
    CHECK(geometry::contact_cdf_serving_sat_uplink(h.d_max_up, kLeo) == 1.0);
    CHECK(geometry::contact_cdf_serving_sat_uplink(h.d_max_up * 0.9999, kLeo) ==
          doctest::Approx(1.0).epsilon(1e-3));

    const double mass = numerics::integrate(
        [&](double x) { return geometry::contact_pdf_serving_sat_uplink(x, kLeo); },
        kLeo.a_s, h.d_max_up);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));

    double prev = -1.0;
    for (int k = 0; k <= 200; ++k) {
        const double x = kLeo.a_s + (h.d_max_up - kLeo.a_s) * k / 200.0;
        const double f = geometry::contact_cdf_serving_sat_uplink(x, kLeo);
        CHECK(f >= prev - 1e-15);
        prev = f;
    }
}

TEST_CASE("nearest cloud-server law") {
    const double lambda = 1e-6;  // 1 per km^2 in SI
    CHECK(geometry::nearest_cs_cdf(0.0, lambda) == 0.0);
    const double x_half = std::sqrt(std::log(2.0) / (lambda * std::numbers::pi));
    CHECK(geometry::nearest_cs_cdf(x_half, lambda) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(geometry::nearest_cs_cdf(1000.0, lambda) ==
          doctest::Approx(0.9567860817362277).epsilon(1e-12));
    CHECK_THROWS_AS(geometry::nearest_cs_cdf(1.0, 0.0), std::domain_error);
    const double mass = numerics::integrate(
        [&](double x) { return geometry::nearest_cs_pdf(x, lambda); }, 0.0, numerics::kInf);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("visibility weight keeps the n-1 exponent") {
    CHECK(geometry::visibility_weight(1.0, kLeo) == 0.0);
    CHECK(geometry::visibility_weight(1000.0, kLeo) ==
          doctest::Approx(0.9999999999999999).epsilon(1e-12));
    // direct evaluation of the printed expression
    const double cos_tc = kLeo.r_e / kLeo.r_s;
    for (double n : {2.0, 10.0, 333.0})
        CHECK(geometry::visibility_weight(n, kLeo) ==
              doctest::Approx(1.0 - std::pow(0.5 * (1.0 + cos_tc), n - 1.0)).epsilon(1e-15));
    // monotone in n
    CHECK(geometry::visibility_weight(3.0, kLeo) > geometry::visibility_weight(2.0, kLeo));
}

TEST_SUITE_END();
