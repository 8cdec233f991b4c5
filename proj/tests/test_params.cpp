#include <doctest.h>

#include <cmath>
#include <string>

#include "leomec/params.hpp"
#include "leomec/validation.hpp"

using namespace leomec;
using params::ConfigDoc;
using params::ConfigError;

TEST_SUITE_BEGIN("params");

TEST_CASE("dBm and dB conversions") {
    CHECK(params::dbm_to_watts(23.0) == doctest::Approx(0.19952623149688797).epsilon(1e-12));
    CHECK(params::db_to_linear(0.0) == 1.0);
    CHECK(params::dbm_to_watts(30.0) == doctest::Approx(1.0).epsilon(1e-12));

    for (double dbm : {-174.0, -98.0, 0.0, 23.0, 45.0, 60.0}) {
        CHECK(params::watts_to_dbm(params::dbm_to_watts(dbm)) ==
              doctest::Approx(dbm).epsilon(1e-12));
    }
}

TEST_CASE("default scenario parses to linear SI units") {
    const auto sc = validation::default_scenario();
    CHECK(sc.sys.p_u == doctest::Approx(0.199526231).epsilon(1e-8));
    CHECK(sc.sys.p_s == doctest::Approx(1000.0).epsilon(1e-12));
    CHECK(sc.sys.tau == 1.0);
    CHECK(sc.sys.lambda_c == doctest::Approx(1e-6).epsilon(1e-12));
    CHECK(sc.sys.lambda_u == doctest::Approx(45e-6).epsilon(1e-12));
    CHECK(sc.geom.r_s == doctest::Approx(6871e3).epsilon(1e-12));
    CHECK(sc.sys.tasks.size() == 4);
    CHECK(sc.sats_per_type == std::vector<int>{250, 250, 250, 250});
}

TEST_CASE("validation rejects bad documents naming the offending key") {
    auto base = validation::default_config();

    SUBCASE("q sum violation") {
        auto doc = base;
        doc.apply_override("tasks.4.q=0.26");
        CHECK_THROWS_WITH_AS(params::from_config(doc),
                             doctest::Contains("q_i sum != 1"), ConfigError);
    }
    SUBCASE("missing key") {
        auto doc = base;
        doc.values.erase("link.bandwidth_hz");
        CHECK_THROWS_WITH_AS(params::from_config(doc),
                             doctest::Contains("link.bandwidth_hz"), ConfigError);
    }
    SUBCASE("non-positive value") {
        auto doc = base;
        doc.apply_override("link.p_s_dbm=-1e9");  // underflows to 0 W
        CHECK_THROWS_WITH_AS(params::from_config(doc), doctest::Contains("link.p_s_dbm"),
                             ConfigError);
    }
    SUBCASE("alpha must exceed 2") {
        auto doc = base;
        doc.apply_override("link.alpha=2.0");
        CHECK_THROWS_AS(params::from_config(doc), ConfigError);
    }
    SUBCASE("zero satellites rejected") {
        auto doc = base;
        doc.apply_override("constellation.n_sats=0");
        CHECK_THROWS_WITH_AS(params::from_config(doc), doctest::Contains("n_sats"),
                             ConfigError);
    }
}

TEST_CASE("config text parsing") {
    const auto doc = ConfigDoc::parse_text("[a]\nx = 1 ; comment\n# full comment\ny=2\n");
    CHECK(doc.number("a.x") == 1.0);
    CHECK(doc.number("a.y") == 2.0);
    CHECK_THROWS_WITH_AS(doc.number("a.z"), doctest::Contains("a.z"), ConfigError);
    CHECK_THROWS_AS(ConfigDoc::parse_text("[a]\nx=1\nx=2\n"), ConfigError);
    CHECK_THROWS_AS(ConfigDoc::parse_text("loose line\n"), ConfigError);
}

TEST_CASE("derived satellite density") {
    // unit-sphere-area identity: one satellite on a shell of area 1
    const double r = 1.0 / (2.0 * std::sqrt(std::numbers::pi));
    const auto tiny = params::make_geometry(r / 2.0, r / 2.0, 1);
    CHECK(params::derived_sat_density(tiny) == doctest::Approx(1.0).epsilon(1e-12));

    const auto leo = params::make_geometry(6371e3, 500e3, 1000);
    CHECK(params::derived_sat_density(leo) ==
          doctest::Approx(1.6855833740098484e-12).epsilon(1e-12));
}

TEST_CASE("largest-remainder satellite split") {
    using params::TaskSpec;
    auto mk = [](std::vector<double> qs) {
        std::vector<TaskSpec> t(qs.size());
        for (size_t i = 0; i < qs.size(); ++i) t[i].q = qs[i];
        return t;
    };
    CHECK(params::split_satellites(mk({0.25, 0.25, 0.25, 0.25}), 1000) ==
          std::vector<int>{250, 250, 250, 250});
    CHECK(params::split_satellites(mk({0.3, 0.3, 0.4}), 10) == std::vector<int>{3, 3, 4});
    CHECK(params::split_satellites(mk({0.5, 0.5}), 3) == std::vector<int>{2, 1});
    // tiny class can legitimately get zero satellites
    CHECK(params::split_satellites(mk({0.9, 0.1}), 4) == std::vector<int>{4, 0});
}

TEST_SUITE_END();
