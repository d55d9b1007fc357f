#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "uplink/params.hpp"

using namespace uplink;

TEST_CASE("decibel conversions") {
    CHECK(db_to_linear(0.0) == doctest::Approx(1.0));
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
    CHECK(db_to_linear(-3.0) == doctest::Approx(0.501187).epsilon(1e-6));
    CHECK(linear_to_db(100.0) == doctest::Approx(20.0));
    CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
    CHECK(dbm_to_watts(23.0) == doctest::Approx(0.19953).epsilon(1e-4));
    CHECK(watts_to_dbm(0.001) == doctest::Approx(0.0));
    CHECK_THROWS_AS(db_to_linear(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
    for (double x : {-20.0, -3.0, 0.0, 7.5, 45.0}) {
        CHECK(linear_to_db(db_to_linear(x)) == doctest::Approx(x));
        CHECK(watts_to_dbm(dbm_to_watts(x)) == doctest::Approx(x));
    }
}

TEST_CASE("thermal noise and pathloss slope") {
    // -174 dBm/Hz over 10 MHz is -104 dBm.
    CHECK(watts_to_dbm(noise_power_from_density(-174.0, 10e6)) == doctest::Approx(-104.0));
    CHECK_THROWS_AS(noise_power_from_density(-174.0, 0.0), std::invalid_argument);
    CHECK(alpha_from_pathloss_slope(37.0) == doctest::Approx(3.7));
    CHECK_THROWS_AS(alpha_from_pathloss_slope(20.0), std::invalid_argument);
}

TEST_CASE("noise rescaling for kilometer distances") {
    // 37 log10(d_m) at d = 1 km is 111 dB; both rescalings agree at alpha = 3.7.
    const double n = 1e-13;
    CHECK(noise_for_distance_unit(n, 3.7, 1000.0) ==
          doctest::Approx(noise_for_reference_loss(n, 111.0)).epsilon(1e-12));
    CHECK(noise_for_distance_unit(n, 4.0, 1000.0) == doctest::Approx(1e-1));
    CHECK(profile::reference_loss_db() == doctest::Approx(111.0));
    CHECK(profile::noise_km() == doctest::Approx(dbm_to_watts(-104.0) * std::pow(10.0, 11.1)));
    CHECK_THROWS_AS(noise_for_distance_unit(n, 4.0, 0.0), std::invalid_argument);
}

TEST_CASE("network parameters validate their ranges") {
    CHECK_NOTHROW(NetworkParams(0.25, 4.0, 1.0, 1.0, 0.0));
    CHECK_THROWS_AS(NetworkParams(0.0, 4.0, 1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(NetworkParams(0.25, 2.0, 1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(NetworkParams(0.25, 4.0, 1.1, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(NetworkParams(0.25, 4.0, -0.1, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(NetworkParams(0.25, 4.0, 1.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(NetworkParams(0.25, 4.0, 1.0, 1.0, -1.0), std::invalid_argument);

    const NetworkParams p(0.25, 4.0, 1.0, 0.2, 0.0);
    CHECK(p.mu() == doctest::Approx(5.0));
    CHECK(p.mean_cell_radius() == doctest::Approx(1.0 / std::sqrt(M_PI * 0.25)));
    CHECK(p.with_epsilon(0.5).epsilon() == 0.5);
    CHECK(p.with_alpha(3.0).alpha() == 3.0);
    CHECK(p.with_density(1.0).density() == 1.0);
    CHECK(p.with_noise(2.0).noise() == 2.0);
    CHECK(p.with_baseline_power(1.0).mu() == 1.0);
    CHECK_THROWS_AS(p.with_epsilon(2.0), std::invalid_argument);
}

TEST_CASE("profile parameters") {
    const NetworkParams p = profile::uplink(0.5);
    CHECK(p.density() == doctest::Approx(0.24));
    CHECK(p.alpha() == doctest::Approx(3.7));
    CHECK(p.epsilon() == 0.5);
    CHECK(watts_to_dbm(p.baseline_power()) == doctest::Approx(23.0));
    CHECK(p.noise() == doctest::Approx(profile::noise_km()));
    CHECK(profile::uplink(0.5, 2.5).noise() == doctest::Approx(p.noise()));
}

TEST_CASE("thresholds") {
    CHECK(SinrThreshold::from_db(10.0).linear() == doctest::Approx(10.0));
    CHECK(SinrThreshold::from_linear(0.1).db() == doctest::Approx(-10.0));
    CHECK_THROWS_AS(SinrThreshold::from_linear(0.0), std::invalid_argument);
}

TEST_CASE("quadrature spec") {
    QuadratureSpec spec;
    CHECK_NOTHROW(spec.validate());
    const auto t = spec.tightened();
    CHECK(t.rel_tol == doctest::Approx(spec.rel_tol / 10));
    CHECK(t.abs_tol == doctest::Approx(spec.abs_tol / 10));
    spec.rel_tol = 0.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = {};
    spec.max_subdivisions = 0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}
