#include "uplink/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace uplink {

namespace {

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument(std::string(what) + " must be finite");
    }
}

}  // namespace

double db_to_linear(double x_db) {
    require_finite(x_db, "dB value");
    return std::pow(10.0, x_db / 10.0);
}

double linear_to_db(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::invalid_argument("linear value must be positive and finite");
    }
    return 10.0 * std::log10(x);
}

double dbm_to_watts(double x_dbm) { return db_to_linear(x_dbm) * 1e-3; }

double watts_to_dbm(double watts) { return linear_to_db(watts * 1e3); }

double noise_power_from_density(double psd_dbm_per_hz, double bandwidth_hz) {
    require_finite(psd_dbm_per_hz, "noise density");
    if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz)) {
        throw std::invalid_argument("bandwidth must be positive");
    }
    return dbm_to_watts(psd_dbm_per_hz + 10.0 * std::log10(bandwidth_hz));
}

double alpha_from_pathloss_slope(double slope_db_per_decade) {
    require_finite(slope_db_per_decade, "pathloss slope");
    if (slope_db_per_decade <= 20.0) {
        throw std::invalid_argument("pathloss slope must exceed 20 dB/decade (alpha > 2)");
    }
    return slope_db_per_decade / 10.0;
}

double noise_for_distance_unit(double noise_watts, double alpha, double meters_per_unit) {
    if (!(meters_per_unit > 0.0)) {
        throw std::invalid_argument("distance unit must be positive");
    }
    return noise_watts * std::pow(meters_per_unit, alpha);
}

double noise_for_reference_loss(double noise_watts, double loss_db_at_unit) {
    return noise_watts * db_to_linear(loss_db_at_unit);
}

NetworkParams::NetworkParams(double density, double pathloss_exponent, double pc_factor,
                             double baseline_power, double noise_power)
    : density_(density),
      alpha_(pathloss_exponent),
      epsilon_(pc_factor),
      baseline_power_(baseline_power),
      noise_(noise_power) {
    if (!(density > 0.0) || !std::isfinite(density)) {
        throw std::invalid_argument("density must be positive");
    }
    if (!(pathloss_exponent > 2.0) || !std::isfinite(pathloss_exponent)) {
        throw std::invalid_argument("pathloss exponent must exceed 2");
    }
    if (!(pc_factor >= 0.0 && pc_factor <= 1.0)) {
        throw std::invalid_argument("power control factor must lie in [0, 1]");
    }
    if (!(baseline_power > 0.0) || !std::isfinite(baseline_power)) {
        throw std::invalid_argument("baseline power must be positive");
    }
    if (!(noise_power >= 0.0) || !std::isfinite(noise_power)) {
        throw std::invalid_argument("noise power must be non-negative");
    }
}

NetworkParams NetworkParams::with_density(double density) const {
    return {density, alpha_, epsilon_, baseline_power_, noise_};
}
NetworkParams NetworkParams::with_alpha(double alpha) const {
    return {density_, alpha, epsilon_, baseline_power_, noise_};
}
NetworkParams NetworkParams::with_epsilon(double epsilon) const {
    return {density_, alpha_, epsilon, baseline_power_, noise_};
}
NetworkParams NetworkParams::with_baseline_power(double baseline_power) const {
    return {density_, alpha_, epsilon_, baseline_power, noise_};
}
NetworkParams NetworkParams::with_noise(double noise) const {
    return {density_, alpha_, epsilon_, baseline_power_, noise};
}

double NetworkParams::mean_cell_radius() const { return 1.0 / std::sqrt(M_PI * density_); }

SinrThreshold SinrThreshold::from_db(double db) { return SinrThreshold(db_to_linear(db)); }

SinrThreshold SinrThreshold::from_linear(double linear) {
    if (!(linear > 0.0) || !std::isfinite(linear)) {
        throw std::invalid_argument("SINR threshold must be positive");
    }
    return SinrThreshold(linear);
}

double SinrThreshold::db() const { return linear_to_db(linear_); }

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(tail_cutoff_mass > 0.0)) {
        throw std::invalid_argument("quadrature tolerances must be positive");
    }
    if (max_subdivisions < 1) {
        throw std::invalid_argument("max_subdivisions must be at least 1");
    }
}

QuadratureSpec QuadratureSpec::tightened() const {
    QuadratureSpec inner = *this;
    inner.rel_tol /= 10.0;
    inner.abs_tol /= 10.0;
    return inner;
}

namespace profile {

double noise_watts() { return noise_power_from_density(kNoiseDensityDbmPerHz, kBandwidthHz); }

double reference_loss_db() { return kPathlossSlopeDb * std::log10(kMetersPerKm); }

double noise_km() { return noise_for_reference_loss(noise_watts(), reference_loss_db()); }

NetworkParams uplink(double epsilon) {
    return uplink(epsilon, alpha_from_pathloss_slope(kPathlossSlopeDb));
}

NetworkParams uplink(double epsilon, double alpha) {
    return {kDensityPerKm2, alpha, epsilon, dbm_to_watts(kUplinkMaxPowerDbm), noise_km()};
}

}  // namespace profile

}  // namespace uplink
