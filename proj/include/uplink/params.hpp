#pragma once

#include <cstddef>

namespace uplink {

double db_to_linear(double x_db);
double linear_to_db(double x);
double dbm_to_watts(double x_dbm);
double watts_to_dbm(double watts);

/// Thermal noise over `bandwidth_hz` for a density given in dBm/Hz, in watts.
double noise_power_from_density(double psd_dbm_per_hz, double bandwidth_hz);

/// Pathloss exponent from a slope in dB per decade of distance (37 -> 3.7).
double alpha_from_pathloss_slope(double slope_db_per_decade);

/// Rescales a noise power given against a meter-referenced pathloss so that it
/// can be used with distances expressed in units of `meters_per_unit` meters.
/// With d_m = k d, the gain d_m^-alpha becomes k^-alpha d^-alpha and dividing
/// the SINR through by k^-alpha moves the constant onto the noise.
double noise_for_distance_unit(double noise_watts, double alpha, double meters_per_unit);

/// Noise power relative to a link whose loss at one distance unit is
/// `loss_db_at_unit`, so that the remaining gain is d^-alpha in that unit.
double noise_for_reference_loss(double noise_watts, double loss_db_at_unit);

/// Physical-layer parameters of the uplink model, all in linear units.
///
/// `baseline_power` is mu^-1: the mean of the exponential fading draw and the
/// constant baseline transmit power at the same time. The two roles are a
/// single parameter in this model and must not be split.
class NetworkParams {
public:
    NetworkParams(double density, double pathloss_exponent, double pc_factor,
                  double baseline_power, double noise_power);

    double density() const { return density_; }
    double alpha() const { return alpha_; }
    double epsilon() const { return epsilon_; }
    double baseline_power() const { return baseline_power_; }
    /// Fading rate mu = 1 / baseline_power.
    double mu() const { return 1.0 / baseline_power_; }
    double noise() const { return noise_; }

    NetworkParams with_density(double density) const;
    NetworkParams with_alpha(double alpha) const;
    NetworkParams with_epsilon(double epsilon) const;
    NetworkParams with_baseline_power(double baseline_power) const;
    NetworkParams with_noise(double noise) const;

    /// Mean serving-cell radius 1/sqrt(pi lambda).
    double mean_cell_radius() const;

private:
    double density_;
    double alpha_;
    double epsilon_;
    double baseline_power_;
    double noise_;
};

class SinrThreshold {
public:
    static SinrThreshold from_db(double db);
    static SinrThreshold from_linear(double linear);

    double linear() const { return linear_; }
    double db() const;

private:
    explicit SinrThreshold(double linear) : linear_(linear) {}
    double linear_;
};

struct QuadratureSpec {
    double rel_tol = 1e-7;
    double abs_tol = 1e-10;
    std::size_t max_subdivisions = 2000;
    double tail_cutoff_mass = 1e-12;

    /// Throws std::invalid_argument unless all tolerances are positive and
    /// max_subdivisions >= 1.
    void validate() const;

    /// Spec for an inner integral: tolerances one order of magnitude tighter.
    QuadratureSpec tightened() const;
};

/// Network profile used throughout the examples and CLI defaults: 10 MHz
/// bandwidth, 0.24 BS/km^2, 37 log10(d_m) pathloss, 23 dBm uplink power,
/// -174 dBm/Hz noise density. Distances are in kilometers.
namespace profile {
inline constexpr double kBandwidthHz = 10e6;
inline constexpr double kDensityPerKm2 = 0.24;
inline constexpr double kPathlossSlopeDb = 37.0;
inline constexpr double kUplinkMaxPowerDbm = 23.0;
inline constexpr double kDownlinkPowerDbm = 45.0;
inline constexpr double kNoiseDensityDbmPerHz = -174.0;
inline constexpr double kMetersPerKm = 1000.0;

/// Noise power in watts over the profile bandwidth (-104 dBm).
double noise_watts();

/// Loss at 1 km under the profile pathloss, 37 log10(1000) = 111 dB.
double reference_loss_db();

/// Profile noise with distances in kilometers: the 1 km loss stays 111 dB
/// for every alpha, so only the slope changes when alpha is varied.
double noise_km();

/// Profile parameters (alpha = 3.7) for a given epsilon.
NetworkParams uplink(double epsilon);

/// Profile parameters with the pathloss exponent overridden.
NetworkParams uplink(double epsilon, double alpha);

}  // namespace profile

}  // namespace uplink
