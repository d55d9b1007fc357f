#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uplink/execution.hpp"
#include "uplink/params.hpp"

namespace uplink::analytic {

/// Distribution of an interfering mobile's distance to its own base station.
/// RayleighPpp models irregular deployments (pdf 2 pi lambda r exp(-lambda pi r^2));
/// UniformDisk models regular ones (pdf 2 pi lambda r on [0, 1/sqrt(pi lambda)]).
class ServingDistanceModel {
public:
    enum class Kind { RayleighPpp, UniformDisk };

    static ServingDistanceModel rayleigh(double density);
    static ServingDistanceModel uniform_disk(double density);

    Kind kind() const { return kind_; }
    double density() const { return density_; }
    double disk_radius() const;
    double pdf(double r) const;
    double ccdf(double r) const;
    ServingDistanceModel with_density(double density) const;
    std::string_view name() const;

private:
    ServingDistanceModel(Kind kind, double density);
    Kind kind_;
    double density_;
};

/// How the interference Laplace transform is evaluated.
///   Nested:  the PGFL exponent as an x-integral of 1 - E_Rz[...], each point
///            of which is a quadrature over R_z.
///   Reduced: the x-integral done in closed form (regularized incomplete beta)
///            under the R_z expectation, leaving one quadrature level.
/// Both evaluate the same expression; Reduced is the default for curves.
enum class LaplaceRoute { Nested, Reduced };

/// E_Rz[ mu / (mu + s R_z^(alpha eps) x^-alpha) ].
double rz_expectation(double s, double x, const NetworkParams& params,
                      const ServingDistanceModel& model, const QuadratureSpec& spec);

/// Laplace transform of the interference seen beyond exclusion radius r,
/// exp(-2 pi lambda int_r^inf (1 - rz_expectation(s, x)) x dx).
double laplace_interference(double s, double r, const NetworkParams& params,
                            const ServingDistanceModel& model, const QuadratureSpec& spec,
                            LaplaceRoute route = LaplaceRoute::Nested);

/// Closed form of the uniform-disk Laplace transform for alpha = 4, mu = 1,
/// eps = 1:
///   exp( -(sqrt T / 2) A + (pi lambda r^2 / 2)(1 - A / b) ),
///   b = sqrt T / (pi lambda r^2),  A = arctan b.
/// Tends to 1 as T -> 0 or r -> inf; equals exp(-pi sqrt(T) / 4) at r = 0.
double laplace_closed_form_a4(double threshold, double r, double density);

/// Uplink coverage probability P[SINR > T] for the typical base station.
double coverage_probability(const NetworkParams& params, SinrThreshold threshold,
                            const ServingDistanceModel& model, const QuadratureSpec& spec,
                            LaplaceRoute route = LaplaceRoute::Reduced);

/// Same as coverage_probability but accepting T = 0 (returns 1).
double coverage_probability_linear(const NetworkParams& params, double threshold,
                                   const ServingDistanceModel& model, const QuadratureSpec& spec,
                                   LaplaceRoute route = LaplaceRoute::Reduced);

/// Coverage with the alpha = 4 uniform-disk closed form plugged into the
/// outer integral. Requires alpha = 4, eps = 1 and no noise.
double coverage_closed_form_a4(const NetworkParams& params, SinrThreshold threshold,
                               const QuadratureSpec& spec);

/// Full power control, no noise: int 2 pi lambda r e^{-pi lambda r^2} L(T) dr
/// with mu forced to 1. Throws std::invalid_argument unless eps = 1, noise = 0.
double coverage_full_pc_no_noise(const NetworkParams& params, SinrThreshold threshold,
                                 const ServingDistanceModel& model, const QuadratureSpec& spec,
                                 LaplaceRoute route = LaplaceRoute::Reduced);

/// E[ln(1 + SINR)] in nats/Hz, integrating over r outside and t inside.
double average_rate(const NetworkParams& params, const ServingDistanceModel& model,
                    const QuadratureSpec& spec, LaplaceRoute route = LaplaceRoute::Reduced);

/// int_0^inf p_c(e^t - 1) dt: the rate with the integration order swapped.
double rate_from_coverage(const NetworkParams& params, const ServingDistanceModel& model,
                          const QuadratureSpec& spec, LaplaceRoute route = LaplaceRoute::Reduced);

struct RateIdentity {
    double direct = 0.0;
    double via_coverage = 0.0;
    double residual = 0.0;
    double relative() const { return residual / direct; }
};

RateIdentity rate_coverage_identity_check(const NetworkParams& params,
                                          const ServingDistanceModel& model,
                                          const QuadratureSpec& spec);

/// rho(T, alpha) = T^(2/alpha) int_{T^(-2/alpha)}^inf du / (1 + u^(alpha/2)).
double downlink_rho(double threshold, double alpha, const QuadratureSpec& spec);

/// Downlink coverage with PPP base stations all transmitting at mu^-1.
double downlink_coverage(double threshold, double density, double alpha, double mu, double noise,
                         const QuadratureSpec& spec);

struct EpsilonSearch {
    double best_epsilon = 0.0;
    double best_coverage = 0.0;
    std::vector<std::pair<double, double>> profile;  // (eps, p_c)
};

/// Thrown when a grid point fails; holds the profile computed so far.
class EpsilonSearchError : public std::runtime_error {
public:
    EpsilonSearchError(const std::string& what, std::vector<std::pair<double, double>> partial)
        : std::runtime_error(what), partial_(std::move(partial)) {}
    const std::vector<std::pair<double, double>>& partial_profile() const { return partial_; }

private:
    std::vector<std::pair<double, double>> partial_;
};

/// Grid argmax of coverage over eps; ties resolve to the smaller eps. The eps
/// stored in `params` is ignored.
EpsilonSearch optimal_epsilon(SinrThreshold threshold, const NetworkParams& params,
                              const ServingDistanceModel& model,
                              const std::vector<double>& epsilon_grid, const QuadratureSpec& spec);

std::vector<double> epsilon_grid(double step);

struct CurvePoint {
    SinrThreshold threshold;
    double probability;
};

struct CoverageCurve {
    std::vector<CurvePoint> points;
    NetworkParams params;
    ServingDistanceModel model;
    QuadratureSpec spec;
};

/// Coverage at each threshold. Parallel runs one OpenMP task per threshold and
/// returns exactly the serial values.
CoverageCurve coverage_curve(const NetworkParams& params, const std::vector<double>& thresholds_db,
                             const ServingDistanceModel& model, const QuadratureSpec& spec,
                             Execution execution = Execution::Parallel);

}  // namespace uplink::analytic
