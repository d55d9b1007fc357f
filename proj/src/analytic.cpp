#include "uplink/analytic.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <string>

#include "uplink/quadrature.hpp"

namespace uplink::analytic {

namespace {

constexpr double kPi = M_PI;
// exp(-x) underflows to zero past this.
constexpr double kMaxExponent = 745.0;

using numerics::integrate;
using numerics::integrate_semi_infinite;
using numerics::SemiInfiniteMap;

double rayleigh_u_max(double density, double tail_mass) {
    return -std::log(tail_mass) / (kPi * density);
}

/// E_Rz[f(R_z^(alpha eps))] under the model's pdf. The Rayleigh density in
/// u = R_z^2 is pi lambda e^{-lambda pi u}, truncated where the remaining mass
/// drops below tail_cutoff_mass. The integral runs over v = sqrt(u): the
/// integrands here behave like u^eps near zero, which is smooth in v.
template <class F>
double expect_over_rz(F&& f, const NetworkParams& params, const ServingDistanceModel& model,
                      const QuadratureSpec& spec) {
    const double power = params.alpha() * params.epsilon();
    if (power == 0.0) {
        return f(1.0);
    }
    const double lambda = model.density();
    if (model.kind() == ServingDistanceModel::Kind::RayleighPpp) {
        auto integrand = [&](double v) {
            const double u = v * v;
            return f(std::pow(v, power)) * 2.0 * kPi * lambda * v * std::exp(-kPi * lambda * u);
        };
        const double v_max = std::sqrt(rayleigh_u_max(lambda, spec.tail_cutoff_mass));
        return integrate(integrand, 0.0, v_max, spec).value;
    }
    auto integrand = [&](double u) { return f(std::pow(u, power)) * 2.0 * kPi * lambda * u; };
    return integrate(integrand, 0.0, model.disk_radius(), spec).value;
}

/// 1 - rz_expectation(s, x), evaluated without cancellation.
double interference_mass(double s, double x, const NetworkParams& params,
                         const ServingDistanceModel& model, const QuadratureSpec& spec) {
    const double mu = params.mu();
    const double gain = s * std::pow(x, -params.alpha());
    return expect_over_rz(
        [&](double w) {
            const double c = gain * w;
            return c / (mu + c);
        },
        params, model, spec);
}

/// int_r^inf x / (1 + x^alpha / c) dx
///   = (c^b / alpha) B(b, 1 - b) I_{c / (c + r^alpha)}(1 - b, b),  b = 2 / alpha.
double tail_integral(double c, double r, double alpha) {
    if (c <= 0.0) {
        return 0.0;
    }
    const double b = 2.0 / alpha;
    const double full_beta = kPi / std::sin(kPi * b);
    double regularized = 1.0;
    if (r > 0.0) {
        const double ra = std::pow(r, alpha);
        const double denom = c + ra;
        if (!std::isfinite(denom)) {
            regularized = c > ra ? 1.0 : 0.0;
        } else if (c < ra) {
            regularized = boost::math::ibeta(1.0 - b, b, c / denom);
        } else {
            regularized = boost::math::ibetac(b, 1.0 - b, ra / denom);
        }
    }
    return std::pow(c, b) / alpha * full_beta * regularized;
}

double laplace_exponent_nested(double s, double r, const NetworkParams& params,
                               const ServingDistanceModel& model, const QuadratureSpec& spec) {
    const QuadratureSpec inner = spec.tightened();
    auto integrand = [&](double x) { return interference_mass(s, x, params, model, inner) * x; };
    const SemiInfiniteMap map{std::max(r, params.mean_cell_radius()), params.alpha() - 1.0};
    return 2.0 * kPi * params.density() * integrate_semi_infinite(integrand, r, spec, map).value;
}

double laplace_exponent_reduced(double s, double r, const NetworkParams& params,
                                const ServingDistanceModel& model, const QuadratureSpec& spec) {
    const double ratio = s / params.mu();
    const double alpha = params.alpha();
    const double mean = expect_over_rz([&](double w) { return tail_integral(ratio * w, r, alpha); },
                                       params, model, spec);
    return 2.0 * kPi * params.density() * mean;
}

/// Radius beyond which pi lambda r^2 + noise_coeff r^noise_power exceeds
/// -ln(tail): the outer integrand is bounded by the Rayleigh density times
/// exp(-noise term), so the mass beyond it is below the tail cutoff.
double outer_radius(double density, double noise_coeff, double noise_power, double tail_mass) {
    const double budget = -std::log(tail_mass);
    auto exponent = [&](double r) {
        double e = kPi * density * r * r;
        if (noise_coeff > 0.0) {
            e += noise_coeff * std::pow(r, noise_power);
        }
        return e;
    };
    double hi = std::sqrt(budget / (kPi * density));
    if (exponent(0.0) >= budget) {
        return 0.0;
    }
    double lo = 0.0;
    for (int i = 0; i < 100 && hi - lo > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (exponent(mid) < budget ? lo : hi) = mid;
    }
    return hi;
}

double laplace(double s, double r, const NetworkParams& params, const ServingDistanceModel& model,
               const QuadratureSpec& spec, LaplaceRoute route) {
    if (s == 0.0) {
        return 1.0;
    }
    const double exponent = route == LaplaceRoute::Nested
                                ? laplace_exponent_nested(s, r, params, model, spec)
                                : laplace_exponent_reduced(s, r, params, model, spec);
    return std::exp(-exponent);
}

}  // namespace

ServingDistanceModel::ServingDistanceModel(Kind kind, double density)
    : kind_(kind), density_(density) {
    if (!(density > 0.0) || !std::isfinite(density)) {
        throw std::invalid_argument("serving-distance model density must be positive");
    }
}

ServingDistanceModel ServingDistanceModel::rayleigh(double density) {
    return {Kind::RayleighPpp, density};
}

ServingDistanceModel ServingDistanceModel::uniform_disk(double density) {
    return {Kind::UniformDisk, density};
}

double ServingDistanceModel::disk_radius() const { return 1.0 / std::sqrt(kPi * density_); }

double ServingDistanceModel::pdf(double r) const {
    if (r < 0.0) {
        return 0.0;
    }
    if (kind_ == Kind::RayleighPpp) {
        return 2.0 * kPi * density_ * r * std::exp(-kPi * density_ * r * r);
    }
    return r <= disk_radius() ? 2.0 * kPi * density_ * r : 0.0;
}

double ServingDistanceModel::ccdf(double r) const {
    if (r <= 0.0) {
        return 1.0;
    }
    if (kind_ == Kind::RayleighPpp) {
        return std::exp(-kPi * density_ * r * r);
    }
    return r >= disk_radius() ? 0.0 : 1.0 - kPi * density_ * r * r;
}

ServingDistanceModel ServingDistanceModel::with_density(double density) const {
    return {kind_, density};
}

std::string_view ServingDistanceModel::name() const {
    return kind_ == Kind::RayleighPpp ? "rayleigh" : "uniform-disk";
}

double rz_expectation(double s, double x, const NetworkParams& params,
                      const ServingDistanceModel& model, const QuadratureSpec& spec) {
    if (!(x > 0.0)) {
        throw std::invalid_argument("rz_expectation requires x > 0");
    }
    if (!(s >= 0.0)) {
        throw std::invalid_argument("rz_expectation requires s >= 0");
    }
    if (s == 0.0) {
        return 1.0;
    }
    const double mu = params.mu();
    const double gain = s * std::pow(x, -params.alpha());
    return expect_over_rz([&](double w) { return mu / (mu + gain * w); }, params, model, spec);
}

double laplace_interference(double s, double r, const NetworkParams& params,
                            const ServingDistanceModel& model, const QuadratureSpec& spec,
                            LaplaceRoute route) {
    if (!(r >= 0.0) || !(s >= 0.0)) {
        throw std::invalid_argument("laplace_interference requires s >= 0 and r >= 0");
    }
    return laplace(s, r, params, model, spec, route);
}

double laplace_closed_form_a4(double threshold, double r, double density) {
    if (!(threshold > 0.0) || !(r >= 0.0) || !(density > 0.0)) {
        throw std::invalid_argument("closed form requires T > 0, r >= 0, lambda > 0");
    }
    const double root_t = std::sqrt(threshold);
    const double area = kPi * density * r * r;
    const double angle = std::atan2(root_t, area);
    if (area == 0.0) {
        return std::exp(-0.5 * root_t * angle);
    }
    const double b = root_t / area;
    // 1 - atan(b)/b, by series when b is small to avoid cancellation.
    double deficit = 0.0;
    if (b < 0.1) {
        const double b2 = b * b;
        double term = b2;
        double sign = 1.0;
        for (int k = 3; k <= 21; k += 2) {
            deficit += sign * term / k;
            term *= b2;
            sign = -sign;
        }
    } else {
        deficit = 1.0 - angle / b;
    }
    return std::exp(-0.5 * root_t * angle + 0.5 * area * deficit);
}

double coverage_probability_linear(const NetworkParams& params, double threshold,
                                   const ServingDistanceModel& model, const QuadratureSpec& spec,
                                   LaplaceRoute route) {
    spec.validate();
    if (!(threshold >= 0.0)) {
        throw std::invalid_argument("threshold must be non-negative");
    }
    if (threshold == 0.0) {
        return 1.0;
    }
    const double lambda = params.density();
    const double mu = params.mu();
    const double alpha = params.alpha();
    const double eps = params.epsilon();
    const double noise = params.noise();
    const double signal_power = alpha * (1.0 - eps);
    const QuadratureSpec inner = spec.tightened();

    const double r_max =
        outer_radius(lambda, mu * threshold * noise, signal_power, spec.tail_cutoff_mass);
    if (r_max == 0.0) {
        return 0.0;
    }
    auto integrand = [&](double r) {
        const double s = mu * threshold * std::pow(r, signal_power);
        const double exponent = kPi * lambda * r * r + s * noise;
        if (exponent > kMaxExponent) {
            return 0.0;
        }
        return 2.0 * kPi * lambda * r * std::exp(-exponent) *
               laplace(s, r, params, model, inner, route);
    };
    return integrate(integrand, 0.0, r_max, spec).value;
}

double coverage_probability(const NetworkParams& params, SinrThreshold threshold,
                            const ServingDistanceModel& model, const QuadratureSpec& spec,
                            LaplaceRoute route) {
    return coverage_probability_linear(params, threshold.linear(), model, spec, route);
}

double coverage_closed_form_a4(const NetworkParams& params, SinrThreshold threshold,
                               const QuadratureSpec& spec) {
    if (params.alpha() != 4.0 || params.epsilon() != 1.0 || params.noise() != 0.0) {
        throw std::invalid_argument("closed-form coverage needs alpha = 4, eps = 1, no noise");
    }
    const double lambda = params.density();
    const double t = threshold.linear();
    const double r_max = outer_radius(lambda, 0.0, 0.0, spec.tail_cutoff_mass);
    auto integrand = [&](double r) {
        return 2.0 * kPi * lambda * r * std::exp(-kPi * lambda * r * r) *
               laplace_closed_form_a4(t, r, lambda);
    };
    return integrate(integrand, 0.0, r_max, spec).value;
}

double coverage_full_pc_no_noise(const NetworkParams& params, SinrThreshold threshold,
                                 const ServingDistanceModel& model, const QuadratureSpec& spec,
                                 LaplaceRoute route) {
    if (params.epsilon() != 1.0 || params.noise() != 0.0) {
        throw std::invalid_argument("full power control result requires eps = 1 and no noise");
    }
    spec.validate();
    const NetworkParams unit = params.with_baseline_power(1.0);
    const double lambda = params.density();
    const double t = threshold.linear();
    const QuadratureSpec inner = spec.tightened();
    const double r_max = outer_radius(lambda, 0.0, 0.0, spec.tail_cutoff_mass);
    auto integrand = [&](double r) {
        return 2.0 * kPi * lambda * r * std::exp(-kPi * lambda * r * r) *
               laplace(t, r, unit, model, inner, route);
    };
    return integrate(integrand, 0.0, r_max, spec).value;
}

double average_rate(const NetworkParams& params, const ServingDistanceModel& model,
                    const QuadratureSpec& spec, LaplaceRoute route) {
    spec.validate();
    const double lambda = params.density();
    const double mu = params.mu();
    const double noise = params.noise();
    const double signal_power = params.alpha() * (1.0 - params.epsilon());
    const QuadratureSpec middle = spec.tightened();
    const QuadratureSpec inner = middle.tightened();
    const double r_max = outer_radius(lambda, 0.0, 0.0, spec.tail_cutoff_mass);

    auto outer = [&](double r) {
        const double density = 2.0 * kPi * lambda * r * std::exp(-kPi * lambda * r * r);
        if (density == 0.0) {
            return 0.0;
        }
        const double scale = mu * std::pow(r, signal_power);
        auto per_t = [&](double t) {
            const double s = scale * std::expm1(t);
            if (!std::isfinite(s) || s * noise > kMaxExponent) {
                return 0.0;
            }
            return std::exp(-s * noise) * laplace(s, r, params, model, inner, route);
        };
        return density * integrate_semi_infinite(per_t, 0.0, middle).value;
    };
    return integrate(outer, 0.0, r_max, spec).value;
}

double rate_from_coverage(const NetworkParams& params, const ServingDistanceModel& model,
                          const QuadratureSpec& spec, LaplaceRoute route) {
    spec.validate();
    const QuadratureSpec inner = spec.tightened();
    auto integrand = [&](double t) {
        const double threshold = std::expm1(t);
        if (!std::isfinite(threshold)) {
            return 0.0;
        }
        return coverage_probability_linear(params, threshold, model, inner, route);
    };
    return integrate_semi_infinite(integrand, 0.0, spec).value;
}

RateIdentity rate_coverage_identity_check(const NetworkParams& params,
                                          const ServingDistanceModel& model,
                                          const QuadratureSpec& spec) {
    RateIdentity out;
    out.direct = average_rate(params, model, spec);
    out.via_coverage = rate_from_coverage(params, model, spec);
    out.residual = std::abs(out.direct - out.via_coverage);
    return out;
}

double downlink_rho(double threshold, double alpha, const QuadratureSpec& spec) {
    if (!(threshold > 0.0) || !(alpha > 2.0)) {
        throw std::invalid_argument("downlink_rho requires T > 0 and alpha > 2");
    }
    const double lower = std::pow(threshold, -2.0 / alpha);
    const double half = 0.5 * alpha;
    auto integrand = [&](double u) { return 1.0 / (1.0 + std::pow(u, half)); };
    const SemiInfiniteMap map{std::max(lower, 1.0), half};
    return std::pow(threshold, 2.0 / alpha) *
           integrate_semi_infinite(integrand, lower, spec, map).value;
}

double downlink_coverage(double threshold, double density, double alpha, double mu, double noise,
                         const QuadratureSpec& spec) {
    spec.validate();
    if (!(density > 0.0) || !(mu > 0.0) || !(noise >= 0.0)) {
        throw std::invalid_argument("downlink_coverage requires lambda > 0, mu > 0, noise >= 0");
    }
    const double rho = downlink_rho(threshold, alpha, spec.tightened());
    const double rate = kPi * density * (1.0 + rho);
    const double noise_coeff = mu * threshold * noise;
    const double half = 0.5 * alpha;
    auto integrand = [&](double v) {
        const double exponent = rate * v + noise_coeff * std::pow(v, half);
        return exponent > kMaxExponent ? 0.0 : std::exp(-exponent);
    };
    const SemiInfiniteMap map{1.0 / rate, 0.0};
    return kPi * density * integrate_semi_infinite(integrand, 0.0, spec, map).value;
}

EpsilonSearch optimal_epsilon(SinrThreshold threshold, const NetworkParams& params,
                              const ServingDistanceModel& model,
                              const std::vector<double>& epsilon_grid,
                              const QuadratureSpec& spec) {
    if (epsilon_grid.empty()) {
        throw std::invalid_argument("epsilon grid must not be empty");
    }
    for (double eps : epsilon_grid) {
        if (!(eps >= 0.0 && eps <= 1.0)) {
            throw std::invalid_argument("epsilon grid values must lie in [0, 1]");
        }
    }
    EpsilonSearch out;
    out.best_coverage = -1.0;
    for (double eps : epsilon_grid) {
        double pc = 0.0;
        try {
            pc = coverage_probability(params.with_epsilon(eps), threshold, model, spec);
        } catch (const std::exception& e) {
            throw EpsilonSearchError(
                std::string("coverage failed at eps = ") + std::to_string(eps) + ": " + e.what(),
                out.profile);
        }
        out.profile.emplace_back(eps, pc);
        if (pc > out.best_coverage || (pc == out.best_coverage && eps < out.best_epsilon)) {
            out.best_coverage = pc;
            out.best_epsilon = eps;
        }
    }
    return out;
}

std::vector<double> epsilon_grid(double step) {
    if (!(step > 0.0) || step > 1.0) {
        throw std::invalid_argument("epsilon step must lie in (0, 1]");
    }
    const auto n = static_cast<int>(std::llround(1.0 / step));
    std::vector<double> grid;
    for (int i = 0; i <= n; ++i) {
        grid.push_back(std::min(1.0, i * step));
    }
    if (grid.back() < 1.0) {
        grid.push_back(1.0);
    }
    return grid;
}

CoverageCurve coverage_curve(const NetworkParams& params, const std::vector<double>& thresholds_db,
                             const ServingDistanceModel& model, const QuadratureSpec& spec,
                             Execution execution) {
    const auto n = static_cast<long>(thresholds_db.size());
    std::vector<double> values(thresholds_db.size(), 0.0);
    std::vector<std::exception_ptr> errors(thresholds_db.size());
    auto point = [&](long i) {
        try {
            values[i] = coverage_probability(params, SinrThreshold::from_db(thresholds_db[i]),
                                             model, spec);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < n; ++i) {
            point(i);
        }
    } else {
        for (long i = 0; i < n; ++i) {
            point(i);
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    CoverageCurve curve{{}, params, model, spec};
    for (std::size_t i = 0; i < values.size(); ++i) {
        curve.points.push_back({SinrThreshold::from_db(thresholds_db[i]), values[i]});
    }
    return curve;
}

}  // namespace uplink::analytic
