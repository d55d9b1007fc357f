#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>

#include "uplink/analytic.hpp"

using namespace uplink;
using namespace uplink::analytic;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Coverage written straight from its definition with Boost quadrature:
// outer r with the Rayleigh serving density, the PGFL exponent over x > r,
// and the interferer expectation over R_z, each integrated separately.
double oracle_coverage(double lambda, double alpha, double eps, double mu, double noise, double t,
                       bool uniform) {
    using boost::math::quadrature::exp_sinh;
    using boost::math::quadrature::gauss_kronrod;
    const double pi = M_PI;
    const double disk = 1.0 / std::sqrt(pi * lambda);
    auto rz_mass = [&](double c) {  // E[c R^(alpha eps) / (mu + c R^(alpha eps))]
        auto term = [&](double rz) {
            const double w = c * std::pow(rz, alpha * eps);
            if (!std::isfinite(w)) return 1.0;
            return w / (mu + w);
        };
        if (uniform) {
            return gauss_kronrod<double, 61>::integrate(
                [&](double rz) { return term(rz) * 2.0 * pi * lambda * rz; }, 0.0, disk, 15, 1e-12);
        }
        exp_sinh<double> es;
        return es.integrate(
            [&](double rz) {
                const double weight = 2.0 * pi * lambda * rz * std::exp(-pi * lambda * rz * rz);
                return weight == 0.0 ? 0.0 : term(rz) * weight;
            },
            0.0, kInf, 1e-12);
    };
    auto laplace = [&](double s, double r) {
        exp_sinh<double> es;
        const double e = es.integrate(
            [&](double x) { return rz_mass(s * std::pow(x, -alpha)) * x; }, r, kInf, 1e-11);
        return std::exp(-2.0 * pi * lambda * e);
    };
    const double r_max = std::sqrt(34.0 / (pi * lambda));
    return gauss_kronrod<double, 31>::integrate(
        [&](double r) {
            const double s = mu * t * std::pow(r, alpha * (1.0 - eps));
            return 2.0 * pi * lambda * r * std::exp(-pi * lambda * r * r - s * noise) *
                   laplace(s, r);
        },
        0.0, r_max, 10, 1e-10);
}

}  // namespace

TEST_CASE("serving distance models") {
    const auto ray = ServingDistanceModel::rayleigh(0.25);
    const auto uni = ServingDistanceModel::uniform_disk(0.25);
    CHECK(ray.ccdf(1.0) == doctest::Approx(std::exp(-M_PI * 0.25)));
    CHECK(uni.disk_radius() == doctest::Approx(1.0 / std::sqrt(M_PI * 0.25)));
    CHECK(uni.ccdf(uni.disk_radius()) == doctest::Approx(0.0));
    CHECK(uni.pdf(2.0 * uni.disk_radius()) == 0.0);
    CHECK(ray.name() == "rayleigh");
    CHECK(uni.name() == "uniform-disk");
    CHECK(ray.with_density(1.0).density() == 1.0);
}

TEST_CASE("coverage matches the independent quadrature oracle") {
    const QuadratureSpec spec;
    struct Case {
        double lambda, alpha, eps, baseline, noise, t_db;
        bool uniform;
    };
    const double noise = profile::noise_km();
    for (const Case c : {Case{0.25, 4.0, 1.0, 1.0, 0.0, 0.0, false},
                         Case{0.25, 3.25, 0.75, 1.0, 0.0, 0.0, false},
                         Case{0.24, 3.7, 0.5, 0.2, noise, -5.0, false},
                         Case{0.25, 3.0, 0.6, 1.0, 0.0, 3.0, true}}) {
        CAPTURE(c.alpha);
        CAPTURE(c.eps);
        const NetworkParams p(c.lambda, c.alpha, c.eps, c.baseline, c.noise);
        const auto model = c.uniform ? ServingDistanceModel::uniform_disk(c.lambda)
                                     : ServingDistanceModel::rayleigh(c.lambda);
        const double t = db_to_linear(c.t_db);
        const double oracle = oracle_coverage(c.lambda, c.alpha, c.eps, p.mu(), c.noise, t, c.uniform);
        CHECK(coverage_probability(p, SinrThreshold::from_db(c.t_db), model, spec) ==
              doctest::Approx(oracle).epsilon(1e-6));
    }
}

TEST_CASE("known coverage values") {
    const QuadratureSpec spec;
    const NetworkParams p(0.25, 4.0, 1.0, 1.0, 0.0);
    CHECK(coverage_probability(p, SinrThreshold::from_db(0.0), ServingDistanceModel::rayleigh(0.25),
                               spec) == doctest::Approx(0.3600347503).epsilon(1e-8));
    CHECK(coverage_probability_linear(p, 0.0, ServingDistanceModel::rayleigh(0.25), spec) == 1.0);
    CHECK_THROWS_AS(coverage_probability_linear(p, -1.0, ServingDistanceModel::rayleigh(0.25), spec),
                    std::invalid_argument);
}

TEST_CASE("both Laplace routes evaluate the same transform") {
    const QuadratureSpec spec;
    for (const auto& p : {NetworkParams(0.25, 4.0, 1.0, 1.0, 0.0),
                          NetworkParams(0.24, 3.25, 0.5, 0.2, 0.0),
                          NetworkParams(0.25, 2.5, 0.25, 1.0, 0.0)}) {
        for (const auto& model : {ServingDistanceModel::rayleigh(p.density()),
                                  ServingDistanceModel::uniform_disk(p.density())}) {
            for (double s : {0.1, 1.0, 10.0}) {
                for (double r : {0.0, 0.5, 2.0}) {
                    CAPTURE(s);
                    CAPTURE(r);
                    const double nested = laplace_interference(s, r, p, model, spec, LaplaceRoute::Nested);
                    const double reduced = laplace_interference(s, r, p, model, spec, LaplaceRoute::Reduced);
                    CHECK(reduced == doctest::Approx(nested).epsilon(1e-7));
                }
            }
        }
    }
}

TEST_CASE("Laplace transform limits") {
    const QuadratureSpec spec;
    const NetworkParams p(0.25, 4.0, 1.0, 1.0, 0.0);
    const auto model = ServingDistanceModel::rayleigh(0.25);
    CHECK(laplace_interference(0.0, 1.0, p, model, spec) == 1.0);
    CHECK(laplace_interference(1.0, 200.0, p, model, spec) > 0.9999);
    CHECK_THROWS_AS(laplace_interference(-1.0, 1.0, p, model, spec), std::invalid_argument);
}

TEST_CASE("alpha 4 closed form") {
    const QuadratureSpec spec;
    const double lambda = 0.25;
    const NetworkParams p(lambda, 4.0, 1.0, 1.0, 0.0);
    const auto model = ServingDistanceModel::uniform_disk(lambda);
    for (double t : {0.1, 1.0, 10.0}) {
        CHECK(laplace_closed_form_a4(t, 0.0, lambda) == doctest::Approx(std::exp(-M_PI * std::sqrt(t) / 4)));
        for (double r : {0.0, 0.05, 0.3, 1.0, 3.0, 8.0}) {
            CAPTURE(r);
            const double nested = laplace_interference(t, r, p, model, spec, LaplaceRoute::Nested);
            CHECK(laplace_closed_form_a4(t, r, lambda) == doctest::Approx(nested).epsilon(1e-8));
        }
    }
    for (double db : {-5.0, 0.0, 10.0}) {
        const auto t = SinrThreshold::from_db(db);
        CHECK(coverage_closed_form_a4(p, t, spec) ==
              doctest::Approx(coverage_probability(p, t, model, spec)).epsilon(1e-6));
    }
    CHECK_THROWS_AS(coverage_closed_form_a4(p.with_alpha(3.5), SinrThreshold::from_db(0), spec),
                    std::invalid_argument);
}

TEST_CASE("full inversion without noise does not depend on mu") {
    const QuadratureSpec spec;
    const auto model = ServingDistanceModel::rayleigh(0.25);
    const NetworkParams p(0.25, 3.5, 1.0, 1.0 / 7.0, 0.0);
    for (double db : {-5.0, 5.0}) {
        const auto t = SinrThreshold::from_db(db);
        CHECK(coverage_probability(p, t, model, spec) ==
              doctest::Approx(coverage_full_pc_no_noise(p, t, model, spec)).epsilon(1e-9));
        CHECK(coverage_probability(p.with_baseline_power(3.0), t, model, spec) ==
              doctest::Approx(coverage_probability(p, t, model, spec)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(coverage_full_pc_no_noise(p.with_epsilon(0.5), SinrThreshold::from_db(0), model, spec),
                    std::invalid_argument);
}

TEST_CASE("noise lowers coverage, density scaling without noise does not change it") {
    const QuadratureSpec spec;
    const NetworkParams p(0.24, 3.7, 0.5, 0.2, 0.0);
    const auto model = ServingDistanceModel::rayleigh(0.24);
    const auto t = SinrThreshold::from_db(0.0);
    const double quiet = coverage_probability(p, t, model, spec);
    CHECK(coverage_probability(p.with_noise(profile::noise_km()), t, model, spec) < quiet);
    CHECK(coverage_probability(p.with_density(0.96), t, model.with_density(0.96), spec) ==
          doctest::Approx(quiet).epsilon(1e-7));
}

TEST_CASE("rate equals the integral of coverage") {
    QuadratureSpec spec;
    spec.rel_tol = 1e-6;
    const NetworkParams p(0.25, 4.0, 1.0, 1.0, 0.0);
    const auto id = rate_coverage_identity_check(p, ServingDistanceModel::rayleigh(0.25), spec);
    CHECK(id.relative() < 1e-4);
    CHECK(id.direct == doctest::Approx(0.6395).epsilon(1e-3));
}

TEST_CASE("downlink") {
    const QuadratureSpec spec;
    boost::math::quadrature::exp_sinh<double> es;
    for (double alpha : {2.5, 3.7, 4.0}) {
        for (double t : {0.1, 1.0, 10.0}) {
            const double lower = std::pow(t, -2.0 / alpha);
            const double oracle =
                std::pow(t, 2.0 / alpha) *
                es.integrate([&](double u) { return 1.0 / (1.0 + std::pow(u, alpha / 2)); }, lower, kInf);
            CHECK(downlink_rho(t, alpha, spec) == doctest::Approx(oracle).epsilon(1e-8));
        }
    }
    CHECK(downlink_rho(1.0, 4.0, spec) == doctest::Approx(M_PI / 4).epsilon(1e-10));
    CHECK(downlink_coverage(1.0, 0.25, 4.0, 1.0, 0.0, spec) ==
          doctest::Approx(1.0 / (1.0 + M_PI / 4)).epsilon(1e-8));
    CHECK(downlink_coverage(1.0, 0.25, 4.0, 1.0, 0.1, spec) <
          downlink_coverage(1.0, 0.25, 4.0, 1.0, 0.0, spec));
}

TEST_CASE("optimal epsilon search") {
    const QuadratureSpec spec;
    const NetworkParams p = profile::uplink(0.0);
    const auto model = ServingDistanceModel::rayleigh(p.density());
    const auto grid = epsilon_grid(0.25);
    CHECK(grid.size() == 5);
    CHECK(grid.back() == 1.0);
    const auto best = optimal_epsilon(SinrThreshold::from_db(-10.0), p, model, grid, spec);
    CHECK(best.profile.size() == grid.size());
    for (const auto& [eps, pc] : best.profile) {
        CHECK(pc <= best.best_coverage);
    }
    CHECK(optimal_epsilon(SinrThreshold::from_db(20.0), p, model, grid, spec).best_epsilon == 0.0);
    // A repeated grid value ties with itself; the first one wins.
    const auto tie = optimal_epsilon(SinrThreshold::from_db(20.0), p, model, {0.0, 0.0}, spec);
    CHECK(tie.best_epsilon == 0.0);
    CHECK_THROWS_AS(optimal_epsilon(SinrThreshold::from_db(0.0), p, model, {}, spec),
                    std::invalid_argument);
    CHECK_THROWS_AS(optimal_epsilon(SinrThreshold::from_db(0.0), p, model, {1.5}, spec),
                    std::invalid_argument);
}

TEST_CASE("coverage curves are identical serial and parallel") {
    const NetworkParams p(0.25, 3.25, 0.75, 1.0, 0.0);
    const std::vector<double> db{-10, -5, 0, 5, 10, 15};
    const auto model = ServingDistanceModel::rayleigh(0.25);
    const auto a = coverage_curve(p, db, model, QuadratureSpec{}, Execution::Serial);
    const auto b = coverage_curve(p, db, model, QuadratureSpec{}, Execution::Parallel);
    REQUIRE(a.points.size() == db.size());
    for (std::size_t i = 0; i < db.size(); ++i) {
        CHECK(a.points[i].probability == b.points[i].probability);
        if (i > 0) {
            CHECK(a.points[i].probability < a.points[i - 1].probability);
        }
    }
}
