#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <limits>

#include "uplink/quadrature.hpp"

using namespace uplink;
using namespace uplink::numerics;

namespace {

// Composite Simpson rule, the reference for smooth integrands.
template <class F>
double simpson(F f, double a, double b, int n = 20000) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    }
    return s * h / 3.0;
}

}  // namespace

TEST_CASE("finite integrals match a Simpson reference") {
    const QuadratureSpec spec;
    auto f1 = [](double x) { return std::exp(-x * x) * std::cos(3.0 * x); };
    auto f2 = [](double x) { return x / (1.0 + std::pow(x, 3.7)); };
    auto f3 = [](double x) { return std::log1p(x) * std::sin(x); };
    CHECK(integrate(f1, -2.0, 3.0, spec).value == doctest::Approx(simpson(f1, -2.0, 3.0)).epsilon(1e-9));
    CHECK(integrate(f2, 0.0, 10.0, spec).value == doctest::Approx(simpson(f2, 0.0, 10.0)).epsilon(1e-9));
    CHECK(integrate(f3, 0.0, 20.0, spec).value == doctest::Approx(simpson(f3, 0.0, 20.0)).epsilon(1e-9));
}

TEST_CASE("endpoint singularities and kinks") {
    const QuadratureSpec spec;
    CHECK(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, spec).value ==
          doctest::Approx(2.0).epsilon(1e-7));
    CHECK(integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, spec).value ==
          doctest::Approx(0.29).epsilon(1e-9));
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 2.0, 2.0, spec), std::invalid_argument);
}

TEST_CASE("semi-infinite integrals") {
    const QuadratureSpec spec;
    CHECK(integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0, spec).value ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(integrate_semi_infinite([](double x) { return std::pow(x, -3.0); }, 1.0, spec,
                                  SemiInfiniteMap{1.0, 3.0})
              .value == doctest::Approx(0.5).epsilon(1e-9));
    // int_1^inf du / (1 + u^2) = pi / 4
    CHECK(integrate_semi_infinite([](double u) { return 1.0 / (1.0 + u * u); }, 1.0, spec,
                                  SemiInfiniteMap{1.0, 2.0})
              .value == doctest::Approx(M_PI / 4).epsilon(1e-9));
}

TEST_CASE("failures raise QuadratureError") {
    QuadratureSpec spec;
    CHECK_THROWS_AS(
        integrate([](double) { return std::numeric_limits<double>::quiet_NaN(); }, 0.0, 1.0, spec),
        QuadratureError);
    spec.max_subdivisions = 2;
    spec.rel_tol = 1e-14;
    spec.abs_tol = 1e-300;
    try {
        integrate([](double x) { return std::sin(200.0 * x) * std::exp(x); }, 0.0, 10.0, spec);
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(std::isfinite(e.estimate()));
        CHECK(e.error_bound() > 0.0);
    }
}

TEST_CASE("the evaluation ledger counts integrand calls") {
    ledger().reset();
    const auto r = integrate([](double x) { return x * x; }, 0.0, 1.0, QuadratureSpec{});
    CHECK(r.value == doctest::Approx(1.0 / 3.0));
    CHECK(ledger().integrals.load() >= 1);
    CHECK(ledger().evaluations.load() >= r.evaluations);
}
