#include "uplink/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace uplink::numerics {

namespace {

// Kronrod abscissae on [-1, 1] (non-negative half) and weights; odd entries
// are also the 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525452718, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

double checked(const Integrand& f, double x) {
    const double y = f(x);
    if (!std::isfinite(y)) {
        throw QuadratureError("integrand is not finite at x = " + std::to_string(x), 0.0,
                              std::numeric_limits<double>::infinity());
    }
    return y;
}

Panel gauss_kronrod_21(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f_center = checked(f, center);

    double kronrod = f_center * kWgk[10];
    double abs_kronrod = std::abs(kronrod);
    double gauss = 0.0;
    std::array<double, 10> f1{};
    std::array<double, 10> f2{};
    for (std::size_t j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = checked(f, center - dx);
        f2[j] = checked(f, center + dx);
        const double pair = f1[j] + f2[j];
        kronrod += kWgk[j] * pair;
        abs_kronrod += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) {
            gauss += kWg[j / 2] * pair;
        }
    }

    const double mean = 0.5 * kronrod;
    double asc = kWgk[10] * std::abs(f_center - mean);
    for (std::size_t j = 0; j < 10; ++j) {
        asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }

    const double value = kronrod * half;
    asc *= std::abs(half);
    abs_kronrod *= std::abs(half);
    double error = std::abs((kronrod - gauss) * half);
    if (asc != 0.0 && error != 0.0) {
        error = asc * std::min(1.0, std::pow(200.0 * error / asc, 1.5));
    }
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    if (abs_kronrod > std::numeric_limits<double>::min() / (50.0 * kEps)) {
        error = std::max(error, 50.0 * kEps * abs_kronrod);
    }
    return {a, b, value, error};
}

}  // namespace

EvaluationLedger& ledger() {
    static EvaluationLedger instance;
    return instance;
}

QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
    spec.validate();
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw std::invalid_argument("integrate requires finite a < b");
    }

    constexpr std::uint64_t kEvalsPerPanel = 21;
    QuadratureResult out;
    std::priority_queue<Panel> active;
    double settled_value = 0.0;
    double settled_error = 0.0;

    Panel first = gauss_kronrod_21(f, a, b);
    out.evaluations += kEvalsPerPanel;
    double total_value = first.value;
    double total_error = first.error;
    active.push(first);

    auto record = [&] {
        ledger().integrals.fetch_add(1, std::memory_order_relaxed);
        ledger().evaluations.fetch_add(out.evaluations, std::memory_order_relaxed);
    };

    while (total_error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total_value))) {
        if (active.empty()) {
            // Every remaining panel is at the resolution limit; the estimate is
            // as good as double precision allows.
            break;
        }
        if (out.subdivisions >= spec.max_subdivisions) {
            out.value = total_value;
            out.abs_error = total_error;
            record();
            throw QuadratureError("quadrature subdivision budget exhausted", total_value,
                                  total_error);
        }
        const Panel worst = active.top();
        active.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) ||
            (worst.b - worst.a) < 1e3 * std::numeric_limits<double>::epsilon() *
                                      std::max(std::abs(worst.a), std::abs(worst.b))) {
            settled_value += worst.value;
            settled_error += worst.error;
            continue;
        }
        const Panel left = gauss_kronrod_21(f, worst.a, mid);
        const Panel right = gauss_kronrod_21(f, mid, worst.b);
        out.evaluations += 2 * kEvalsPerPanel;
        ++out.subdivisions;
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        active.push(left);
        active.push(right);

        // Resum periodically to keep cancellation drift out of the running totals.
        if (out.subdivisions % 64 == 0) {
            std::vector<Panel> panels;
            panels.reserve(active.size());
            double v = settled_value;
            double e = settled_error;
            auto copy = active;
            while (!copy.empty()) {
                v += copy.top().value;
                e += copy.top().error;
                copy.pop();
            }
            total_value = v;
            total_error = e;
        }
    }

    out.value = total_value;
    out.abs_error = total_error;
    record();
    return out;
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double a, const QuadratureSpec& spec,
                                         SemiInfiniteMap map) {
    if (!std::isfinite(a)) {
        throw std::invalid_argument("integrate_semi_infinite requires a finite lower limit");
    }
    if (!(map.scale > 0.0)) {
        throw std::invalid_argument("semi-infinite map scale must be positive");
    }
    const double q = map.algebraic_decay > 1.0 ? 2.0 / (map.algebraic_decay - 1.0) : 1.0;
    const double scale = map.scale;
    auto mapped = [&](double t) {
        const double tq = std::pow(t, -q);
        const double x = a + scale * (tq - 1.0);
        if (!std::isfinite(x)) {
            return 0.0;
        }
        const double y = f(x);
        if (y == 0.0) {
            return 0.0;
        }
        const double jacobian = scale * q * tq / t;
        const double out = y * jacobian;
        return std::isfinite(out) ? out : 0.0;
    };
    return integrate(mapped, 0.0, 1.0, spec);
}

}  // namespace uplink::numerics
