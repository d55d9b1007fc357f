#include "uplink/validation.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <exception>
#include <limits>
#include <stdexcept>

#include "uplink/analytic.hpp"
#include "uplink/csv.hpp"
#include "uplink/montecarlo.hpp"
#include "uplink/params.hpp"

namespace uplink::validation {

namespace {

using analytic::ServingDistanceModel;
using montecarlo::Mode;
using montecarlo::SimConfig;

std::string printf_string(const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    return buf;
}

std::vector<double> db_grid(double lo, double hi, double step) {
    std::vector<double> out;
    for (int i = 0; lo + i * step <= hi + 1e-9; ++i) {
        out.push_back(lo + i * step);
    }
    return out;
}

std::vector<double> to_linear(const std::vector<double>& db) {
    std::vector<double> out;
    for (double x : db) {
        out.push_back(db_to_linear(x));
    }
    return out;
}

std::size_t scaled(std::size_t n, const SuiteOptions& o) {
    return o.quick ? std::max<std::size_t>(1, n / kQuickTrialDivisor) : n;
}

double mc_tolerance(double tol, const SuiteOptions& o) {
    return o.quick ? tol * kQuickToleranceFactor : tol;
}

struct Gap {
    double value = 0.0;
    double at_db = 0.0;
};

Gap max_gap(const std::vector<double>& db, const std::vector<double>& a,
            const std::vector<double>& b) {
    Gap g;
    for (std::size_t i = 0; i < db.size(); ++i) {
        if (std::abs(a[i] - b[i]) > std::abs(g.value)) {
            g = {a[i] - b[i], db[i]};
        }
    }
    return g;
}

std::vector<double> analytic_curve(const NetworkParams& params, const std::vector<double>& db,
                                   const ServingDistanceModel& model, const SuiteOptions& o) {
    const auto curve = analytic::coverage_curve(params, db, model, QuadratureSpec{}, o.execution);
    std::vector<double> out;
    for (const auto& p : curve.points) {
        out.push_back(p.probability);
    }
    return out;
}

double cell_radii(const SimConfig& config, double density) {
    return config.window_radius * std::sqrt(M_PI * density);
}

struct Regime {
    double alpha;
    double epsilon;
};

constexpr Regime kRegimeA{4.0, 1.0};
constexpr Regime kRegimeB{3.25, 0.75};
constexpr double kFigDensity = 0.25;

CheckResult ppp_regime(int id, Regime regime, std::size_t reduced_trials, const SuiteOptions& o) {
    CheckResult r;
    const NetworkParams params(kFigDensity, regime.alpha, regime.epsilon, 1.0, 0.0);
    const auto db = db_grid(-10.0, 20.0, 2.0);
    const auto analytic =
        analytic_curve(params, db, ServingDistanceModel::rayleigh(kFigDensity), o);

    SimConfig config = SimConfig::for_network(params, Mode::TruePpp, o.seed);
    config.n_trials = scaled(o.full ? 200000 : reduced_trials, o);
    const auto start = std::chrono::steady_clock::now();
    const auto mc = montecarlo::simulate_coverage(params, config, to_linear(db), o.execution);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    SimConfig control = config;
    control.mode = Mode::IidRayleigh;
    const auto iid = montecarlo::simulate_coverage(params, control, to_linear(db), o.execution);

    const Gap gap = max_gap(db, mc.survival, analytic);
    const Gap iid_gap = max_gap(db, iid.survival, analytic);
    const double tol = mc_tolerance(0.03, o);
    const bool fast = id != 1 || seconds <= 600.0;
    r.passed = std::abs(gap.value) <= tol && fast;
    r.detail = printf_string(
        "max |true-ppp - analytic| = %.4f at %g dB (tol %.3f); iid-rayleigh control %.4f; "
        "%zu trials, window %.1f cell radii%s",
        std::abs(gap.value), gap.at_db, tol, std::abs(iid_gap.value), config.n_trials,
        cell_radii(config, kFigDensity), fast ? "" : "; exceeded 10 min");
    return r;
}

CheckResult criterion_1(const SuiteOptions& o) {
    return ppp_regime(1, kRegimeA, 50000, o);
}

CheckResult criterion_2(const SuiteOptions& o) {
    return ppp_regime(2, kRegimeB, 10000, o);
}

CheckResult criterion_3(const SuiteOptions& o) {
    CheckResult r;
    r.passed = true;
    const auto db = db_grid(-10.0, 20.0, 2.0);
    const double tol = mc_tolerance(0.04, o);
    for (Regime regime : {kRegimeA, kRegimeB}) {
        const NetworkParams params(kFigDensity, regime.alpha, regime.epsilon, 1.0, 0.0);
        const auto analytic =
            analytic_curve(params, db, ServingDistanceModel::uniform_disk(kFigDensity), o);
        SimConfig config = SimConfig::for_network(params, Mode::HexGrid, o.seed);
        config.n_trials = scaled(200000, o);
        const auto mc = montecarlo::simulate_coverage(params, config, to_linear(db), o.execution);
        const Gap gap = max_gap(db, mc.survival, analytic);
        r.passed = r.passed && std::abs(gap.value) <= tol;
        r.detail += printf_string("%salpha %g: %.4f at %g dB", r.detail.empty() ? "" : "; ",
                                  regime.alpha, std::abs(gap.value), gap.at_db);
    }
    r.detail += printf_string(" (tol %.3f)", tol);
    return r;
}

CheckResult criterion_4(const SuiteOptions&) {
    CheckResult r;
    const NetworkParams params(kFigDensity, 4.0, 1.0, 1.0, 0.0);
    const auto model = ServingDistanceModel::uniform_disk(kFigDensity);
    double worst = 0.0;
    for (double t_db : {-5.0, 0.0, 5.0, 10.0}) {
        for (double radius : {0.2, 0.5, 1.0, 2.0}) {
            const double t = db_to_linear(t_db);
            const double nested = analytic::laplace_interference(
                t, radius, params, model, QuadratureSpec{}, analytic::LaplaceRoute::Nested);
            const double closed = analytic::laplace_closed_form_a4(t, radius, kFigDensity);
            worst = std::max(worst, std::abs(closed - nested) / nested);
        }
    }
    r.passed = worst <= 1e-6;
    r.detail = printf_string("max relative error %.2e over 16 points (tol 1e-6)", worst);
    return r;
}

CheckResult criterion_5(const SuiteOptions&) {
    CheckResult r;
    double worst = 0.0;
    for (double alpha : {3.25, 4.0}) {
        const NetworkParams params(kFigDensity, alpha, 1.0, 1.0 / 7.0, 0.0);
        for (const auto& model : {ServingDistanceModel::rayleigh(kFigDensity),
                                  ServingDistanceModel::uniform_disk(kFigDensity)}) {
            for (double t_db : {-10.0, -5.0, 0.0, 5.0, 10.0}) {
                const auto t = SinrThreshold::from_db(t_db);
                const double a = analytic::coverage_probability(params, t, model, QuadratureSpec{});
                const double b =
                    analytic::coverage_full_pc_no_noise(params, t, model, QuadratureSpec{});
                worst = std::max(worst, std::abs(a - b));
            }
        }
    }
    r.passed = worst <= 1e-6;
    r.detail = printf_string("max |p_c(mu = 7) - p_c(mu = 1)| = %.2e (tol 1e-6)", worst);
    return r;
}

QuadratureSpec rate_spec() {
    QuadratureSpec spec;
    spec.rel_tol = 1e-6;
    return spec;
}

CheckResult criterion_6(const SuiteOptions&) {
    CheckResult r;
    double worst = 0.0;
    for (double eps : {0.0, 0.5, 1.0}) {
        const NetworkParams params(0.24, 3.25, eps, 0.2, 0.0);
        const auto id = analytic::rate_coverage_identity_check(
            params, ServingDistanceModel::rayleigh(0.24), rate_spec());
        worst = std::max(worst, id.relative());
        r.detail += printf_string("%seps %.1f: %.6f vs %.6f", r.detail.empty() ? "" : "; ", eps,
                                  id.direct, id.via_coverage);
    }
    r.passed = worst <= 1e-3;
    r.detail += printf_string("; max relative residual %.2e (tol 1e-3)", worst);
    return r;
}

CheckResult criterion_7(const SuiteOptions&) {
    CheckResult r;
    // Independent evaluation of rho(1, 4) = int_1^inf du / (1 + u^2).
    boost::math::quadrature::exp_sinh<double> quad;
    const double oracle_rho = quad.integrate([](double u) { return 1.0 / (1.0 + u * u); }, 1.0,
                                             std::numeric_limits<double>::infinity());
    const double rho = analytic::downlink_rho(1.0, 4.0, QuadratureSpec{});
    const double pc = analytic::downlink_coverage(1.0, kFigDensity, 4.0, 1.0, 0.0, QuadratureSpec{});
    const bool rho_ok = std::abs(oracle_rho - M_PI / 4.0) <= 1e-9 && std::abs(rho - oracle_rho) <= 1e-9;
    r.passed = rho_ok && std::abs(pc - 0.56010) <= 1e-3;
    r.detail = printf_string("p_c = %.6f (target 0.56010 +- 1e-3); rho = %.10f, oracle %.10f", pc,
                             rho, oracle_rho);
    return r;
}

CheckResult criterion_8(const SuiteOptions& o) {
    CheckResult r;
    SimConfig config = SimConfig::defaults(kFigDensity, Mode::TruePpp, o.seed);
    config.n_trials = 1000000;
    const auto truth =
        montecarlo::neighbor_rz_stats(kFigDensity, config, scaled(20000, o), 20, o.execution);
    config.mode = Mode::IidRayleigh;
    const auto control = montecarlo::neighbor_rz_stats(kFigDensity, config, 200000, 20, o.execution);
    const double band = mc_tolerance(0.03, o);
    const double control_band = mc_tolerance(0.01, o);
    r.passed = std::abs(truth.correlation - 0.07) <= band &&
               std::abs(control.correlation) <= control_band;
    r.detail = printf_string(
        "true-ppp rho = %.4f over %zu pairs (0.07 +- %.3f); iid control rho = %.4f over %zu pairs "
        "(|rho| <= %.3f)",
        truth.correlation, truth.pairs.size(), band, control.correlation, control.pairs.size(),
        control_band);
    return r;
}

CheckResult criterion_9(const SuiteOptions&) {
    CheckResult r;
    const NetworkParams params = profile::uplink(0.0, 3.7);
    const auto grid = analytic::epsilon_grid(0.05);
    const auto model = ServingDistanceModel::rayleigh(params.density());
    const auto low =
        analytic::optimal_epsilon(SinrThreshold::from_db(-10.0), params, model, grid, QuadratureSpec{});
    const auto high =
        analytic::optimal_epsilon(SinrThreshold::from_db(20.0), params, model, grid, QuadratureSpec{});
    r.passed = low.best_epsilon >= 0.20 - 1e-12 && low.best_epsilon <= 0.35 + 1e-12 &&
               high.best_epsilon == 0.0;
    r.detail = printf_string("eps(-10 dB) = %.2f in [0.20, 0.35]; eps(20 dB) = %.2f, expected 0",
                             low.best_epsilon, high.best_epsilon);
    return r;
}

CheckResult criterion_10(const SuiteOptions& o) {
    CheckResult r;
    const double p_max = dbm_to_watts(23.0);
    r.passed = true;
    for (double eps : {0.75, 1.0}) {
        const NetworkParams params(0.24, 3.7, eps, dbm_to_watts(10.0), 0.0);
        SimConfig config = SimConfig::defaults(0.24, Mode::TruePpp, o.seed);
        config.n_trials = scaled(2000, o);
        const auto powers = montecarlo::tx_power_samples_dbm(params, p_max, config, o.execution);
        const auto below = std::count_if(powers.begin(), powers.end(), [](double p) { return p < 0.0; });
        const double fraction = static_cast<double>(below) / static_cast<double>(powers.size());
        r.passed = r.passed && fraction >= 0.08 && fraction <= 0.17;
        r.detail += printf_string("eps %.2f: %.4f below 0 dBm; ", eps, fraction);
    }
    const NetworkParams flat(0.24, 3.7, 0.0, dbm_to_watts(10.0), 0.0);
    SimConfig config = SimConfig::defaults(0.24, Mode::TruePpp, o.seed);
    config.n_trials = scaled(200, o);
    const auto powers = montecarlo::tx_power_samples_dbm(flat, p_max, config, o.execution);
    double spread = 0.0;
    for (double p : powers) {
        spread = std::max(spread, std::abs(p - 10.0));
    }
    const bool step = !powers.empty() && spread <= 1e-9;
    r.passed = r.passed && step;
    r.detail += printf_string("band [0.08, 0.17]; eps 0 %s at 10 dBm (max deviation %.1e dB)",
                              step ? "is a step" : "is not a step", spread);
    return r;
}

std::vector<NetworkParams> property_params() {
    const double noise = profile::noise_km();
    return {
        NetworkParams(0.25, 4.0, 1.0, 1.0, 0.0),   NetworkParams(0.25, 3.25, 0.75, 1.0, 0.0),
        NetworkParams(0.24, 3.7, 0.0, 0.2, noise), NetworkParams(0.24, 3.7, 0.5, 0.2, noise),
        NetworkParams(0.24, 2.5, 0.25, 0.2, noise), NetworkParams(1.0, 3.0, 1.0, 0.2, noise),
    };
}

CheckResult criterion_11(const SuiteOptions& o) {
    CheckResult r;
    std::vector<std::string> failures;

    const auto db = db_grid(-15.0, 15.0, 1.0);
    int curves = 0;
    for (const auto& params : property_params()) {
        for (const auto& model : {ServingDistanceModel::rayleigh(params.density()),
                                  ServingDistanceModel::uniform_disk(params.density())}) {
            const auto p = analytic_curve(params, db, model, o);
            ++curves;
            for (std::size_t i = 0; i < p.size(); ++i) {
                const bool bounded = p[i] >= 0.0 && p[i] <= 1.0;
                const bool monotone = i == 0 || p[i] <= p[i - 1] + 1e-9;
                if (!bounded || !monotone) {
                    failures.push_back(printf_string("p_c curve %d at %g dB", curves, db[i]));
                    break;
                }
            }
        }
    }

    for (const auto& params : property_params()) {
        const auto model = ServingDistanceModel::rayleigh(params.density());
        const double radius = params.mean_cell_radius();
        double previous = analytic::laplace_interference(0.0, radius, params, model, QuadratureSpec{});
        if (previous != 1.0) {
            failures.push_back("L(0) != 1");
        }
        for (double s : {0.01, 0.1, 1.0, 10.0, 100.0}) {
            const double l = analytic::laplace_interference(s, radius, params, model, QuadratureSpec{},
                                                            analytic::LaplaceRoute::Reduced);
            if (l > previous + 1e-12) {
                failures.push_back(printf_string("L increasing at s = %g", s));
            }
            previous = l;
        }
    }

    double scale_gap = 0.0;
    for (const auto& params : property_params()) {
        if (params.noise() != 0.0) {
            continue;
        }
        for (const auto& model : {ServingDistanceModel::rayleigh(params.density()),
                                  ServingDistanceModel::uniform_disk(params.density())}) {
            const auto dense = params.with_density(4.0 * params.density());
            for (double t_db : {-10.0, 0.0, 10.0}) {
                const auto t = SinrThreshold::from_db(t_db);
                const double a = analytic::coverage_probability(params, t, model, QuadratureSpec{});
                const double b = analytic::coverage_probability(
                    dense, t, model.with_density(dense.density()), QuadratureSpec{});
                scale_gap = std::max(scale_gap, std::abs(a - b));
            }
        }
    }
    if (scale_gap > 1e-6) {
        failures.push_back(printf_string("density scaling gap %.2e", scale_gap));
    }

    SimConfig config = SimConfig::defaults(kFigDensity, Mode::IidRayleigh, o.seed);
    config.n_trials = scaled(100000, o);
    const auto distances = montecarlo::serving_distance_samples(kFigDensity, config, o.execution);
    const auto rayleigh = ServingDistanceModel::rayleigh(kFigDensity);
    const double ks =
        montecarlo::ks_distance(distances, [&](double x) { return 1.0 - rayleigh.ccdf(x); });
    const double ks_tol = mc_tolerance(0.01, o);
    if (ks > ks_tol) {
        failures.push_back(printf_string("serving distance KS %.4f", ks));
    }

    const NetworkParams params(kFigDensity, 4.0, 1.0, 1.0, 0.0);
    SimConfig small = SimConfig::defaults(kFigDensity, Mode::TruePpp, o.seed);
    small.n_trials = 200;
    const auto thresholds = to_linear(db);
    auto render = [&](Execution execution) {
        const auto c = montecarlo::simulate_coverage(params, small, thresholds, execution);
        io::CsvTable table({"threshold_db", "p_c_mc", "mc_stderr"});
        for (std::size_t i = 0; i < db.size(); ++i) {
            table.add_row({db[i], c.survival[i], c.std_error[i]});
        }
        return table.to_string();
    };
    const std::string first = render(o.execution);
    const bool deterministic =
        first == render(o.execution) && first == render(Execution::Serial);
    if (!deterministic) {
        failures.push_back("simulation CSV differs between identical runs");
    }

    r.passed = failures.empty();
    r.detail = printf_string(
        "%d curves bounded and monotone, L(0) = 1 and decreasing, density gap %.1e, KS %.4f "
        "(tol %.3f) over %zu samples, CSV %s",
        curves, scale_gap, ks, ks_tol, distances.size(),
        deterministic ? "byte-identical" : "differs");
    for (const auto& f : failures) {
        r.detail += "; FAILED " + f;
    }
    return r;
}

CheckResult criterion_12(const SuiteOptions&) {
    CheckResult r;
    double worst = 0.0;
    std::string where;
    for (double alpha : {2.5, 3.25, 4.0}) {
        for (double eps : {0.0, 0.5, 1.0}) {
            const NetworkParams noisy = profile::uplink(eps, alpha);
            const auto model = ServingDistanceModel::rayleigh(noisy.density());
            const double with_noise = analytic::average_rate(noisy, model, rate_spec());
            const double without = analytic::average_rate(noisy.with_noise(0.0), model, rate_spec());
            const double rel = std::abs(without - with_noise) / without;
            if (rel > worst) {
                worst = rel;
                where = printf_string("alpha %g, eps %g", alpha, eps);
            }
        }
    }
    r.passed = worst <= 0.05;
    r.detail = printf_string("max relative rate change %.4f at %s (tol 0.05)", worst, where.c_str());
    return r;
}

constexpr const char* kTitles[kCriterionCount] = {
    "PPP coverage, alpha 4, eps 1",
    "PPP coverage, alpha 3.25, eps 0.75",
    "hex grid vs uniform-disk model",
    "alpha 4 closed-form Laplace transform",
    "full power control is mu-independent",
    "rate equals integral of coverage",
    "downlink closed form",
    "neighbour R_z correlation",
    "optimal eps plateaus",
    "transmit power CCDF",
    "property suite",
    "noise barely changes the rate",
};

using Check = CheckResult (*)(const SuiteOptions&);

constexpr Check kChecks[kCriterionCount] = {
    criterion_1, criterion_2, criterion_3, criterion_4,  criterion_5,  criterion_6,
    criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12,
};

}  // namespace

CheckResult run_criterion(int id, const SuiteOptions& options) {
    if (id < 1 || id > kCriterionCount) {
        throw std::out_of_range("criterion id must be in 1..12");
    }
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
        r = kChecks[id - 1](options);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.id = id;
    r.title = kTitles[id - 1];
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<CheckResult> run_suite(const SuiteOptions& options,
                                   const std::function<void(const CheckResult&)>& on_result) {
    std::vector<CheckResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) {
        if (!options.only.empty() && !options.only.contains(id)) {
            continue;
        }
        out.push_back(run_criterion(id, options));
        if (on_result) {
            on_result(out.back());
        }
    }
    return out;
}

std::string format_result(const CheckResult& result) {
    return printf_string("[%s] %2d %s: ", result.passed ? "PASS" : "FAIL", result.id,
                         result.title.c_str()) +
           result.detail;
}

}  // namespace uplink::validation
