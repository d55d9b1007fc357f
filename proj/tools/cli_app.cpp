#include "cli_app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "uplink/analytic.hpp"
#include "uplink/csv.hpp"
#include "uplink/montecarlo.hpp"
#include "uplink/params.hpp"
#include "uplink/quadrature.hpp"
#include "uplink/validation.hpp"

namespace uplink::cli {

namespace {

using nlohmann::json;
using analytic::ServingDistanceModel;
using montecarlo::Mode;
using montecarlo::SimConfig;

constexpr const char* kVersion = "0.1.0";

/// Raised for inconsistent or out-of-range settings; maps to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat JSON config: {"alpha": 4, "no-noise": true}. Objects nest into
/// subcommands, e.g. {"coverage": {"t-step-db": 2}}.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override {
        return "{}";
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json doc;
        try {
            doc = json::parse(input);
        } catch (const json::exception& e) {
            throw CLI::ConversionError(std::string("config file: ") + e.what());
        }
        if (!doc.is_object()) {
            throw CLI::ConversionError("config file must hold a JSON object");
        }
        std::vector<CLI::ConfigItem> items;
        flatten(doc, {}, items);
        return items;
    }

private:
    static std::string scalar(const json& v) {
        if (v.is_string()) {
            return v.get<std::string>();
        }
        if (v.is_boolean()) {
            return v.get<bool>() ? "true" : "false";
        }
        return v.dump();
    }

    static void flatten(const json& node, const std::vector<std::string>& parents,
                        std::vector<CLI::ConfigItem>& items) {
        for (const auto& [key, value] : node.items()) {
            if (value.is_object()) {
                auto next = parents;
                next.push_back(key);
                flatten(value, next, items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                for (const auto& v : value) {
                    item.inputs.push_back(scalar(v));
                }
            } else {
                item.inputs.push_back(scalar(value));
            }
            items.push_back(std::move(item));
        }
    }
};

struct Shared {
    double lambda = profile::kDensityPerKm2;
    double alpha = alpha_from_pathloss_slope(profile::kPathlossSlopeDb);
    double eps = 1.0;
    double mu_inv_dbm = profile::kUplinkMaxPowerDbm;
    double sigma2_dbm = watts_to_dbm(profile::noise_watts());
    double sigma2 = 0.0;
    bool no_noise = false;
    std::string model = "rayleigh";
    std::uint64_t seed = 1;
    std::size_t trials = 200000;
    std::string out;
    bool quick = false;
    bool serial = false;

    CLI::Option* mu_inv_option = nullptr;
    CLI::Option* sigma2_option = nullptr;
    CLI::Option* trials_option = nullptr;

    Execution execution() const { return serial ? Execution::Serial : Execution::Parallel; }

    /// Noise in model units (distances in km). --sigma2 is taken as is;
    /// --sigma2-dbm is a physical power moved through the 111 dB 1 km loss.
    double noise() const {
        if (no_noise) {
            return 0.0;
        }
        if (sigma2_option && sigma2_option->count() > 0) {
            return sigma2;
        }
        return noise_for_reference_loss(dbm_to_watts(sigma2_dbm), profile::reference_loss_db());
    }

    /// The baseline power, with a per-command default when not set.
    double baseline_dbm(double fallback) const {
        return mu_inv_option && mu_inv_option->count() > 0 ? mu_inv_dbm : fallback;
    }

    NetworkParams params(double eps_value, double baseline_dbm_value) const {
        try {
            return NetworkParams(lambda, alpha, eps_value, dbm_to_watts(baseline_dbm_value),
                                 noise());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }

    ServingDistanceModel distance_model() const {
        if (model == "rayleigh") {
            return ServingDistanceModel::rayleigh(lambda);
        }
        if (model == "uniform-disk") {
            return ServingDistanceModel::uniform_disk(lambda);
        }
        throw ConfigError("--model must be rayleigh or uniform-disk");
    }

    std::size_t trial_count() const {
        const std::size_t n = trials;
        return quick && !(trials_option && trials_option->count() > 0)
                   ? std::max<std::size_t>(1, n / validation::kQuickTrialDivisor)
                   : n;
    }
};

std::vector<double> db_range(double lo, double hi, double step) {
    if (!(step > 0.0) || hi < lo) {
        throw ConfigError("threshold range needs step > 0 and max >= min");
    }
    std::vector<double> out;
    for (int i = 0; lo + i * step <= hi + 1e-9 * step; ++i) {
        out.push_back(lo + i * step);
    }
    return out;
}

Mode parse_mode(const std::string& name) {
    for (Mode m : {Mode::TruePpp, Mode::IidRayleigh, Mode::HexGrid, Mode::DownlinkUserPpp}) {
        if (name == montecarlo::mode_name(m)) {
            return m;
        }
    }
    throw ConfigError("unknown simulation mode " + name);
}

std::filesystem::path manifest_path(const std::filesystem::path& data) {
    auto p = data;
    p.replace_extension(".manifest.json");
    return p;
}

json params_json(const NetworkParams& p) {
    return {{"density_per_km2", p.density()},
            {"alpha", p.alpha()},
            {"epsilon", p.epsilon()},
            {"baseline_power_w", p.baseline_power()},
            {"baseline_power_dbm", watts_to_dbm(p.baseline_power())},
            {"noise_model_units", p.noise()}};
}

/// Collects what a command produced and writes data plus manifest.
class Emitter {
public:
    Emitter(std::string command, const Shared& shared, std::ostream& out)
        : command_(std::move(command)), shared_(shared), out_(out),
          start_(std::chrono::steady_clock::now()) {
        numerics::ledger().reset();
        manifest_["command"] = command_;
        manifest_["tool_version"] = kVersion;
        manifest_["seed"] = shared.seed;
        manifest_["user_units"] = {
            {"lambda_per_km2", shared.lambda}, {"alpha", shared.alpha},
            {"eps", shared.eps},               {"mu_inv_dbm", shared.mu_inv_dbm},
            {"sigma2_dbm", shared.sigma2_dbm}, {"no_noise", shared.no_noise},
            {"model", shared.model},           {"quick", shared.quick},
        };
    }

    json& manifest() { return manifest_; }

    void emit(const io::CsvTable& table) {
        const auto seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        if (shared_.out.empty()) {
            out_ << table.to_string();
            return;
        }
        const std::filesystem::path path(shared_.out);
        table.write(path);
        manifest_["data_file"] = path.filename().string();
        manifest_["rows"] = table.rows().size();
        manifest_["wall_clock_s"] = seconds;
        manifest_["quadrature"] = {{"integrals", numerics::ledger().integrals.load()},
                                   {"evaluations", numerics::ledger().evaluations.load()}};
        io::write_text(manifest_path(path), manifest_.dump(2) + "\n");
    }

private:
    std::string command_;
    const Shared& shared_;
    std::ostream& out_;
    std::chrono::steady_clock::time_point start_;
    json manifest_;
};

void dump_samples(const std::string& path, const std::vector<double>& sinr) {
    std::string text;
    for (double s : sinr) {
        text += io::format_number(linear_to_db(s)) + "\n";
    }
    io::write_text(path, text);
}

struct CoverageOptions {
    double t_min_db = -15.0;
    double t_max_db = 15.0;
    double t_step_db = 1.0;
    std::optional<double> threshold_db;
    std::optional<double> t_linear;
    bool simulate = false;
    std::string mode;
    std::string dump;
};

void cmd_coverage(const Shared& s, const CoverageOptions& o, std::ostream& out) {
    const NetworkParams params = s.params(s.eps, s.baseline_dbm(s.mu_inv_dbm));
    const auto model = s.distance_model();

    std::vector<double> linear;
    if (o.t_linear) {
        if (!(*o.t_linear >= 0.0)) {
            throw ConfigError("--t-linear must be >= 0");
        }
        linear = {*o.t_linear};
    } else if (o.threshold_db) {
        linear = {db_to_linear(*o.threshold_db)};
    } else {
        for (double db : db_range(o.t_min_db, o.t_max_db, o.t_step_db)) {
            linear.push_back(db_to_linear(db));
        }
    }

    const bool closed_form = model.kind() == ServingDistanceModel::Kind::UniformDisk &&
                             params.alpha() == 4.0 && params.epsilon() == 1.0 &&
                             params.noise() == 0.0;
    std::vector<std::string> header{"threshold_db", "threshold_linear", "p_c_analytic"};
    if (closed_form) {
        header.push_back("p_c_closed_form");
    }

    std::optional<montecarlo::EmpiricalCcdf> mc;
    Emitter emitter("coverage", s, out);
    if (o.simulate) {
        const Mode mode = o.mode.empty()
                              ? (closed_form || model.kind() == ServingDistanceModel::Kind::UniformDisk
                                     ? Mode::HexGrid
                                     : Mode::TruePpp)
                              : parse_mode(o.mode);
        if (mode == Mode::DownlinkUserPpp) {
            throw ConfigError("coverage simulates uplink modes only");
        }
        SimConfig config = SimConfig::for_network(params, mode, s.seed);
        config.n_trials = s.trial_count();
        const auto samples = montecarlo::sinr_samples(params, config, s.execution());
        mc = montecarlo::empirical_ccdf(samples.values, linear);
        if (!o.dump.empty()) {
            dump_samples(o.dump, samples.values);
        }
        header.push_back("p_c_mc");
        header.push_back("mc_stderr");
        emitter.manifest()["simulation"] = {{"mode", montecarlo::mode_name(mode)},
                                           {"trials", config.n_trials},
                                           {"window_radius_km", config.window_radius},
                                           {"guard_radius_km", config.guard_radius},
                                           {"redraws", samples.redraws}};
    }

    io::CsvTable table(header);
    const QuadratureSpec spec;
    std::vector<double> analytic(linear.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (s.execution() == Execution::Parallel)
    for (long i = 0; i < static_cast<long>(linear.size()); ++i) {
        try {
            analytic[i] = analytic::coverage_probability_linear(params, linear[i], model, spec);
        } catch (...) {
#pragma omp critical
            failure = std::current_exception();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    for (std::size_t i = 0; i < linear.size(); ++i) {
        std::vector<double> row{linear[i] > 0.0 ? linear_to_db(linear[i]) : -INFINITY, linear[i],
                                analytic[i]};
        if (closed_form) {
            row.push_back(linear[i] > 0.0 ? analytic::coverage_closed_form_a4(
                                                params, SinrThreshold::from_linear(linear[i]), spec)
                                          : 1.0);
        }
        if (mc) {
            row.push_back(mc->survival[i]);
            row.push_back(mc->std_error[i]);
        }
        table.add_row(std::move(row));
    }
    emitter.manifest()["params"] = params_json(params);
    emitter.manifest()["model"] = std::string(model.name());
    emitter.emit(table);
}

struct RateOptions {
    std::vector<double> alphas{2.5, 3.25, 4.0};
    double eps_step = 0.1;
};

void cmd_rate(const Shared& s, const RateOptions& o, std::ostream& out) {
    Emitter emitter("rate", s, out);
    const auto grid = analytic::epsilon_grid(o.eps_step);
    const auto model = s.distance_model();
    QuadratureSpec spec;
    spec.rel_tol = 1e-6;
    struct Job {
        double alpha, eps, quiet = 0.0, noisy = 0.0;
    };
    std::vector<Job> jobs;
    for (double a : o.alphas) {
        for (double e : grid) {
            jobs.push_back({a, e});
        }
    }
    const double baseline = s.baseline_dbm(s.mu_inv_dbm);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (s.execution() == Execution::Parallel)
    for (long i = 0; i < static_cast<long>(jobs.size()); ++i) {
        try {
            Shared local = s;
            local.alpha = jobs[i].alpha;
            const NetworkParams p = local.params(jobs[i].eps, baseline);
            jobs[i].noisy = analytic::average_rate(p, model, spec);
            jobs[i].quiet = p.noise() == 0.0
                                ? jobs[i].noisy
                                : analytic::average_rate(p.with_noise(0.0), model, spec);
        } catch (...) {
#pragma omp critical
            failure = std::current_exception();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    io::CsvTable table({"alpha", "eps", "rate_no_noise_nats_per_hz", "rate_with_noise_nats_per_hz",
                        "relative_change"});
    for (const auto& j : jobs) {
        table.add_row({j.alpha, j.eps, j.quiet, j.noisy, (j.quiet - j.noisy) / j.quiet});
    }
    emitter.manifest()["params"] = params_json(s.params(s.eps, baseline));
    emitter.manifest()["alphas"] = o.alphas;
    emitter.emit(table);
}

struct OptEpsOptions {
    std::vector<double> alphas{2.5, 3.2, 3.7};
    double t_min_db = -20.0;
    double t_max_db = 25.0;
    double t_step_db = 1.0;
    double eps_step = 0.05;
};

void cmd_opt_eps(const Shared& s, const OptEpsOptions& o, std::ostream& out) {
    Emitter emitter("opt-eps", s, out);
    const auto db = db_range(o.t_min_db, o.t_max_db, o.t_step_db);
    const auto grid = analytic::epsilon_grid(o.eps_step);
    const auto model = s.distance_model();
    const double baseline = s.baseline_dbm(s.mu_inv_dbm);
    struct Job {
        double alpha, db, eps = 0.0, pc = 0.0;
    };
    std::vector<Job> jobs;
    for (double a : o.alphas) {
        for (double t : db) {
            jobs.push_back({a, t});
        }
    }
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (s.execution() == Execution::Parallel)
    for (long i = 0; i < static_cast<long>(jobs.size()); ++i) {
        try {
            Shared local = s;
            local.alpha = jobs[i].alpha;
            const auto best = analytic::optimal_epsilon(SinrThreshold::from_db(jobs[i].db),
                                                        local.params(0.0, baseline), model, grid,
                                                        QuadratureSpec{});
            jobs[i].eps = best.best_epsilon;
            jobs[i].pc = best.best_coverage;
        } catch (...) {
#pragma omp critical
            failure = std::current_exception();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    io::CsvTable table({"alpha", "threshold_db", "eps_hat", "p_c_at_eps_hat"});
    for (const auto& j : jobs) {
        table.add_row({j.alpha, j.db, j.eps, j.pc});
    }
    emitter.manifest()["alphas"] = o.alphas;
    emitter.manifest()["eps_step"] = o.eps_step;
    emitter.emit(table);
}

struct DlUlOptions {
    std::vector<double> uplink_eps{0.6, 0.8, 1.0};
    double dl_power_dbm = profile::kDownlinkPowerDbm;
    double t_min_db = -10.0;
    double t_max_db = 20.0;
    double t_step_db = 1.0;
    bool simulate = false;
};

void cmd_dl_ul(const Shared& s, const DlUlOptions& o, std::ostream& out) {
    const auto db = db_range(o.t_min_db, o.t_max_db, o.t_step_db);
    const auto model = s.distance_model();
    const double baseline = s.baseline_dbm(s.mu_inv_dbm);
    const NetworkParams downlink = s.params(0.0, o.dl_power_dbm);

    std::vector<std::string> header{"threshold_db", "p_c_downlink", "p_c_downlink_no_noise"};
    for (double e : o.uplink_eps) {
        header.push_back("p_c_uplink_eps_" + io::format_number(e));
    }
    std::optional<montecarlo::EmpiricalCcdf> mc;
    Emitter emitter("dl-ul", s, out);
    if (o.simulate) {
        SimConfig config = SimConfig::for_network(downlink, Mode::DownlinkUserPpp, s.seed);
        config.n_trials = s.trial_count();
        std::vector<double> linear;
        for (double t : db) {
            linear.push_back(db_to_linear(t));
        }
        mc = montecarlo::simulate_downlink_userppp(downlink, config, linear, s.execution());
        header.push_back("p_c_downlink_user_ppp_mc");
        header.push_back("mc_stderr");
        emitter.manifest()["simulation"] = {{"mode", "downlink-user-ppp"},
                                           {"trials", config.n_trials},
                                           {"window_radius_km", config.window_radius}};
    }
    io::CsvTable table(header);
    const QuadratureSpec spec;
    for (std::size_t i = 0; i < db.size(); ++i) {
        const double t = db_to_linear(db[i]);
        std::vector<double> row{db[i]};
        row.push_back(analytic::downlink_coverage(t, downlink.density(), downlink.alpha(),
                                                  downlink.mu(), downlink.noise(), spec));
        row.push_back(1.0 / (1.0 + analytic::downlink_rho(t, downlink.alpha(), spec)));
        for (double e : o.uplink_eps) {
            row.push_back(analytic::coverage_probability(s.params(e, baseline),
                                                         SinrThreshold::from_db(db[i]), model, spec));
        }
        if (mc) {
            row.push_back(mc->survival[i]);
            row.push_back(mc->std_error[i]);
        }
        table.add_row(std::move(row));
    }
    emitter.manifest()["downlink_params"] = params_json(downlink);
    emitter.manifest()["uplink_eps"] = o.uplink_eps;
    emitter.emit(table);
}

struct TxPowerOptions {
    std::vector<double> eps{0.0, 0.25, 0.5, 0.75, 1.0};
    double p_max_dbm = profile::kUplinkMaxPowerDbm;
    double p_min_grid_dbm = -30.0;
    double step_db = 0.5;
};

void cmd_txpower(const Shared& s, const TxPowerOptions& o, std::ostream& out) {
    // 10 dBm baseline against a 23 dBm cap.
    const double baseline = s.baseline_dbm(10.0);
    const auto grid = db_range(o.p_min_grid_dbm, o.p_max_dbm, o.step_db);
    std::vector<std::string> header{"power_dbm"};
    std::vector<montecarlo::EmpiricalCcdf> curves;
    Emitter emitter("txpower", s, out);
    json below = json::object();
    for (double e : o.eps) {
        const NetworkParams p = s.params(e, baseline);
        SimConfig config = SimConfig::defaults(p.density(), Mode::TruePpp, s.seed);
        config.n_trials = std::max<std::size_t>(1, s.trial_count() / 100);
        const auto samples =
            montecarlo::tx_power_samples_dbm(p, dbm_to_watts(o.p_max_dbm), config, s.execution());
        curves.push_back(montecarlo::empirical_ccdf(samples, grid));
        const auto n_below =
            std::count_if(samples.begin(), samples.end(), [](double x) { return x < 0.0; });
        below[io::format_number(e)] =
            static_cast<double>(n_below) / static_cast<double>(std::max<std::size_t>(1, samples.size()));
        header.push_back("ccdf_eps_" + io::format_number(e));
    }
    io::CsvTable table(header);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<double> row{grid[i]};
        for (const auto& c : curves) {
            row.push_back(c.survival[i]);
        }
        table.add_row(std::move(row));
    }
    emitter.manifest()["baseline_power_dbm"] = baseline;
    emitter.manifest()["p_max_dbm"] = o.p_max_dbm;
    emitter.manifest()["fraction_below_0_dbm"] = below;
    emitter.emit(table);
}

struct RzStatsOptions {
    bool iid = false;
    std::size_t pairs = 20000;
    std::size_t bins = 20;
};

void cmd_rzstats(const Shared& s, const RzStatsOptions& o, std::ostream& out, std::ostream& err) {
    if (!(s.lambda > 0.0)) {
        throw ConfigError("--lambda must be positive");
    }
    Emitter emitter("rzstats", s, out);
    SimConfig config =
        SimConfig::defaults(s.lambda, o.iid ? Mode::IidRayleigh : Mode::TruePpp, s.seed);
    config.n_trials = s.trial_count();
    const std::size_t pairs =
        s.quick ? std::max<std::size_t>(1, o.pairs / validation::kQuickTrialDivisor) : o.pairs;
    const auto stats = montecarlo::neighbor_rz_stats(s.lambda, config, pairs, o.bins, s.execution());
    io::CsvTable table({"rz1_km", "rz2_km", "joint_density", "product_density"});
    for (std::size_t i = 0; i < stats.bins; ++i) {
        for (std::size_t j = 0; j < stats.bins; ++j) {
            const std::size_t k = i * stats.bins + j;
            table.add_row({(i + 0.5) * stats.bin_width, (j + 0.5) * stats.bin_width,
                           stats.joint_density[k], stats.product_density[k]});
        }
    }
    err << "rho = " << io::format_number(stats.correlation) << " over " << stats.pairs.size()
        << " pairs\n";
    emitter.manifest()["mode"] = montecarlo::mode_name(config.mode);
    emitter.manifest()["correlation"] = stats.correlation;
    emitter.manifest()["pairs"] = stats.pairs.size();
    emitter.manifest()["realizations"] = stats.realizations;
    emitter.emit(table);
}

struct ValidateOptions {
    bool full = false;
    std::vector<int> only;
};

int cmd_validate(const Shared& s, const ValidateOptions& o, std::ostream& out) {
    validation::SuiteOptions options;
    options.quick = s.quick;
    options.full = o.full;
    options.seed = s.seed;
    options.execution = s.execution();
    options.only.insert(o.only.begin(), o.only.end());
    std::string report;
    bool ok = true;
    validation::run_suite(options, [&](const validation::CheckResult& r) {
        const std::string line = validation::format_result(r) + "\n";
        report += line;
        ok = ok && r.passed;
        if (!s.out.empty()) {
            out << line << std::flush;
        }
    });
    if (s.out.empty()) {
        out << report;
    } else {
        io::write_text(s.out, report);
    }
    return ok ? kOk : kValidationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Uplink coverage and rate under fractional power control", "uplink"};
    app.require_subcommand(1);
    app.fallthrough();
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON file with flat keys named after the flags");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.set_version_flag("--version", kVersion);

    Shared s;
    app.add_option("--lambda", s.lambda, "base station density per km^2")->capture_default_str();
    app.add_option("--alpha", s.alpha, "pathloss exponent")->capture_default_str();
    app.add_option("--eps", s.eps, "power control factor in [0, 1]")->capture_default_str();
    s.mu_inv_option = app.add_option("--mu-inv-dbm", s.mu_inv_dbm, "baseline transmit power, dBm");
    auto* sigma2_dbm = app.add_option("--sigma2-dbm", s.sigma2_dbm,
                                      "noise power in dBm against the 111 dB loss at 1 km");
    s.sigma2_option = app.add_option("--sigma2", s.sigma2, "noise power in model units (linear)");
    auto* no_noise = app.add_flag("--no-noise", s.no_noise, "sigma^2 = 0");
    no_noise->excludes(sigma2_dbm)->excludes(s.sigma2_option);
    sigma2_dbm->excludes(s.sigma2_option);
    app.add_option("--model", s.model, "rayleigh | uniform-disk")->capture_default_str();
    app.add_option("--seed", s.seed, "simulation seed")->capture_default_str();
    s.trials_option = app.add_option("--trials", s.trials, "Monte Carlo trials");
    app.add_option("--out", s.out, "output file; a .manifest.json is written next to it");
    app.add_flag("--quick", s.quick, "reduced trial counts");
    app.add_flag("--serial", s.serial, "disable OpenMP");

    CoverageOptions cov;
    auto* coverage = app.add_subcommand("coverage", "uplink coverage curve");
    coverage->add_option("--t-min-db", cov.t_min_db)->capture_default_str();
    coverage->add_option("--t-max-db", cov.t_max_db)->capture_default_str();
    coverage->add_option("--t-step-db", cov.t_step_db)->capture_default_str();
    coverage->add_option_function<double>(
        "--threshold-db", [&](double v) { cov.threshold_db = v; }, "single threshold in dB");
    coverage->add_option_function<double>("--t-linear", [&](double v) { cov.t_linear = v; },
                                           "single linear threshold, may be 0; wins over --threshold-db");
    coverage->add_flag("--simulate", cov.simulate, "add Monte Carlo columns");
    coverage->add_option("--mode", cov.mode,
                         "true-ppp | iid-rayleigh | hex-grid (default follows --model)");
    coverage->add_option("--dump-samples", cov.dump, "write simulated SINR in dB, one per line");

    RateOptions rate_opts;
    auto* rate = app.add_subcommand("rate", "average rate against eps, with and without noise");
    rate->add_option("--alphas", rate_opts.alphas)->capture_default_str();
    rate->add_option("--eps-step", rate_opts.eps_step)->capture_default_str();

    OptEpsOptions opt;
    auto* opt_eps = app.add_subcommand("opt-eps", "coverage-maximizing eps per threshold");
    opt_eps->add_option("--alphas", opt.alphas)->capture_default_str();
    opt_eps->add_option("--t-min-db", opt.t_min_db)->capture_default_str();
    opt_eps->add_option("--t-max-db", opt.t_max_db)->capture_default_str();
    opt_eps->add_option("--t-step-db", opt.t_step_db)->capture_default_str();
    opt_eps->add_option("--eps-step", opt.eps_step)->capture_default_str();

    DlUlOptions dl;
    auto* dl_ul = app.add_subcommand("dl-ul", "downlink against uplink coverage");
    dl_ul->add_option("--uplink-eps", dl.uplink_eps)->capture_default_str();
    dl_ul->add_option("--dl-power-dbm", dl.dl_power_dbm)->capture_default_str();
    dl_ul->add_option("--t-min-db", dl.t_min_db)->capture_default_str();
    dl_ul->add_option("--t-max-db", dl.t_max_db)->capture_default_str();
    dl_ul->add_option("--t-step-db", dl.t_step_db)->capture_default_str();
    dl_ul->add_flag("--simulate", dl.simulate, "add the user-PPP downlink simulation");

    TxPowerOptions tx;
    auto* txpower = app.add_subcommand("txpower", "CCDF of per-mobile transmit power");
    txpower->add_option("--eps-list", tx.eps)->capture_default_str();
    txpower->add_option("--p-max-dbm", tx.p_max_dbm)->capture_default_str();
    txpower->add_option("--grid-min-dbm", tx.p_min_grid_dbm)->capture_default_str();
    txpower->add_option("--grid-step-db", tx.step_db)->capture_default_str();

    RzStatsOptions rz;
    auto* rzstats = app.add_subcommand("rzstats", "joint statistics of neighbouring R_z");
    rzstats->add_flag("--iid", rz.iid, "independent Rayleigh control");
    rzstats->add_option("--pairs", rz.pairs)->capture_default_str();
    rzstats->add_option("--bins", rz.bins)->capture_default_str();

    ValidateOptions val;
    auto* validate = app.add_subcommand("validate", "run the acceptance checks");
    validate->add_flag("--full", val.full, "full trial counts for the PPP curves");
    validate->add_option("--only", val.only, "criteria to run")->delimiter(',');

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kConfigError;
    }

    try {
        if (coverage->parsed()) {
            cmd_coverage(s, cov, out);
        } else if (rate->parsed()) {
            cmd_rate(s, rate_opts, out);
        } else if (opt_eps->parsed()) {
            cmd_opt_eps(s, opt, out);
        } else if (dl_ul->parsed()) {
            cmd_dl_ul(s, dl, out);
        } else if (txpower->parsed()) {
            cmd_txpower(s, tx, out);
        } else if (rzstats->parsed()) {
            cmd_rzstats(s, rz, out, err);
        } else if (validate->parsed()) {
            return cmd_validate(s, val, out);
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kNumericFailure;
    }
    return kOk;
}

}  // namespace uplink::cli
