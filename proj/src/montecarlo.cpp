#include "uplink/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace uplink::montecarlo {

namespace {

constexpr double kPi = M_PI;
constexpr std::size_t kProposalBudget = 100000;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double uniform(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

double exponential(Rng& rng, double rate) {
    return std::exponential_distribution<double>(rate)(rng);
}

Point uniform_in_disk(double radius, Rng& rng) {
    const double r = radius * std::sqrt(uniform(rng));
    const double theta = 2.0 * kPi * uniform(rng);
    return {r * std::cos(theta), r * std::sin(theta)};
}

/// Draws R_z from the Rayleigh law via u = R_z^2 ~ Exp(pi lambda).
double rayleigh_distance(double density, Rng& rng) {
    return std::sqrt(exponential(rng, kPi * density));
}

std::size_t nearest_to_origin(std::span<const Point> points) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (geometry::norm2(points[i]) < geometry::norm2(points[best])) {
            best = i;
        }
    }
    return best;
}

/// Runs fn(trial, rng) for every trial, storing results in trial order.
template <class Fn>
auto run_trials(std::size_t first, std::size_t count, std::uint64_t seed, Execution execution,
                Fn&& fn) {
    using Result = decltype(fn(std::size_t{0}, std::declval<Rng&>()));
    std::vector<Result> results(count);
    std::vector<std::exception_ptr> errors(count);
    auto one = [&](std::size_t k) {
        try {
            Rng rng = trial_rng(seed, first + k);
            results[k] = fn(first + k, rng);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    };
    const auto n = static_cast<long>(count);
    if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long k = 0; k < n; ++k) {
            one(static_cast<std::size_t>(k));
        }
    } else {
        for (long k = 0; k < n; ++k) {
            one(static_cast<std::size_t>(k));
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return results;
}

double grid_cell_size(std::size_t n_points, double half_width) {
    const double area = 4.0 * half_width * half_width;
    return std::sqrt(area / std::max<double>(1.0, static_cast<double>(n_points)));
}

std::vector<Point> hex_centers(double density, double window_radius) {
    const double rh = hex_circumradius(density);
    const double ax = std::sqrt(3.0) * rh;  // a1 = (sqrt3 R, 0)
    const double bx = 0.5 * ax;             // a2 = (sqrt3 R / 2, 3 R / 2)
    const double by = 1.5 * rh;
    const auto reach = static_cast<long>(std::ceil(window_radius / by)) + 2;
    std::vector<Point> centers;
    for (long j = -reach; j <= reach; ++j) {
        for (long i = -2 * reach; i <= 2 * reach; ++i) {
            const Point c{i * ax + j * bx, j * by};
            if (geometry::norm(c) <= window_radius) {
                centers.push_back(c);
            }
        }
    }
    // Origin first so the typical cell has index 0.
    std::stable_partition(centers.begin(), centers.end(),
                          [](Point c) { return geometry::norm2(c) < 1e-18; });
    return centers;
}

/// Uniform point in a pointy-top hexagon of circumradius rh centred at 0.
Point uniform_in_hex(double rh, Rng& rng) {
    const double half_w = 0.5 * std::sqrt(3.0) * rh;
    for (;;) {
        const Point p{(2.0 * uniform(rng) - 1.0) * half_w, (2.0 * uniform(rng) - 1.0) * rh};
        if (std::abs(p.y) <= rh - std::abs(p.x) / std::sqrt(3.0)) {
            return p;
        }
    }
}

}  // namespace

const char* mode_name(Mode mode) {
    switch (mode) {
        case Mode::TruePpp:
            return "true-ppp";
        case Mode::IidRayleigh:
            return "iid-rayleigh";
        case Mode::HexGrid:
            return "hex-grid";
        case Mode::DownlinkUserPpp:
            return "downlink-user-ppp";
    }
    return "unknown";
}

SimConfig SimConfig::defaults(double density, Mode mode, std::uint64_t seed) {
    const double cell = 1.0 / std::sqrt(kPi * density);
    return {15.0 * cell, 5.0 * cell, 200000, seed, mode};
}

SimConfig SimConfig::for_network(const NetworkParams& params, Mode mode, std::uint64_t seed,
                                 double tail_budget) {
    if (!(tail_budget > 0.0)) {
        throw std::invalid_argument("tail budget must be positive");
    }
    SimConfig config = defaults(params.density(), mode, seed);
    const double lambda = params.density();
    const double alpha = params.alpha();
    const double cell = 1.0 / std::sqrt(kPi * lambda);
    // E[R_z^(alpha eps)] under the Rayleigh law; downlink transmitters are unit power.
    const double k = mode == Mode::DownlinkUserPpp ? 0.0 : alpha * params.epsilon();
    const double moment = std::tgamma(1.0 + 0.5 * k) * std::pow(cell, k);
    // 2 pi lambda E[R^k] D^(2 - alpha) / (alpha - 2), in units of cell^(-alpha)
    const double scale = 2.0 * kPi * lambda * moment * std::pow(cell, alpha) / (alpha - 2.0);
    const double needed = std::pow(scale / tail_budget, 1.0 / (alpha - 2.0));
    config.window_radius = std::clamp(needed, 15.0 * cell, 60.0 * cell);
    return config;
}

void SimConfig::validate(double density) const {
    const double cell = 1.0 / std::sqrt(kPi * density);
    if (!(window_radius > 0.0) || !(guard_radius < window_radius)) {
        throw std::invalid_argument("guard radius must be below the window radius");
    }
    if (guard_radius < 5.0 * cell * (1.0 - 1e-12)) {
        throw std::invalid_argument("guard band must span at least five mean cell radii");
    }
    if (n_trials < 1) {
        throw std::invalid_argument("n_trials must be at least 1");
    }
}

Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
    return Rng(splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632BE59BD9B4E019ULL)));
}

std::vector<Point> sample_ppp(double density, double window_radius, Rng& rng) {
    if (!(density > 0.0)) {
        throw std::invalid_argument("PPP density must be positive");
    }
    if (!(window_radius > 0.0)) {
        return {};
    }
    const double mean = density * kPi * window_radius * window_radius;
    const auto count = std::poisson_distribution<long>(mean)(rng);
    std::vector<Point> points(static_cast<std::size_t>(count));
    for (auto& p : points) {
        p = uniform_in_disk(window_radius, rng);
    }
    return points;
}

BsPlacement place_bs_in_voronoi(std::span<const Point> mobiles, double window_radius, Rng& rng) {
    return place_bs_in_voronoi(mobiles, window_radius, rng, nullptr);
}

BsPlacement place_bs_in_voronoi(std::span<const Point> mobiles, double window_radius, Rng& rng,
                                std::vector<std::vector<std::size_t>>* candidates) {
    if (mobiles.size() < 2) {
        throw std::invalid_argument("Voronoi placement needs at least two mobiles");
    }
    double half = window_radius;
    for (const Point& m : mobiles) {
        half = std::max({half, std::abs(m.x), std::abs(m.y)});
    }
    const geometry::PointGrid grid(mobiles, half, grid_cell_size(mobiles.size(), half));
    const geometry::Box box{-half, -half, half, half};

    BsPlacement out;
    out.stations.resize(mobiles.size());
    if (candidates) {
        candidates->assign(mobiles.size(), {});
    }
    thread_local geometry::VoronoiCell cell;
    for (std::size_t i = 0; i < mobiles.size(); ++i) {
        geometry::voronoi_cell(grid, i, box, cell);
        double x0 = cell.polygon[0].x, x1 = x0, y0 = cell.polygon[0].y, y1 = y0;
        for (const Point& v : cell.polygon) {
            x0 = std::min(x0, v.x);
            x1 = std::max(x1, v.x);
            y0 = std::min(y0, v.y);
            y1 = std::max(y1, v.y);
        }
        bool placed = false;
        for (std::size_t attempt = 0; attempt < kProposalBudget; ++attempt) {
            const Point q{x0 + (x1 - x0) * uniform(rng), y0 + (y1 - y0) * uniform(rng)};
            if (geometry::owner_is_nearest(mobiles, i, cell.candidates, q)) {
                out.stations[i] = q;
                placed = true;
                break;
            }
        }
        if (!placed) {
            out.stations[i] = mobiles[i];
            out.needs_resample = true;
        }
        if (candidates) {
            (*candidates)[i] = cell.candidates;
        }
    }
    return out;
}

SpatialRealization uplink_realization(const NetworkParams& params, const SimConfig& config,
                                      Rng& rng) {
    if (config.mode != Mode::TruePpp && config.mode != Mode::IidRayleigh) {
        throw std::invalid_argument("uplink_realization handles TruePpp and IidRayleigh modes");
    }
    SpatialRealization out;
    for (;;) {
        out.mobiles = sample_ppp(params.density(), config.window_radius, rng);
        if (out.mobiles.size() < 2) {
            ++out.redraws;
            continue;
        }
        out.serving = nearest_to_origin(out.mobiles);
        if (config.mode == Mode::TruePpp) {
            BsPlacement placement = place_bs_in_voronoi(out.mobiles, config.window_radius, rng);
            if (placement.needs_resample) {
                ++out.redraws;
                continue;
            }
            out.stations = std::move(placement.stations);
        } else {
            out.stations.resize(out.mobiles.size());
            for (std::size_t i = 0; i < out.mobiles.size(); ++i) {
                const double rz = rayleigh_distance(params.density(), rng);
                const double theta = 2.0 * kPi * uniform(rng);
                out.stations[i] = {out.mobiles[i].x + rz * std::cos(theta),
                                   out.mobiles[i].y + rz * std::sin(theta)};
            }
        }
        break;
    }
    out.stations[out.serving] = {0.0, 0.0};
    out.serving_distance = geometry::norm(out.mobiles[out.serving]);
    out.serving_fading = exponential(rng, params.mu());
    out.interferers.reserve(out.mobiles.size() - 1);
    for (std::size_t i = 0; i < out.mobiles.size(); ++i) {
        if (i == out.serving) {
            continue;
        }
        out.interferers.push_back({geometry::norm(out.mobiles[i]),
                                   geometry::dist(out.mobiles[i], out.stations[i]),
                                   exponential(rng, params.mu())});
    }
    out.sinr = uplink_sinr(params, out.serving_distance, out.serving_fading, out.interferers);
    return out;
}

double uplink_sinr(const NetworkParams& params, double serving_distance, double serving_fading,
                   const std::vector<InterfererRecord>& interferers) {
    const double a = params.alpha();
    const double e = params.epsilon();
    double interference = 0.0;
    for (const auto& z : interferers) {
        interference += std::pow(z.rz, a * e) * z.fading * std::pow(z.distance, -a);
    }
    const double signal = serving_fading * std::pow(serving_distance, a * (e - 1.0));
    return signal / (params.noise() + interference);
}

double hex_circumradius(double density) {
    return std::sqrt(2.0 / (3.0 * std::sqrt(3.0) * density));
}

SpatialRealization hex_realization(const NetworkParams& params, const SimConfig& config, Rng& rng) {
    SpatialRealization out;
    const double rh = hex_circumradius(params.density());
    out.stations = hex_centers(params.density(), config.window_radius);
    out.mobiles.resize(out.stations.size());
    for (std::size_t i = 0; i < out.stations.size(); ++i) {
        const Point offset = uniform_in_hex(rh, rng);
        out.mobiles[i] = {out.stations[i].x + offset.x, out.stations[i].y + offset.y};
    }
    out.serving = 0;
    out.serving_distance = geometry::norm(out.mobiles[0]);
    out.serving_fading = exponential(rng, params.mu());
    out.interferers.reserve(out.mobiles.size() - 1);
    for (std::size_t i = 1; i < out.mobiles.size(); ++i) {
        out.interferers.push_back({geometry::norm(out.mobiles[i]),
                                   geometry::dist(out.mobiles[i], out.stations[i]),
                                   exponential(rng, params.mu())});
    }
    out.sinr = uplink_sinr(params, out.serving_distance, out.serving_fading, out.interferers);
    return out;
}

SpatialRealization downlink_realization(const NetworkParams& params, const SimConfig& config,
                                        Rng& rng) {
    SpatialRealization out;
    for (;;) {
        out.mobiles = sample_ppp(params.density(), config.window_radius, rng);
        out.mobiles.insert(out.mobiles.begin(), Point{0.0, 0.0});
        BsPlacement placement = place_bs_in_voronoi(out.mobiles, config.window_radius, rng);
        if (placement.needs_resample) {
            ++out.redraws;
            continue;
        }
        out.stations = std::move(placement.stations);
        break;
    }
    out.serving = nearest_to_origin(out.stations);
    out.serving_distance = geometry::norm(out.stations[out.serving]);
    out.serving_fading = exponential(rng, params.mu());
    double interference = 0.0;
    for (std::size_t i = 0; i < out.stations.size(); ++i) {
        if (i == out.serving) {
            continue;
        }
        const double d = geometry::norm(out.stations[i]);
        const double g = exponential(rng, params.mu());
        out.interferers.push_back({d, 0.0, g});
        interference += g * std::pow(d, -params.alpha());
    }
    const double signal = out.serving_fading * std::pow(out.serving_distance, -params.alpha());
    out.sinr = signal / (params.noise() + interference);
    return out;
}

EmpiricalCcdf empirical_ccdf(std::vector<double> samples, const std::vector<double>& thresholds) {
    std::sort(samples.begin(), samples.end());
    EmpiricalCcdf out;
    out.n_samples = samples.size();
    const double n = static_cast<double>(samples.size());
    for (double t : thresholds) {
        const auto above = samples.end() - std::upper_bound(samples.begin(), samples.end(), t);
        const double p = n > 0 ? static_cast<double>(above) / n : 0.0;
        out.thresholds.push_back(t);
        out.survival.push_back(p);
        out.std_error.push_back(n > 0 ? std::sqrt(p * (1.0 - p) / n) : 0.0);
    }
    return out;
}

SampleSet sinr_samples(const NetworkParams& params, const SimConfig& config, Execution execution) {
    config.validate(params.density());
    auto trial = [&](std::size_t, Rng& rng) -> std::pair<double, std::size_t> {
        SpatialRealization r;
        switch (config.mode) {
            case Mode::TruePpp:
            case Mode::IidRayleigh:
                r = uplink_realization(params, config, rng);
                break;
            case Mode::HexGrid:
                r = hex_realization(params, config, rng);
                break;
            case Mode::DownlinkUserPpp:
                r = downlink_realization(params, config, rng);
                break;
        }
        return {r.sinr, r.redraws};
    };
    const auto results = run_trials(0, config.n_trials, config.seed, execution, trial);
    SampleSet out;
    out.values.reserve(results.size());
    for (const auto& [sinr, redraws] : results) {
        out.values.push_back(sinr);
        out.redraws += redraws;
    }
    return out;
}

std::vector<double> serving_distance_samples(double density, const SimConfig& config,
                                             Execution execution) {
    config.validate(density);
    auto trial = [&](std::size_t, Rng& rng) {
        for (;;) {
            const auto mobiles = sample_ppp(density, config.window_radius, rng);
            if (!mobiles.empty()) {
                return geometry::norm(mobiles[nearest_to_origin(mobiles)]);
            }
        }
    };
    return run_trials(0, config.n_trials, config.seed, execution, trial);
}

EmpiricalCcdf simulate_coverage(const NetworkParams& params, const SimConfig& config,
                                const std::vector<double>& thresholds, Execution execution) {
    return empirical_ccdf(sinr_samples(params, config, execution).values, thresholds);
}

EmpiricalCcdf simulate_hex_grid(const NetworkParams& params, SimConfig config,
                                const std::vector<double>& thresholds, Execution execution) {
    config.mode = Mode::HexGrid;
    return simulate_coverage(params, config, thresholds, execution);
}

EmpiricalCcdf simulate_downlink_userppp(const NetworkParams& params, SimConfig config,
                                        const std::vector<double>& thresholds,
                                        Execution execution) {
    config.mode = Mode::DownlinkUserPpp;
    return simulate_coverage(params, config, thresholds, execution);
}

namespace {

struct MobileDistances {
    std::vector<Point> mobiles;
    std::vector<double> rz;
    std::vector<std::vector<std::size_t>> candidates;
    bool ok = false;
};

/// Mobiles plus each one's R_z, for TruePpp or IidRayleigh.
MobileDistances mobile_distances(double density, const SimConfig& config, Rng& rng,
                                 bool want_candidates) {
    MobileDistances out;
    out.mobiles = sample_ppp(density, config.window_radius, rng);
    if (out.mobiles.size() < 2) {
        return out;
    }
    auto* cands = want_candidates ? &out.candidates : nullptr;
    if (config.mode == Mode::TruePpp) {
        BsPlacement placement = place_bs_in_voronoi(out.mobiles, config.window_radius, rng, cands);
        if (placement.needs_resample) {
            return out;
        }
        out.rz.resize(out.mobiles.size());
        for (std::size_t i = 0; i < out.mobiles.size(); ++i) {
            out.rz[i] = geometry::dist(out.mobiles[i], placement.stations[i]);
        }
    } else if (config.mode == Mode::IidRayleigh) {
        if (want_candidates) {
            double half = config.window_radius;
            const geometry::PointGrid grid(out.mobiles, half,
                                           grid_cell_size(out.mobiles.size(), half));
            const geometry::Box box{-half, -half, half, half};
            geometry::VoronoiCell cell;
            out.candidates.resize(out.mobiles.size());
            for (std::size_t i = 0; i < out.mobiles.size(); ++i) {
                geometry::voronoi_cell(grid, i, box, cell);
                out.candidates[i] = cell.candidates;
            }
        }
        out.rz.resize(out.mobiles.size());
        for (auto& r : out.rz) {
            r = rayleigh_distance(density, rng);
        }
    } else {
        throw std::invalid_argument("per-mobile statistics need TruePpp or IidRayleigh mode");
    }
    out.ok = true;
    return out;
}

}  // namespace

RzJointStats neighbor_rz_stats(double density, const SimConfig& config, std::size_t min_pairs,
                               std::size_t bins, Execution execution) {
    config.validate(density);
    if (bins < 1) {
        throw std::invalid_argument("histogram needs at least one bin");
    }
    const double interior2 = config.interior_radius() * config.interior_radius();
    auto trial = [&](std::size_t, Rng& rng) {
        std::vector<std::pair<double, double>> pairs;
        MobileDistances md = mobile_distances(density, config, rng, true);
        if (!md.ok) {
            return pairs;
        }
        double half = config.window_radius;
        for (const Point& m : md.mobiles) {
            half = std::max({half, std::abs(m.x), std::abs(m.y)});
        }
        const geometry::PointGrid grid(md.mobiles, half, grid_cell_size(md.mobiles.size(), half));
        std::vector<std::size_t> scratch;
        for (std::size_t i = 0; i < md.mobiles.size(); ++i) {
            if (geometry::norm2(md.mobiles[i]) > interior2) {
                continue;
            }
            for (std::size_t j : md.candidates[i]) {
                if (j <= i || geometry::norm2(md.mobiles[j]) > interior2) {
                    continue;
                }
                if (geometry::midpoint_adjacent(grid, i, j, scratch)) {
                    pairs.emplace_back(md.rz[i], md.rz[j]);
                }
            }
        }
        return pairs;
    };

    RzJointStats out;
    const std::size_t batch = 64;
    std::size_t next = 0;
    while (out.pairs.size() < min_pairs) {
        if (next >= config.n_trials) {
            throw std::runtime_error("insufficient adjacent pairs: " +
                                     std::to_string(out.pairs.size()) + " < " +
                                     std::to_string(min_pairs));
        }
        const std::size_t count = std::min(batch, config.n_trials - next);
        const auto results = run_trials(next, count, config.seed, execution, trial);
        for (const auto& r : results) {
            out.pairs.insert(out.pairs.end(), r.begin(), r.end());
            ++out.realizations;
            if (out.pairs.size() >= min_pairs) {
                break;
            }
        }
        next += count;
    }

    // Symmetrised Pearson correlation: both orderings of every pair.
    double mean = 0.0;
    for (const auto& [a, b] : out.pairs) {
        mean += a + b;
    }
    mean /= 2.0 * static_cast<double>(out.pairs.size());
    double var = 0.0;
    double cov = 0.0;
    for (const auto& [a, b] : out.pairs) {
        var += (a - mean) * (a - mean) + (b - mean) * (b - mean);
        cov += 2.0 * (a - mean) * (b - mean);
    }
    out.correlation = var > 0.0 ? cov / var : 0.0;

    out.bins = bins;
    const double r_max = std::sqrt(-std::log(1e-3) / (kPi * density));
    out.bin_width = r_max / static_cast<double>(bins);
    out.joint_mass.assign(bins * bins, 0.0);
    double included = 0.0;
    auto add = [&](double a, double b) {
        if (a >= r_max || b >= r_max) {
            return;
        }
        const auto i = static_cast<std::size_t>(a / out.bin_width);
        const auto j = static_cast<std::size_t>(b / out.bin_width);
        out.joint_mass[i * bins + j] += 1.0;
        included += 1.0;
    };
    for (const auto& [a, b] : out.pairs) {
        add(a, b);
        add(b, a);
    }
    const double area = out.bin_width * out.bin_width;
    out.joint_density.resize(bins * bins);
    out.product_density.resize(bins * bins);
    for (std::size_t i = 0; i < bins; ++i) {
        for (std::size_t j = 0; j < bins; ++j) {
            auto& m = out.joint_mass[i * bins + j];
            m = included > 0.0 ? m / included : 0.0;
            out.joint_density[i * bins + j] = m / area;
            const double r1 = (i + 0.5) * out.bin_width;
            const double r2 = (j + 0.5) * out.bin_width;
            out.product_density[i * bins + j] = 4.0 * kPi * kPi * density * density * r1 * r2 *
                                                std::exp(-kPi * density * (r1 * r1 + r2 * r2));
        }
    }
    return out;
}

std::vector<double> tx_power_samples_dbm(const NetworkParams& params, double p_max_watts,
                                         const SimConfig& config, Execution execution) {
    config.validate(params.density());
    if (!(p_max_watts > 0.0)) {
        throw std::invalid_argument("maximum transmit power must be positive");
    }
    const double interior2 = config.interior_radius() * config.interior_radius();
    const double exponent = params.alpha() * params.epsilon();
    auto trial = [&](std::size_t, Rng& rng) {
        std::vector<double> powers;
        MobileDistances md;
        do {
            md = mobile_distances(params.density(), config, rng, false);
        } while (!md.ok);
        for (std::size_t i = 0; i < md.mobiles.size(); ++i) {
            if (geometry::norm2(md.mobiles[i]) > interior2) {
                continue;
            }
            const double p = std::min(p_max_watts, params.baseline_power() * std::pow(md.rz[i], exponent));
            powers.push_back(watts_to_dbm(p));
        }
        return powers;
    };
    const auto results = run_trials(0, config.n_trials, config.seed, execution, trial);
    std::vector<double> out;
    for (const auto& r : results) {
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

EmpiricalCcdf tx_power_ccdf(const NetworkParams& params, double p_max_watts,
                            const SimConfig& config, const std::vector<double>& thresholds_dbm,
                            Execution execution) {
    return empirical_ccdf(tx_power_samples_dbm(params, p_max_watts, config, execution),
                          thresholds_dbm);
}

std::vector<double> rz_samples(double density, const SimConfig& config, Execution execution) {
    config.validate(density);
    const double interior2 = config.interior_radius() * config.interior_radius();
    auto trial = [&](std::size_t, Rng& rng) {
        std::vector<double> values;
        if (config.mode == Mode::HexGrid) {
            const double rh = hex_circumradius(density);
            for (const Point& c : hex_centers(density, config.interior_radius())) {
                (void)c;
                values.push_back(geometry::norm(uniform_in_hex(rh, rng)));
            }
            return values;
        }
        MobileDistances md;
        do {
            md = mobile_distances(density, config, rng, false);
        } while (!md.ok);
        for (std::size_t i = 0; i < md.mobiles.size(); ++i) {
            if (geometry::norm2(md.mobiles[i]) <= interior2) {
                values.push_back(md.rz[i]);
            }
        }
        return values;
    };
    const auto results = run_trials(0, config.n_trials, config.seed, execution, trial);
    std::vector<double> out;
    for (const auto& r : results) {
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) {
        throw std::invalid_argument("KS distance needs samples");
    }
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        worst = std::max({worst, std::abs(f - static_cast<double>(i) / n),
                          std::abs(static_cast<double>(i + 1) / n - f)});
    }
    return worst;
}

}  // namespace uplink::montecarlo
