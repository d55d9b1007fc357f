#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "uplink/execution.hpp"
#include "uplink/geometry.hpp"
#include "uplink/params.hpp"

namespace uplink::montecarlo {

using geometry::Point;
using Rng = std::mt19937_64;

enum class Mode { TruePpp, IidRayleigh, HexGrid, DownlinkUserPpp };

const char* mode_name(Mode mode);

/// Simulation window: a disk of `window_radius` around the typical base
/// station at the origin. Mobiles within `guard_radius` of the window edge
/// shape the tessellation and interfere, but are never sampled as "typical"
/// mobiles in per-mobile statistics.
struct SimConfig {
    double window_radius = 0.0;
    double guard_radius = 0.0;
    std::size_t n_trials = 200000;
    std::uint64_t seed = 1;
    Mode mode = Mode::TruePpp;

    /// window 15, guard 5 mean cell radii; 2e5 trials.
    static SimConfig defaults(double density, Mode mode, std::uint64_t seed = 1);

    /// As defaults, but the window grows (up to 60 mean cell radii) until the
    /// mean interference from beyond it, relative to a unit-power link at one
    /// mean cell radius, is below `tail_budget`. Matters for small alpha.
    static SimConfig for_network(const NetworkParams& params, Mode mode, std::uint64_t seed = 1,
                                 double tail_budget = 0.02);

    /// Throws std::invalid_argument unless guard_radius < window_radius, the
    /// guard spans at least five mean cell radii and n_trials >= 1.
    void validate(double density) const;

    double interior_radius() const { return window_radius - guard_radius; }
};

/// Independent generator for one trial, derived from (seed, trial index).
Rng trial_rng(std::uint64_t seed, std::uint64_t trial);

std::vector<Point> sample_ppp(double density, double window_radius, Rng& rng);

struct BsPlacement {
    std::vector<Point> stations;
    /// Set when some cell exhausted its proposal budget; the caller redraws.
    bool needs_resample = false;
};

/// One base station per mobile, uniform over that mobile's Voronoi cell
/// clipped to the window's bounding square. Proposals come from the cell's
/// bounding box and are accepted when their nearest mobile is the owner.
BsPlacement place_bs_in_voronoi(std::span<const Point> mobiles, double window_radius, Rng& rng);

/// Same, also returning each cell's candidate-neighbour list.
BsPlacement place_bs_in_voronoi(std::span<const Point> mobiles, double window_radius, Rng& rng,
                                std::vector<std::vector<std::size_t>>* candidates);

struct InterfererRecord {
    double distance;  // D_z, to the typical base station at the origin
    double rz;        // R_z, to the interferer's own base station
    double fading;    // g_z
};

struct SpatialRealization {
    std::vector<Point> mobiles;
    std::vector<Point> stations;
    std::size_t serving = 0;
    double serving_distance = 0.0;
    double serving_fading = 0.0;
    std::vector<InterfererRecord> interferers;
    double sinr = 0.0;
    std::size_t redraws = 0;
};

/// SINR at the origin: g R^(alpha (eps - 1)) over noise plus the sum of
/// R_z^(alpha eps) g_z D_z^-alpha.
double uplink_sinr(const NetworkParams& params, double serving_distance, double serving_fading,
                   const std::vector<InterfererRecord>& interferers);

/// Uplink SINR at the origin for modes TruePpp and IidRayleigh.
SpatialRealization uplink_realization(const NetworkParams& params, const SimConfig& config,
                                      Rng& rng);

/// Uplink SINR at the lattice base station at the origin (mode HexGrid).
SpatialRealization hex_realization(const NetworkParams& params, const SimConfig& config, Rng& rng);

/// Downlink SINR at a mobile placed at the origin (mode DownlinkUserPpp).
SpatialRealization downlink_realization(const NetworkParams& params, const SimConfig& config,
                                        Rng& rng);

/// Circumradius of a hexagon with area 1/density.
double hex_circumradius(double density);

struct EmpiricalCcdf {
    std::vector<double> thresholds;
    std::vector<double> survival;
    std::vector<double> std_error;  // binomial, sqrt(p(1 - p)/n)
    std::size_t n_samples = 0;
};

EmpiricalCcdf empirical_ccdf(std::vector<double> samples, const std::vector<double>& thresholds);

struct SampleSet {
    std::vector<double> values;  // one per trial, in trial order
    std::size_t redraws = 0;
};

/// One SINR (linear) per trial for any mode.
SampleSet sinr_samples(const NetworkParams& params, const SimConfig& config,
                       Execution execution = Execution::Parallel);

/// CCDF of SINR at linear thresholds, for the configured mode.
EmpiricalCcdf simulate_coverage(const NetworkParams& params, const SimConfig& config,
                                const std::vector<double>& thresholds,
                                Execution execution = Execution::Parallel);

EmpiricalCcdf simulate_hex_grid(const NetworkParams& params, SimConfig config,
                                const std::vector<double>& thresholds,
                                Execution execution = Execution::Parallel);

EmpiricalCcdf simulate_downlink_userppp(const NetworkParams& params, SimConfig config,
                                        const std::vector<double>& thresholds,
                                        Execution execution = Execution::Parallel);

struct RzJointStats {
    std::vector<std::pair<double, double>> pairs;
    double correlation = 0.0;
    std::size_t bins = 0;
    double bin_width = 0.0;
    std::vector<double> joint_mass;       // bins x bins, row-major, sums to 1
    std::vector<double> joint_density;    // joint_mass / bin area
    std::vector<double> product_density;  // independent-Rayleigh density at bin centres
    std::size_t realizations = 0;
};

/// (R_z1, R_z2) for mobiles in adjacent Voronoi cells, both inside the
/// interior region. Mode TruePpp places base stations in the cells;
/// IidRayleigh draws every R_z independently. Realizations are consumed in
/// trial order until `min_pairs` is reached; config.n_trials caps the count.
RzJointStats neighbor_rz_stats(double density, const SimConfig& config, std::size_t min_pairs,
                               std::size_t bins, Execution execution = Execution::Parallel);

/// Per-mobile transmit powers min(p_max, mu^-1 R_z^(alpha eps)) in dBm, for
/// every interior mobile of each realization.
std::vector<double> tx_power_samples_dbm(const NetworkParams& params, double p_max_watts,
                                         const SimConfig& config,
                                         Execution execution = Execution::Parallel);

EmpiricalCcdf tx_power_ccdf(const NetworkParams& params, double p_max_watts,
                            const SimConfig& config, const std::vector<double>& thresholds_dbm,
                            Execution execution = Execution::Parallel);

/// R_z of every interior mobile (TruePpp) or lattice user (HexGrid).
std::vector<double> rz_samples(double density, const SimConfig& config,
                               Execution execution = Execution::Parallel);

/// Distance from the origin to the nearest mobile, one per trial; empty
/// windows are redrawn.
std::vector<double> serving_distance_samples(double density, const SimConfig& config,
                                             Execution execution = Execution::Parallel);

/// sup |F_n(x) - cdf(x)|.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

}  // namespace uplink::montecarlo
