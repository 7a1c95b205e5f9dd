#pragma once

// Monte Carlo ensembles and the trajectory estimators used to probe persistence,
// stationarity and extinction of the stochastic model.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <exception>
#include <optional>
#include <span>
#include <string_view>
#include <thread>
#include <type_traits>
#include <vector>

#include "hivsde/errors.hpp"
#include "hivsde/integrators.hpp"
#include "hivsde/model.hpp"

namespace hivsde {

struct EnsembleConfig {
    std::size_t n_paths = 1;
    std::uint64_t base_seed = 0;
    double burn_in = 0.0;
    StepConfig step;
    std::size_t thin = 1;  ///< summary keeps every thin-th grid point (the last point is always kept)

    friend bool operator==(const EnsembleConfig&, const EnsembleConfig&) = default;
};

/// n_paths >= 1, thin >= 1, 0 <= burn_in < t_end, and a valid step config.
void validate(const EnsembleConfig& cfg);

/// Step config of path `index`: cfg.step with seed derive_seed(base_seed, index).
StepConfig path_step(const EnsembleConfig& cfg, std::size_t index);

inline constexpr std::array<double, 5> kQuantileLevels{0.05, 0.25, 0.50, 0.75, 0.95};
inline constexpr std::array<std::string_view, 5> kQuantileLabels{"q05", "q25", "q50", "q75", "q95"};

struct CompartmentSummary {
    std::vector<double> mean;
    std::array<std::vector<double>, kQuantileLevels.size()> quantile;

    friend bool operator==(const CompartmentSummary&, const CompartmentSummary&) = default;
};

/// Cross-path mean and quantiles on the (thinned) trajectory grid.
struct EnsembleSummary {
    std::vector<double> times;
    std::array<CompartmentSummary, kCompartments> compartments;
    std::size_t n_paths = 0;

    const CompartmentSummary& operator[](Compartment c) const {
        return compartments[static_cast<std::size_t>(c)];
    }
    friend bool operator==(const EnsembleSummary&, const EnsembleSummary&) = default;
};

/// Linear-interpolation (type 7) quantile of an already sorted sample.
double sorted_quantile(std::span<const double> sorted, double level);

/// Worker count: `requested` if nonzero, else the hardware concurrency (at least 1).
std::size_t resolve_workers(std::size_t requested);

/// Simulates every path of the ensemble and maps it through `fn(path_index, trajectory)`.
/// Results come back in path order regardless of scheduling. The first failing path (in
/// path order) rethrows; StepOverflow carries that path index.
template <class Fn>
auto map_paths(const ModelParams& p, const NoiseIntensities& n, const State& x0, const EnsembleConfig& cfg,
               Fn&& fn, std::size_t workers = 0) {
    validate(cfg);
    using Result = std::invoke_result_t<Fn&, std::size_t, const Trajectory&>;
    std::vector<std::optional<Result>> results(cfg.n_paths);
    std::vector<std::exception_ptr> errors(cfg.n_paths);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < cfg.n_paths; i = next++) {
            try {
                try {
                    results[i].emplace(fn(i, simulate(p, n, x0, path_step(cfg, i))));
                } catch (const StepOverflow& e) {
                    throw StepOverflow(e.step(), i);
                }
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const std::size_t n_workers = std::min(resolve_workers(workers), cfg.n_paths);
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_workers);
        for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    }

    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    std::vector<Result> out;
    out.reserve(cfg.n_paths);
    for (auto& r : results) out.push_back(std::move(*r));
    return out;
}

/// Thinned grid samples of a single path: row per kept time, five columns.
struct PathSamples {
    std::vector<double> times;
    std::vector<State> states;
};
PathSamples thin_trajectory(const Trajectory& traj, std::size_t thin);

/// Mean and quantiles across paths; every input must share the same time grid.
EnsembleSummary summarize(std::span<const PathSamples> paths);

EnsembleSummary run_ensemble(const ModelParams& p, const NoiseIntensities& n, const State& x0,
                             const EnsembleConfig& cfg, std::size_t workers = 0);

/// One ensemble per value of `param_name`, everything else fixed; all share base_seed.
std::vector<EnsembleSummary> sweep(const ModelParams& p, const NoiseIntensities& n, const State& x0,
                                   const EnsembleConfig& cfg, std::string_view param_name,
                                   std::span<const double> values, std::size_t workers = 0);

struct TimeAverages {
    double s_u_bar = 0.0;
    double s_a_bar = 0.0;
    double i_bar = 0.0;
    double c_bar = 0.0;
    double a_bar = 0.0;

    Vec5 to_array() const { return {s_u_bar, s_a_bar, i_bar, c_bar, a_bar}; }
};

/// Left-rectangle average of each compartment over (burn_in, t_end].
TimeAverages time_average(const Trajectory& traj, double burn_in);

/// Same, restricted to the window (t_from, t_to].
TimeAverages window_average(const Trajectory& traj, double t_from, double t_to);

struct Histogram {
    Compartment variable = Compartment::kI;
    std::vector<double> edges;      ///< n_bins + 1 ascending bin boundaries
    std::vector<double> densities;  ///< n_bins probability densities
    std::size_t n_samples = 0;
    bool degenerate = false;  ///< all samples equal; one unit-width bin centred on the value

    /// Centre of the densest bin.
    double mode() const;
    /// Sum of density * width; 1 up to rounding.
    double total_mass() const;
};

/// Density-normalized histogram of post-burn-in samples (t >= burn_in) pooled across
/// trajectories, with uniform bins between the observed min and max.
Histogram empirical_distribution(std::span<const Trajectory> trajs, Compartment variable, std::size_t n_bins,
                                 double burn_in);

/// Same, over raw samples.
Histogram histogram_of(std::span<const double> samples, Compartment variable, std::size_t n_bins);

inline constexpr double kDefaultExtinctionThreshold = 1.0;

/// First grid time with I + C + A < threshold, or nullopt.
/// Throws ThresholdBelowFloor when the trajectory is pptem and threshold <= 3 dt.
std::optional<double> extinction_time(const Trajectory& traj, double threshold = kDefaultExtinctionThreshold);

/// (1/t_end) ln(I + C + A) at t_end. Throws NonpositiveMass when the mass is not positive.
double log_decay_rate(const Trajectory& traj);

/// Least-squares slope of ln(I + C + A) against t over the trailing `window`.
/// Throws NonpositiveMass if the mass vanishes anywhere in the window.
double log_decay_slope(const Trajectory& traj, double window);

/// Terminal value of each compartment divided by t_end.
Vec5 asymptotic_ratios(const Trajectory& traj);

}  // namespace hivsde
