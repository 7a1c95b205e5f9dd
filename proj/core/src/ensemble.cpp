#include "hivsde/ensemble.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "hivsde/errors.hpp"

namespace hivsde {

namespace {

double infected_mass(const State& x) { return x.i + x.c + x.a; }

double compartment_value(const State& x, Compartment c) { return x[c]; }

}  // namespace

void validate(const EnsembleConfig& cfg) {
    validate(cfg.step);
    if (cfg.n_paths < 1) throw ValidationError("n_paths", "n_paths must be >= 1");
    if (cfg.thin < 1) throw ValidationError("thin", "thin must be >= 1");
    if (!(cfg.burn_in >= 0.0) || !(cfg.burn_in < cfg.step.t_end)) {
        throw ValidationError("burn_in", fmt::format("burn_in must lie in [0, t_end) (got {}, t_end={})",
                                                     cfg.burn_in, cfg.step.t_end));
    }
}

StepConfig path_step(const EnsembleConfig& cfg, std::size_t index) {
    StepConfig step = cfg.step;
    step.seed = derive_seed(cfg.base_seed, index);
    return step;
}

double sorted_quantile(std::span<const double> sorted, double level) {
    if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
    const double pos = level * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::size_t resolve_workers(std::size_t requested) {
    if (requested > 0) return requested;
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

PathSamples thin_trajectory(const Trajectory& traj, std::size_t thin) {
    PathSamples out;
    const std::size_t n = traj.size();
    for (std::size_t k = 0; k < n; k += thin) {
        out.times.push_back(traj.times[k]);
        out.states.push_back(traj.states[k]);
    }
    if ((n - 1) % thin != 0) {
        out.times.push_back(traj.times.back());
        out.states.push_back(traj.states.back());
    }
    return out;
}

EnsembleSummary summarize(std::span<const PathSamples> paths) {
    EnsembleSummary summary;
    if (paths.empty()) return summary;
    summary.n_paths = paths.size();
    summary.times = paths.front().times;
    const std::size_t n_times = summary.times.size();
    for (const auto& path : paths) {
        if (path.times.size() != n_times) throw std::invalid_argument("summarize: paths have different grids");
    }
    for (auto& comp : summary.compartments) {
        comp.mean.resize(n_times);
        for (auto& q : comp.quantile) q.resize(n_times);
    }

    std::vector<double> column(paths.size());
    for (std::size_t t = 0; t < n_times; ++t) {
        for (std::size_t c = 0; c < kCompartments; ++c) {
            const auto comp = static_cast<Compartment>(c);
            double sum = 0.0;
            for (std::size_t i = 0; i < paths.size(); ++i) {
                column[i] = compartment_value(paths[i].states[t], comp);
                sum += column[i];
            }
            auto& out = summary.compartments[c];
            out.mean[t] = sum / static_cast<double>(paths.size());
            std::sort(column.begin(), column.end());
            for (std::size_t q = 0; q < kQuantileLevels.size(); ++q) {
                out.quantile[q][t] = sorted_quantile(column, kQuantileLevels[q]);
            }
        }
    }
    return summary;
}

EnsembleSummary run_ensemble(const ModelParams& p, const NoiseIntensities& n, const State& x0,
                             const EnsembleConfig& cfg, std::size_t workers) {
    const auto samples = map_paths(
        p, n, x0, cfg, [thin = cfg.thin](std::size_t, const Trajectory& traj) { return thin_trajectory(traj, thin); },
        workers);
    return summarize(samples);
}

std::vector<EnsembleSummary> sweep(const ModelParams& p, const NoiseIntensities& n, const State& x0,
                                   const EnsembleConfig& cfg, std::string_view param_name,
                                   std::span<const double> values, std::size_t workers) {
    if (!is_param_name(param_name)) {
        throw ValidationError(std::string(param_name), fmt::format("unknown sweep parameter '{}'", param_name));
    }
    std::vector<EnsembleSummary> out;
    out.reserve(values.size());
    for (double v : values) {
        const ModelParams swept = with_param(p, param_name, v);
        validate(swept);
        out.push_back(run_ensemble(swept, n, x0, cfg, workers));
    }
    return out;
}

TimeAverages window_average(const Trajectory& traj, double t_from, double t_to) {
    if (!(t_to > t_from)) throw std::invalid_argument("window_average: empty window");
    Vec5 acc{};
    for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
        const double lo = std::max(traj.times[k], t_from);
        const double hi = std::min(traj.times[k + 1], t_to);
        if (!(hi > lo)) continue;
        const Vec5 v = traj.states[k].to_array();
        for (std::size_t c = 0; c < kCompartments; ++c) acc[c] += v[c] * (hi - lo);
    }
    const double span = t_to - t_from;
    return {acc[0] / span, acc[1] / span, acc[2] / span, acc[3] / span, acc[4] / span};
}

TimeAverages time_average(const Trajectory& traj, double burn_in) {
    if (!(burn_in < traj.t_end())) {
        throw std::invalid_argument(fmt::format("time_average: burn_in {} >= horizon {}", burn_in, traj.t_end()));
    }
    return window_average(traj, burn_in, traj.t_end());
}

double Histogram::mode() const {
    const auto it = std::max_element(densities.begin(), densities.end());
    const auto b = static_cast<std::size_t>(it - densities.begin());
    return 0.5 * (edges[b] + edges[b + 1]);
}

double Histogram::total_mass() const {
    double mass = 0.0;
    for (std::size_t b = 0; b < densities.size(); ++b) mass += densities[b] * (edges[b + 1] - edges[b]);
    return mass;
}

Histogram histogram_of(std::span<const double> samples, Compartment variable, std::size_t n_bins) {
    if (samples.empty()) throw std::invalid_argument("histogram needs at least one sample");
    if (n_bins < 1) throw std::invalid_argument("histogram needs at least one bin");
    Histogram h;
    h.variable = variable;
    h.n_samples = samples.size();
    const auto [min_it, max_it] = std::minmax_element(samples.begin(), samples.end());
    const double lo = *min_it;
    const double hi = *max_it;
    if (!(hi > lo)) {
        h.degenerate = true;
        h.edges = {lo - 0.5, lo + 0.5};
        h.densities = {1.0};
        return h;
    }
    h.edges.resize(n_bins + 1);
    const double width = (hi - lo) / static_cast<double>(n_bins);
    for (std::size_t b = 0; b <= n_bins; ++b) h.edges[b] = lo + width * static_cast<double>(b);
    h.edges.back() = hi;

    std::vector<std::size_t> counts(n_bins, 0);
    for (double v : samples) {
        auto b = static_cast<std::size_t>((v - lo) / width);
        b = std::min(b, n_bins - 1);
        // Rounding in (v - lo) / width can misplace values that sit on an edge.
        while (b > 0 && v < h.edges[b]) --b;
        while (b + 1 < n_bins && v >= h.edges[b + 1]) ++b;
        ++counts[b];
    }
    h.densities.resize(n_bins);
    const auto total = static_cast<double>(samples.size());
    for (std::size_t b = 0; b < n_bins; ++b) {
        h.densities[b] = static_cast<double>(counts[b]) / (total * (h.edges[b + 1] - h.edges[b]));
    }
    return h;
}

Histogram empirical_distribution(std::span<const Trajectory> trajs, Compartment variable, std::size_t n_bins,
                                 double burn_in) {
    std::vector<double> samples;
    for (const auto& traj : trajs) {
        for (std::size_t k = 0; k < traj.size(); ++k) {
            if (traj.times[k] >= burn_in) samples.push_back(compartment_value(traj.states[k], variable));
        }
    }
    if (samples.empty()) throw std::invalid_argument("empirical_distribution: no samples after burn-in");
    return histogram_of(samples, variable, n_bins);
}

std::optional<double> extinction_time(const Trajectory& traj, double threshold) {
    if (!(threshold > 0.0)) throw std::invalid_argument("extinction threshold must be positive");
    const auto& step = traj.meta.step;
    if (step.scheme == Scheme::kPptem && threshold <= 3.0 * step.dt) {
        throw ThresholdBelowFloor(threshold, 3.0 * step.dt);
    }
    for (std::size_t k = 0; k < traj.size(); ++k) {
        if (infected_mass(traj.states[k]) < threshold) return traj.times[k];
    }
    return std::nullopt;
}

double log_decay_rate(const Trajectory& traj) {
    const double mass = infected_mass(traj.states.back());
    if (!(mass > 0.0)) throw NonpositiveMass(mass);
    return std::log(mass) / traj.t_end();
}

double log_decay_slope(const Trajectory& traj, double window) {
    const double t_from = traj.t_end() - window;
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        if (traj.times[k] < t_from) continue;
        const double mass = infected_mass(traj.states[k]);
        if (!(mass > 0.0)) throw NonpositiveMass(mass);
        const double t = traj.times[k];
        const double y = std::log(mass);
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
        ++count;
    }
    if (count < 2) throw std::invalid_argument("log_decay_slope: window holds fewer than two grid points");
    const auto m = static_cast<double>(count);
    return (m * sty - st * sy) / (m * stt - st * st);
}

Vec5 asymptotic_ratios(const Trajectory& traj) {
    Vec5 out = traj.states.back().to_array();
    const double t = traj.t_end();
    for (double& v : out) v /= t;
    return out;
}

}  // namespace hivsde
