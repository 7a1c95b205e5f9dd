#include "commands.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "hivsde/calibration.hpp"
#include "hivsde/csv.hpp"
#include "hivsde/ensemble.hpp"
#include "hivsde/equilibria.hpp"
#include "hivsde/errors.hpp"
#include "hivsde/thresholds.hpp"

namespace hivsde::cli {

namespace {

using nlohmann::ordered_json;

std::ofstream open_output(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    return out;
}

ordered_json state_json(const State& x) {
    ordered_json j;
    const Vec5 v = x.to_array();
    for (std::size_t k = 0; k < kCompartments; ++k) j[std::string(kCompartmentNames[k])] = v[k];
    return j;
}

ordered_json rounded_json(const State& x) {
    ordered_json j;
    const Vec5 v = x.to_array();
    for (std::size_t k = 0; k < kCompartments; ++k) j[std::string(kCompartmentNames[k])] = std::llround(v[k]);
    return j;
}

EnsembleConfig ensemble_of(const Scenario& s) {
    if (s.ensemble) return *s.ensemble;
    EnsembleConfig cfg;
    cfg.base_seed = s.step.seed;
    cfg.step = s.step;
    return cfg;
}

void note(const std::string& msg) { std::cerr << "hivsde: " << msg << '\n'; }

}  // namespace

Scenario load(const CommonOptions& opts) {
    Scenario s = load_scenario(opts.scenario);
    if (opts.scheme) {
        const auto scheme = scheme_from_string(*opts.scheme);
        if (!scheme) throw ValidationError("scheme", fmt::format("unknown scheme '{}'", *opts.scheme));
        s.step.scheme = *scheme;
    }
    if (opts.dt) s.step.dt = *opts.dt;
    if (opts.t_end) s.step.t_end = *opts.t_end;
    if (opts.seed) s.step.seed = *opts.seed;
    if (opts.sigma) s.noise = NoiseIntensities::uniform(*opts.sigma);
    validate(s.noise);
    validate(s.step);

    if (s.ensemble || opts.paths || opts.burn_in) {
        EnsembleConfig cfg = ensemble_of(s);
        cfg.step = s.step;
        if (opts.seed) cfg.base_seed = *opts.seed;
        if (opts.paths) cfg.n_paths = *opts.paths;
        if (opts.burn_in) cfg.burn_in = *opts.burn_in;
        validate(cfg);
        s.ensemble = cfg;
    }
    return s;
}

int cmd_report(const CommonOptions& opts) {
    const Scenario s = load(opts);
    const ThresholdReport r = threshold_report(s.params, s.noise);

    ordered_json j;
    j["label"] = s.label;
    auto& t = j["thresholds"];
    t["r0"] = r.r0;
    t["r0_s"] = r.r0_s;
    t["r0_e"] = {{"printed", r.r0_e_printed}, {"derivation", r.r0_e_derivation}};
    t["k"] = r.constants.k;
    t["k3_unused"] = true;
    t["sigma_hat"] = r.sigma_hat;
    t["stochastic_bracket"] = r.stochastic_bracket;
    t["noise_condition_holds"] = r.noise_condition_holds;

    const State p0 = disease_free(s.params);
    j["disease_free"] = state_json(p0);
    j["disease_free_rounded"] = rounded_json(p0);
    if (const auto eq = endemic_equilibrium(s.params)) {
        j["endemic"] = state_json(*eq);
        j["endemic_rounded"] = rounded_json(*eq);
    } else {
        j["endemic"] = "none: R0 <= 1";
    }

    const std::string text = j.dump(2);
    std::cout << text << '\n';
    const auto path = opts.out / "report.json";
    open_output(path) << text << '\n';
    note(fmt::format("wrote {}", path.string()));
    return 0;
}

int cmd_simulate(const CommonOptions& opts) {
    const Scenario s = load(opts);
    note(fmt::format("simulating {} with {} (dt={}, t_end={}, seed={})", s.label, to_string(s.step.scheme),
                     s.step.dt, s.step.t_end, s.step.seed));
    const Trajectory traj = simulate(s.params, s.noise, s.x0, s.step);
    const auto path = opts.out / "trajectory.csv";
    auto out = open_output(path);
    write_trajectory_csv(out, traj);
    note(fmt::format("wrote {} ({} rows)", path.string(), traj.size()));
    return 0;
}

int cmd_ensemble(const CommonOptions& opts, std::size_t thin) {
    const Scenario s = load(opts);
    EnsembleConfig cfg = ensemble_of(s);
    cfg.thin = thin;
    validate(cfg);
    note(fmt::format("running {} paths of {} ({}, t_end={})", cfg.n_paths, s.label, to_string(cfg.step.scheme),
                     cfg.step.t_end));
    const auto summary = run_ensemble(s.params, s.noise, s.x0, cfg, opts.workers);
    const auto path = opts.out / "summary.csv";
    auto out = open_output(path);
    write_summary_csv(out, summary);
    note(fmt::format("wrote {}", path.string()));
    return 0;
}

int cmd_histogram(const CommonOptions& opts, std::size_t bins) {
    const Scenario s = load(opts);
    const EnsembleConfig cfg = ensemble_of(s);
    validate(cfg);
    note(fmt::format("sampling {} paths of {} after burn-in {}", cfg.n_paths, s.label, cfg.burn_in));
    using Samples = std::array<std::vector<double>, kCompartments>;
    const auto per_path = map_paths(
        s.params, s.noise, s.x0, cfg,
        [burn_in = cfg.burn_in](std::size_t, const Trajectory& traj) {
            Samples out;
            for (std::size_t k = 0; k < traj.size(); ++k) {
                if (traj.times[k] < burn_in) continue;
                const Vec5 v = traj.states[k].to_array();
                for (std::size_t c = 0; c < kCompartments; ++c) out[c].push_back(v[c]);
            }
            return out;
        },
        opts.workers);

    for (std::size_t c = 0; c < kCompartments; ++c) {
        std::vector<double> pooled;
        for (const auto& p : per_path) pooled.insert(pooled.end(), p[c].begin(), p[c].end());
        const auto h = histogram_of(pooled, static_cast<Compartment>(c), bins);
        const auto path = opts.out / fmt::format("histogram_{}.csv", kCompartmentNames[c]);
        auto out = open_output(path);
        write_histogram_csv(out, h);
        note(fmt::format("wrote {} ({} samples, mode {}{})", path.string(), h.n_samples, format_double(h.mode()),
                         h.degenerate ? ", degenerate" : ""));
    }
    return 0;
}

int cmd_sweep(const CommonOptions& opts, const std::string& param, const std::vector<double>& values,
              std::size_t thin) {
    if (values.empty()) throw ValidationError("values", "sweep needs at least one value");
    const Scenario s = load(opts);
    EnsembleConfig cfg = ensemble_of(s);
    cfg.thin = thin;
    validate(cfg);
    note(fmt::format("sweeping {} over {} values, {} paths each", param, values.size(), cfg.n_paths));
    const auto summaries = sweep(s.params, s.noise, s.x0, cfg, param, values, opts.workers);

    const auto index_path = opts.out / "sweep_index.csv";
    auto index = open_output(index_path);
    index << "index,param,value,file\n";
    for (std::size_t k = 0; k < summaries.size(); ++k) {
        const std::string file = fmt::format("sweep_{}_{}.csv", param, k);
        auto out = open_output(opts.out / file);
        write_summary_csv(out, summaries[k]);
        index << k << ',' << param << ',' << format_double(values[k]) << ',' << file << '\n';
    }
    note(fmt::format("wrote {} and {} summaries", index_path.string(), summaries.size()));
    return 0;
}

int cmd_fit(const CommonOptions& opts, const FitOptions& fit_opts) {
    const Scenario s = load(opts);
    const auto target = target_from_string(fit_opts.target);
    if (!target) throw ValidationError("target", fmt::format("unknown target '{}'", fit_opts.target));
    const ObservedSeries series = load_series_csv(fit_opts.data, *target);

    FitSpec spec;
    spec.fixed = s.params;
    spec.x0 = s.x0;
    for (const auto& item : fit_opts.free) {
        const auto first = item.find(':');
        const auto second = first == std::string::npos ? first : item.find(':', first + 1);
        if (second == std::string::npos) {
            throw ValidationError("free", fmt::format("expected name:lower:upper, got '{}'", item));
        }
        const auto lo = parse_double(std::string_view(item).substr(first + 1, second - first - 1));
        const auto hi = parse_double(std::string_view(item).substr(second + 1));
        if (!lo || !hi) throw ValidationError("free", fmt::format("bad bounds in '{}'", item));
        spec.free.push_back({item.substr(0, first), *lo, *hi});
    }

    hivsde::FitOptions options;
    options.max_iterations = fit_opts.max_iterations;
    note(fmt::format("fitting {} parameter(s) to {} records", spec.free.size(), series.records.size()));
    const FitResult result = fit(spec, series, s.step.dt, options);

    std::cout << "fit\n";
    for (const auto& fp : spec.free) {
        std::cout << "  " << fp.name << " = " << format_double(param_value(result.params, fp.name)) << "  [" <<
            format_double(fp.lower) << ", " << format_double(fp.upper) << "]\n";
    }
    std::cout << "  objective = " << format_double(result.objective) << '\n'
              << "  initial_objective = " << format_double(result.initial_objective) << '\n'
              << "  iterations = " << result.iterations << '\n'
              << "  converged = " << (result.converged ? "true" : "false") << '\n'
              << "  no_improvement = " << (result.no_improvement ? "true" : "false") << '\n';

    const auto trace_path = opts.out / "fit_trace.csv";
    auto trace = open_output(trace_path);
    trace << "iteration,objective";
    for (const auto& fp : spec.free) trace << ',' << fp.name;
    trace << '\n';
    for (const auto& point : result.trace) {
        trace << point.iteration << ',' << format_double(point.objective);
        for (double v : point.values) trace << ',' << format_double(v);
        trace << '\n';
    }
    note(fmt::format("wrote {}", trace_path.string()));

    if (result.no_improvement) {
        note("no improvement over the initial midpoint; reported values are the midpoint");
        return 2;
    }
    return 0;
}

}  // namespace hivsde::cli
