#include "hivsde/calibration.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "hivsde/errors.hpp"
#include "hivsde/integrators.hpp"

namespace hivsde {

namespace {

constexpr std::array<std::string_view, 6> kTargetNames{"S_u", "S_a", "I", "C", "A", "I+C+A"};

struct Vertex {
    std::vector<double> u;  // box-normalized coordinates in [0, 1]
    double f = 0.0;
};

}  // namespace

std::string_view to_string(Target t) { return kTargetNames[static_cast<std::size_t>(t)]; }

std::optional<Target> target_from_string(std::string_view name) {
    for (std::size_t k = 0; k < kTargetNames.size(); ++k) {
        if (kTargetNames[k] == name) return static_cast<Target>(k);
    }
    return std::nullopt;
}

double target_value(const State& x, Target t) {
    switch (t) {
        case Target::kSu: return x.s_u;
        case Target::kSa: return x.s_a;
        case Target::kI: return x.i;
        case Target::kC: return x.c;
        case Target::kA: return x.a;
        case Target::kInfectedTotal: return x.i + x.c + x.a;
    }
    return 0.0;
}

void validate(const ObservedSeries& series) {
    double prev = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < series.records.size(); ++k) {
        const auto& r = series.records[k];
        if (!std::isfinite(r.time) || r.time < 0.0 || !(r.time > prev)) {
            throw ValidationError("time", fmt::format("record {}: times must be nonnegative and strictly increasing", k));
        }
        if (!std::isfinite(r.observed) || r.observed < 0.0) {
            throw ValidationError("observed", fmt::format("record {}: observed must be finite and >= 0", k));
        }
        prev = r.time;
    }
}

double objective(const ModelParams& p, const ObservedSeries& series, const State& x0, double dt) {
    if (series.records.empty()) return 0.0;
    const double t_last = series.records.back().time;
    StepConfig cfg;
    cfg.dt = dt;
    cfg.t_end = std::max(dt, std::ceil(t_last / dt - 1e-9) * dt);
    cfg.scheme = Scheme::kRk4;
    const Trajectory traj = rk4_simulate(p, x0, cfg);

    double sum = 0.0;
    for (const auto& r : series.records) {
        const double pos = r.time / dt;
        auto k = static_cast<std::size_t>(std::floor(pos));
        k = std::min(k, traj.size() - 1);
        double model = target_value(traj.states[k], r.target);
        if (k + 1 < traj.size()) {
            const double frac = pos - static_cast<double>(k);
            if (frac > 0.0) {
                model += frac * (target_value(traj.states[k + 1], r.target) - model);
            }
        }
        const double resid = model - r.observed;
        sum += resid * resid;
    }
    return sum;
}

FitResult fit(const FitSpec& spec, const ObservedSeries& series, double dt, const FitOptions& options) {
    const std::size_t dim = spec.free.size();
    if (dim == 0) throw ValidationError("free", "fit needs at least one free parameter");
    if (series.records.size() < dim) {
        throw ValidationError("records", fmt::format("{} records cannot constrain {} free parameters",
                                                     series.records.size(), dim));
    }
    validate(series);
    for (std::size_t i = 0; i < dim; ++i) {
        const auto& fp = spec.free[i];
        if (!is_param_name(fp.name)) throw ValidationError(fp.name, fmt::format("unknown parameter '{}'", fp.name));
        for (std::size_t j = 0; j < i; ++j) {
            if (spec.free[j].name == fp.name) throw ValidationError(fp.name, "parameter freed twice");
        }
        if (!(fp.lower < fp.upper)) {
            throw ValidationError(fp.name, fmt::format("bounds for {} need lower < upper", fp.name));
        }
        validate(with_param(spec.fixed, fp.name, fp.lower));
        validate(with_param(spec.fixed, fp.name, fp.upper));
    }

    auto to_params = [&](const std::vector<double>& u) {
        ModelParams p = spec.fixed;
        for (std::size_t i = 0; i < dim; ++i) {
            const auto& fp = spec.free[i];
            const double v = u[i] >= 1.0 ? fp.upper : fp.lower + u[i] * (fp.upper - fp.lower);
            p = with_param(p, fp.name, v);
        }
        return p;
    };
    auto values_of = [&](const std::vector<double>& u) {
        const ModelParams p = to_params(u);
        std::vector<double> v(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = param_value(p, spec.free[i].name);
        return v;
    };
    auto project = [](std::vector<double> u) {
        for (double& e : u) e = std::clamp(e, 0.0, 1.0);
        return u;
    };
    auto evaluate = [&](std::vector<double> u) {
        u = project(std::move(u));
        double f;
        try {
            f = objective(to_params(u), series, spec.x0, dt);
        } catch (const StepOverflow&) {
            f = std::numeric_limits<double>::infinity();
        }
        if (std::isnan(f)) f = std::numeric_limits<double>::infinity();
        return Vertex{std::move(u), f};
    };

    std::vector<Vertex> simplex;
    simplex.reserve(dim + 1);
    simplex.push_back(evaluate(std::vector<double>(dim, 0.5)));
    const double initial = simplex.front().f;
    for (std::size_t i = 0; i < dim; ++i) {
        std::vector<double> u(dim, 0.5);
        u[i] += 0.25;
        simplex.push_back(evaluate(std::move(u)));
    }

    FitResult result;
    result.initial_objective = initial;

    auto by_f = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
    auto record = [&](std::size_t it) {
        result.trace.push_back({it, simplex.front().f, values_of(simplex.front().u)});
    };
    auto along = [&](const std::vector<double>& from, const std::vector<double>& to, double t) {
        std::vector<double> u(dim);
        for (std::size_t i = 0; i < dim; ++i) u[i] = from[i] + t * (to[i] - from[i]);
        return u;
    };

    std::stable_sort(simplex.begin(), simplex.end(), by_f);
    record(0);

    std::size_t it = 0;
    while (it < options.max_iterations) {
        const double f_best = simplex.front().f;
        const double f_worst = simplex.back().f;
        double diameter = 0.0;
        for (std::size_t v = 1; v <= dim; ++v) {
            for (std::size_t i = 0; i < dim; ++i) {
                diameter = std::max(diameter, std::abs(simplex[v].u[i] - simplex[0].u[i]));
            }
        }
        const bool flat = std::isfinite(f_worst) &&
                          f_worst - f_best <= options.rel_tolerance * 0.5 * (std::abs(f_best) + std::abs(f_worst));
        if (flat || diameter < 1e-12) {
            result.converged = true;
            break;
        }
        ++it;

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t v = 0; v < dim; ++v) {
            for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[v].u[i] / static_cast<double>(dim);
        }
        Vertex& worst = simplex.back();
        const Vertex reflected = evaluate(along(worst.u, centroid, 2.0));
        if (reflected.f < simplex.front().f) {
            Vertex expanded = evaluate(along(worst.u, centroid, 3.0));
            worst = expanded.f < reflected.f ? std::move(expanded) : reflected;
        } else if (reflected.f < simplex[dim - 1].f) {
            worst = reflected;
        } else {
            const bool outside = reflected.f < worst.f;
            Vertex contracted = outside ? evaluate(along(worst.u, centroid, 1.5)) : evaluate(along(worst.u, centroid, 0.5));
            const double bar = outside ? reflected.f : worst.f;
            if (contracted.f < bar) {
                worst = std::move(contracted);
            } else {
                for (std::size_t v = 1; v <= dim; ++v) simplex[v] = evaluate(along(simplex[0].u, simplex[v].u, 0.5));
            }
        }
        std::stable_sort(simplex.begin(), simplex.end(), by_f);
        record(it);
    }

    result.iterations = it;
    if (!(simplex.front().f < initial)) {
        result.no_improvement = true;
        result.params = to_params(std::vector<double>(dim, 0.5));
        result.objective = initial;
    } else {
        result.params = to_params(simplex.front().u);
        result.objective = simplex.front().f;
    }
    return result;
}

}  // namespace hivsde
