#pragma once

// Least-squares calibration of the deterministic model against yearly counts.

#include <string>
#include <vector>

#include "hivsde/model.hpp"

namespace hivsde {

/// What a single observation measures.
enum class Target { kSu, kSa, kI, kC, kA, kInfectedTotal };

std::string_view to_string(Target t);
std::optional<Target> target_from_string(std::string_view name);
double target_value(const State& x, Target t);

struct Observation {
    double time = 0.0;      ///< since the start of the simulation
    double observed = 0.0;  ///< individuals
    Target target = Target::kInfectedTotal;
};

struct ObservedSeries {
    std::vector<Observation> records;
};

/// Times strictly increasing and nonnegative, observations finite and >= 0.
void validate(const ObservedSeries& series);

struct FreeParameter {
    std::string name;
    double lower = 0.0;
    double upper = 0.0;
};

struct FitSpec {
    std::vector<FreeParameter> free;
    ModelParams fixed;  ///< values of the free parameters here are ignored
    State x0;
};

/// Sum of squared residuals of an RK4 run of the model against the series, with the
/// model linearly interpolated between grid points at each observation time.
double objective(const ModelParams& p, const ObservedSeries& series, const State& x0, double dt);

struct FitOptions {
    std::size_t max_iterations = 500;
    double rel_tolerance = 1e-8;
};

struct TracePoint {
    std::size_t iteration = 0;
    double objective = 0.0;
    std::vector<double> values;  ///< free parameter values of the best vertex
};

struct FitResult {
    ModelParams params;
    double objective = 0.0;
    double initial_objective = 0.0;
    std::size_t iterations = 0;
    bool converged = false;       ///< stopping tolerance reached inside the budget
    bool no_improvement = false;  ///< best point is the initial midpoint
    std::vector<TracePoint> trace;
};

/// Bounded Nelder-Mead search from the midpoint of the free-parameter box. Vertices are
/// projected onto the box, so fitted values always respect the bounds.
/// Throws ValidationError for an empty free set, bad bounds, unknown names, or fewer
/// records than free parameters.
FitResult fit(const FitSpec& spec, const ObservedSeries& series, double dt, const FitOptions& options = {});

}  // namespace hivsde
