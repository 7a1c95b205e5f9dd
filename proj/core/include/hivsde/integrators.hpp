#pragma once

// Time stepping for the deterministic and stochastic models.
//
// The truncated Euler-Maruyama schemes advance an unclamped intermediate x_bar and
// derive the recorded state from it each step:
//
//   x_bar[k+1] = x_bar[k] + (f1(x_bar[k]) + f2(X[k])) dt + g(x_bar[k]) sqrt(dt) r[k]
//   X[k+1]     = clamp0(truncate(x_bar[k+1]))      (nonnegativity preserving, NPTEM)
//   X+[k+1]    = floor_dt(truncate(x_bar[k+1]))    (positivity preserving, PPTEM)
//
// where f1 holds recruitment and the linear transfers, f2 the bilinear infection terms,
// g_i = sigma_i * max(0, x_i), and truncate() caps the Euclidean norm at
// h(dt) = h_hat * dt^(-1/4), h_hat = max(1, |x(0)|).

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "hivsde/model.hpp"

namespace hivsde {

enum class Scheme { kRk4, kEm, kNptem, kPptem };

std::string_view to_string(Scheme s);
std::optional<Scheme> scheme_from_string(std::string_view name);

struct StepConfig {
    double dt = 0.01;
    double t_end = 1.0;
    std::uint64_t seed = 0;
    Scheme scheme = Scheme::kPptem;

    friend bool operator==(const StepConfig&, const StepConfig&) = default;
};

/// dt > 0, t_end >= dt, and dt <= 1 for the truncated schemes.
void validate(const StepConfig& cfg);

/// Number of steps K on the grid t_k = k dt, K = round(t_end / dt).
std::size_t step_count(const StepConfig& cfg);

struct TrajectoryMeta {
    StepConfig step;
    ModelParams params;
    NoiseIntensities noise;
    std::uint64_t fingerprint = 0;  ///< hash of params and noise
};

struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    TrajectoryMeta meta;

    std::size_t size() const { return states.size(); }
    double t_end() const { return times.back(); }
};

std::uint64_t fingerprint(const ModelParams& p, const NoiseIntensities& n);

struct TruncationContext {
    double h_hat = 1.0;    ///< max(1, z(1), |x(0)|) with z the identity on [1, inf)
    double h_delta = 1.0;  ///< h_hat * dt^(-1/4)

    static TruncationContext make(const State& x0, double dt);
};

/// Componentwise max(0, x).
Vec5 clamp_nonneg(const Vec5& x);

/// Rescales x onto the sphere of radius h_delta when |x| exceeds it; zero stays zero.
Vec5 truncate_norm(const Vec5& x, const TruncationContext& ctx);

/// Componentwise max(dt, x).
State floor_delta(const Vec5& x, double dt);

struct DriftSplit {
    Vec5 f1{};  ///< recruitment and linear transfers at clamp_nonneg(x_bar)
    Vec5 f2{};  ///< bilinear infection terms at clamp_nonneg(x_trunc)
};

DriftSplit drift_split(const ModelParams& p, const Vec5& x_bar, const State& x_trunc);

struct SdeStep {
    Vec5 x_bar{};  ///< unclamped intermediate
    State nptem;   ///< clamp_nonneg(truncate_norm(x_bar))
    State pptem;   ///< floor_delta(truncate_norm(x_bar), dt)
};

/// One step of the truncated scheme. `noise` holds five independent N(0,1) draws in
/// compartment order. Throws StepOverflow (step 0) on a non-finite intermediate.
SdeStep sde_step(const ModelParams& p, const NoiseIntensities& n, const Vec5& x_bar, const State& x_trunc,
                 double dt, const TruncationContext& ctx, const Vec5& noise);

/// One plain Euler-Maruyama step: x + drift(x) dt + sigma x sqrt(dt) r, nothing clamped.
Vec5 em_step(const ModelParams& p, const NoiseIntensities& n, const Vec5& x, double dt, const Vec5& noise);

/// Classical fourth-order Runge-Kutta for the deterministic model. Seed is ignored.
Trajectory rk4_simulate(const ModelParams& p, const State& x0, const StepConfig& cfg);

/// em, nptem or pptem, fully determined by (p, n, x0, cfg) including cfg.seed.
/// Records x for em, X for nptem and X+ for pptem at every grid point.
Trajectory sde_simulate(const ModelParams& p, const NoiseIntensities& n, const State& x0, const StepConfig& cfg);

/// Dispatches on cfg.scheme.
Trajectory simulate(const ModelParams& p, const NoiseIntensities& n, const State& x0, const StepConfig& cfg);

/// SplitMix64 finalizer over (base, path); streams for distinct paths are independent
/// of the order in which they are generated.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t path);

/// Five standard normal draws per call, in compartment order.
class NormalStream {
  public:
    explicit NormalStream(std::uint64_t seed);
    Vec5 next();

  private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace hivsde
