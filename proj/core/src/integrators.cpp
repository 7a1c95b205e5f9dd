#include "hivsde/integrators.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

#include <fmt/format.h>

#include "hivsde/errors.hpp"

namespace hivsde {

namespace {

constexpr std::array<std::string_view, 4> kSchemeNames{"rk4", "em", "nptem", "pptem"};

bool all_finite(const Vec5& v) {
    return std::all_of(v.begin(), v.end(), [](double e) { return std::isfinite(e); });
}

Vec5 axpy(const Vec5& x, double h, const Vec5& d) {
    Vec5 out{};
    for (std::size_t k = 0; k < kCompartments; ++k) out[k] = x[k] + h * d[k];
    return out;
}

Trajectory make_trajectory(const ModelParams& p, const NoiseIntensities& n, const StepConfig& cfg, std::size_t steps) {
    Trajectory traj;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    traj.meta = {cfg, p, n, fingerprint(p, n)};
    return traj;
}

}  // namespace

std::string_view to_string(Scheme s) { return kSchemeNames[static_cast<std::size_t>(s)]; }

std::optional<Scheme> scheme_from_string(std::string_view name) {
    for (std::size_t k = 0; k < kSchemeNames.size(); ++k) {
        if (kSchemeNames[k] == name) return static_cast<Scheme>(k);
    }
    return std::nullopt;
}

void validate(const StepConfig& cfg) {
    if (!std::isfinite(cfg.dt) || !(cfg.dt > 0.0)) {
        throw ValidationError("dt", fmt::format("dt must be positive (got {})", cfg.dt));
    }
    if (!std::isfinite(cfg.t_end) || !(cfg.t_end >= cfg.dt)) {
        throw ValidationError("t_end", fmt::format("t_end must be >= dt (got t_end={}, dt={})", cfg.t_end, cfg.dt));
    }
    if ((cfg.scheme == Scheme::kNptem || cfg.scheme == Scheme::kPptem) && cfg.dt > 1.0) {
        throw ValidationError("dt", fmt::format("truncated schemes need dt in (0, 1] (got {})", cfg.dt));
    }
}

std::size_t step_count(const StepConfig& cfg) {
    return static_cast<std::size_t>(std::llround(cfg.t_end / cfg.dt));
}

std::uint64_t fingerprint(const ModelParams& p, const NoiseIntensities& n) {
    // FNV-1a over the bit patterns.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](double v) {
        auto bits = std::bit_cast<std::uint64_t>(v);
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    };
    for (double v : {p.lambda_recruit, p.beta, p.mu, p.delta, p.alpha, p.epsilon, p.eta, p.nu, p.gamma, p.rho}) {
        mix(v);
    }
    for (double s : n.sigma) mix(s);
    return h;
}

TruncationContext TruncationContext::make(const State& x0, double dt) {
    const Vec5 v = x0.to_array();
    TruncationContext ctx;
    ctx.h_hat = std::max(1.0, euclidean_norm(v));
    ctx.h_delta = ctx.h_hat * std::pow(dt, -0.25);
    return ctx;
}

Vec5 clamp_nonneg(const Vec5& x) {
    Vec5 out{};
    for (std::size_t k = 0; k < kCompartments; ++k) out[k] = std::max(0.0, x[k]);
    return out;
}

Vec5 truncate_norm(const Vec5& x, const TruncationContext& ctx) {
    const double norm = euclidean_norm(x);
    if (norm <= ctx.h_delta || norm == 0.0) return x;
    const double scale = ctx.h_delta / norm;
    Vec5 out{};
    for (std::size_t k = 0; k < kCompartments; ++k) out[k] = x[k] * scale;
    return out;
}

State floor_delta(const Vec5& x, double dt) {
    Vec5 out{};
    for (std::size_t k = 0; k < kCompartments; ++k) out[k] = std::max(dt, x[k]);
    return State::from_array(out);
}

DriftSplit drift_split(const ModelParams& p, const Vec5& x_bar, const State& x_trunc) {
    return {linear_flows(p, clamp_nonneg(x_bar)), infection_flows(p, clamp_nonneg(x_trunc.to_array()))};
}

SdeStep sde_step(const ModelParams& p, const NoiseIntensities& n, const Vec5& x_bar, const State& x_trunc,
                 double dt, const TruncationContext& ctx, const Vec5& noise) {
    const auto [f1, f2] = drift_split(p, x_bar, x_trunc);
    const Vec5 pos = clamp_nonneg(x_bar);
    const double sqrt_dt = std::sqrt(dt);
    SdeStep out;
    for (std::size_t k = 0; k < kCompartments; ++k) {
        const double g = n.sigma[k] * pos[k];
        out.x_bar[k] = x_bar[k] + (f1[k] + f2[k]) * dt + g * sqrt_dt * noise[k];
    }
    if (!all_finite(out.x_bar)) throw StepOverflow(0);
    const Vec5 truncated = truncate_norm(out.x_bar, ctx);
    out.nptem = State::from_array(clamp_nonneg(truncated));
    out.pptem = floor_delta(truncated, dt);
    return out;
}

Vec5 em_step(const ModelParams& p, const NoiseIntensities& n, const Vec5& x, double dt, const Vec5& noise) {
    const Vec5 lin = linear_flows(p, x);
    const Vec5 inf = infection_flows(p, x);
    const double sqrt_dt = std::sqrt(dt);
    Vec5 out{};
    for (std::size_t k = 0; k < kCompartments; ++k) {
        out[k] = x[k] + (lin[k] + inf[k]) * dt + n.sigma[k] * x[k] * sqrt_dt * noise[k];
    }
    return out;
}

Trajectory rk4_simulate(const ModelParams& p, const State& x0, const StepConfig& cfg) {
    validate(cfg);
    const std::size_t steps = step_count(cfg);
    const double h = cfg.dt;
    Trajectory traj = make_trajectory(p, NoiseIntensities{}, cfg, steps);
    traj.meta.step.scheme = Scheme::kRk4;

    auto rhs = [&p](const Vec5& v) { return drift(p, State::from_array(v)); };
    Vec5 x = x0.to_array();
    traj.times.push_back(0.0);
    traj.states.push_back(x0);
    for (std::size_t k = 0; k < steps; ++k) {
        const Vec5 k1 = rhs(x);
        const Vec5 k2 = rhs(axpy(x, 0.5 * h, k1));
        const Vec5 k3 = rhs(axpy(x, 0.5 * h, k2));
        const Vec5 k4 = rhs(axpy(x, h, k3));
        for (std::size_t c = 0; c < kCompartments; ++c) {
            x[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        }
        if (!all_finite(x)) throw StepOverflow(k + 1);
        traj.times.push_back(static_cast<double>(k + 1) * h);
        traj.states.push_back(State::from_array(x));
    }
    return traj;
}

Trajectory sde_simulate(const ModelParams& p, const NoiseIntensities& n, const State& x0, const StepConfig& cfg) {
    validate(cfg);
    if (cfg.scheme == Scheme::kRk4) {
        throw ValidationError("scheme", "sde_simulate needs scheme em, nptem or pptem");
    }
    const std::size_t steps = step_count(cfg);
    const double dt = cfg.dt;
    Trajectory traj = make_trajectory(p, n, cfg, steps);
    NormalStream rng(cfg.seed);

    traj.times.push_back(0.0);

    if (cfg.scheme == Scheme::kEm) {
        traj.states.push_back(x0);
        Vec5 x = x0.to_array();
        for (std::size_t k = 0; k < steps; ++k) {
            x = em_step(p, n, x, dt, rng.next());
            if (!all_finite(x)) throw StepOverflow(k + 1);
            traj.times.push_back(static_cast<double>(k + 1) * dt);
            traj.states.push_back(State::from_array(x));
        }
        return traj;
    }

    const auto ctx = TruncationContext::make(x0, dt);
    const bool record_pptem = cfg.scheme == Scheme::kPptem;
    // The recursion starts from x0 itself; the recorded t = 0 point gets the same
    // projection as every later point so the scheme's bounds hold on the whole grid.
    const Vec5 x0_trunc = truncate_norm(x0.to_array(), ctx);
    traj.states.push_back(record_pptem ? floor_delta(x0_trunc, dt) : State::from_array(clamp_nonneg(x0_trunc)));
    Vec5 x_bar = x0.to_array();
    State x_trunc = x0;
    for (std::size_t k = 0; k < steps; ++k) {
        SdeStep step;
        try {
            step = sde_step(p, n, x_bar, x_trunc, dt, ctx, rng.next());
        } catch (const StepOverflow&) {
            throw StepOverflow(k + 1);
        }
        x_bar = step.x_bar;
        x_trunc = step.nptem;
        traj.times.push_back(static_cast<double>(k + 1) * dt);
        traj.states.push_back(record_pptem ? step.pptem : step.nptem);
    }
    return traj;
}

Trajectory simulate(const ModelParams& p, const NoiseIntensities& n, const State& x0, const StepConfig& cfg) {
    if (cfg.scheme == Scheme::kRk4) return rk4_simulate(p, x0, cfg);
    return sde_simulate(p, n, x0, cfg);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t path) {
    auto splitmix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return splitmix(splitmix(base) ^ (path * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
}

NormalStream::NormalStream(std::uint64_t seed) : engine_(derive_seed(seed, 0)) {}

Vec5 NormalStream::next() {
    Vec5 r{};
    for (double& v : r) v = normal_(engine_);
    return r;
}

}  // namespace hivsde
