#include "hivsde/model.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "hivsde/errors.hpp"

namespace hivsde {

namespace {

// Member pointers in kParamNames order.
constexpr std::array<double ModelParams::*, 10> kParamMembers{
    &ModelParams::lambda_recruit, &ModelParams::beta,  &ModelParams::mu,    &ModelParams::delta,
    &ModelParams::alpha,          &ModelParams::epsilon, &ModelParams::eta, &ModelParams::nu,
    &ModelParams::gamma,          &ModelParams::rho};

std::optional<std::size_t> param_index(std::string_view name) {
    auto it = std::find(kParamNames.begin(), kParamNames.end(), name);
    if (it == kParamNames.end()) return std::nullopt;
    return static_cast<std::size_t>(it - kParamNames.begin());
}

std::size_t require_param_index(std::string_view name) {
    auto idx = param_index(name);
    if (!idx) throw ValidationError(std::string(name), fmt::format("unknown model parameter '{}'", name));
    return *idx;
}

}  // namespace

std::optional<Compartment> compartment_from_name(std::string_view name) {
    for (std::size_t k = 0; k < kCompartments; ++k) {
        if (kCompartmentNames[k] == name) return static_cast<Compartment>(k);
    }
    return std::nullopt;
}

void validate(const ModelParams& p) {
    for (std::size_t k = 0; k < kParamMembers.size(); ++k) {
        const double v = p.*kParamMembers[k];
        if (!std::isfinite(v) || !(v > 0.0)) {
            throw ValidationError(std::string(kParamNames[k]),
                                  fmt::format("{} must be finite and strictly positive (got {})",
                                              kParamNames[k], v));
        }
    }
    if (!(p.epsilon < 1.0)) {
        throw ValidationError("epsilon", fmt::format("epsilon must lie in (0, 1) (got {})", p.epsilon));
    }
}

double param_value(const ModelParams& p, std::string_view name) {
    return p.*kParamMembers[require_param_index(name)];
}

ModelParams with_param(ModelParams p, std::string_view name, double value) {
    p.*kParamMembers[require_param_index(name)] = value;
    return p;
}

bool is_param_name(std::string_view name) { return param_index(name).has_value(); }

bool NoiseIntensities::is_zero() const {
    return std::all_of(sigma.begin(), sigma.end(), [](double s) { return s == 0.0; });
}

void validate(const NoiseIntensities& n) {
    for (std::size_t k = 0; k < kCompartments; ++k) {
        if (!std::isfinite(n.sigma[k]) || n.sigma[k] < 0.0) {
            throw ValidationError(fmt::format("sigma_{}", k + 1),
                                  fmt::format("sigma_{} must be finite and >= 0 (got {})", k + 1,
                                              n.sigma[k]));
        }
    }
}

void validate(const State& x) {
    const Vec5 v = x.to_array();
    for (std::size_t k = 0; k < kCompartments; ++k) {
        if (!std::isfinite(v[k]) || v[k] < 0.0) {
            throw ValidationError(std::string(kCompartmentNames[k]),
                                  fmt::format("state component {} must be finite and >= 0 (got {})",
                                              kCompartmentNames[k], v[k]));
        }
    }
}

Vec5 linear_flows(const ModelParams& p, const Vec5& x) {
    const auto [s_u, s_a, i, c, a] = x;
    return {
        p.lambda_recruit - (p.alpha + p.mu) * s_u,
        p.alpha * s_u - p.mu * s_a,
        p.eta * c + p.nu * a - (p.rho + p.gamma + p.mu) * i,
        p.rho * i - (p.eta + p.mu) * c,
        p.gamma * i - (p.nu + p.delta + p.mu) * a,
    };
}

Vec5 infection_flows(const ModelParams& p, const Vec5& x) {
    const auto [s_u, s_a, i, c, a] = x;
    const double aware = 1.0 - p.epsilon;
    return {
        -p.beta * s_u * i,
        -aware * p.beta * s_a * i,
        p.beta * i * (s_u + aware * s_a),
        0.0,
        0.0,
    };
}

Vec5 drift(const ModelParams& p, const State& x) {
    const Vec5 v = x.to_array();
    const Vec5 lin = linear_flows(p, v);
    const Vec5 inf = infection_flows(p, v);
    Vec5 out{};
    for (std::size_t k = 0; k < kCompartments; ++k) out[k] = lin[k] + inf[k];
    return out;
}

Vec5 diffusion(const NoiseIntensities& n, const State& x) {
    const Vec5 v = x.to_array();
    Vec5 out{};
    for (std::size_t k = 0; k < kCompartments; ++k) out[k] = n.sigma[k] * v[k];
    return out;
}

double total_population(const State& x) { return x.s_u + x.s_a + x.i + x.c + x.a; }

bool in_invariant_set(const ModelParams& p, const State& x) {
    return total_population(x) <= p.lambda_recruit / p.mu;
}

double euclidean_norm(std::span<const double, kCompartments> v) {
    // hypot-style scaling keeps |x|^2 finite for populations near 1e154+.
    double scale = 0.0;
    for (double e : v) scale = std::max(scale, std::abs(e));
    if (scale == 0.0 || !std::isfinite(scale)) return scale;
    double sum = 0.0;
    for (double e : v) {
        const double r = e / scale;
        sum += r * r;
    }
    return scale * std::sqrt(sum);
}

}  // namespace hivsde
