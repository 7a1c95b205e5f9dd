#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <random>

#include "hivsde/model.hpp"

namespace hivsde::testing {

// Indonesia, persistence regime.
inline ModelParams indonesia() {
    ModelParams p;
    p.lambda_recruit = 229800000.0 / 67.39;
    p.beta = 0.3465 / 229800000.0;
    p.mu = 1.0 / 67.39;
    p.delta = 0.7012;
    p.alpha = 0.2351;
    p.epsilon = 0.3243;
    p.eta = 0.2059;
    p.nu = 0.7661;
    p.gamma = 0.1882;
    p.rho = 0.00036523;
    return p;
}

inline ModelParams indonesia_extinction() {
    ModelParams p = indonesia();
    p.beta = 0.1065 / 229800000.0;
    return p;
}

inline State indonesia_x0() { return {129789089.0, 100000000.0, 7195.0, 0.0, 3716.0}; }

inline ModelParams china() {
    ModelParams p;
    p.lambda_recruit = 1376460000.0 / 76.34;
    p.beta = 0.71 / 1376460000.0;
    p.mu = 1.0 / 76.34;
    p.delta = 0.42;
    p.alpha = 0.13;
    p.epsilon = 0.5;
    p.eta = 0.18;
    p.nu = 0.72;
    p.gamma = 0.14;
    p.rho = 0.82;
    return p;
}

inline State china_x0() { return {1088230000.0, 288230000.0, 153193.0, 295358.0, 52128.0}; }

// Published endemic point (rounded to whole individuals).
inline State published_endemic() { return {12267874.0, 85638867.0, 18584806.0, 30748.0, 2359917.0}; }

// Distance in units in the last place between two finite doubles of the same sign.
inline std::int64_t ulp_distance(double a, double b) {
    if (a == b) return 0;
    std::int64_t ia, ib;
    std::memcpy(&ia, &a, sizeof a);
    std::memcpy(&ib, &b, sizeof b);
    if ((ia < 0) != (ib < 0)) return std::numeric_limits<std::int64_t>::max();
    return ia > ib ? ia - ib : ib - ia;
}

// Random valid parameters spanning a few orders of magnitude around epidemiological scales.
inline ModelParams random_params(std::mt19937_64& rng) {
    auto log_uniform = [&rng](double lo, double hi) {
        std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
        return std::exp(u(rng));
    };
    std::uniform_real_distribution<double> unit(0.01, 0.99);
    ModelParams p;
    p.lambda_recruit = log_uniform(1e2, 1e8);
    p.mu = log_uniform(1e-3, 1e-1);
    // beta scaled so that R0 lands on either side of 1.
    p.beta = log_uniform(1e-3, 1e1) * p.mu / p.lambda_recruit;
    p.delta = log_uniform(1e-3, 2.0);
    p.alpha = log_uniform(1e-3, 2.0);
    p.epsilon = unit(rng);
    p.eta = log_uniform(1e-3, 2.0);
    p.nu = log_uniform(1e-3, 2.0);
    p.gamma = log_uniform(1e-3, 2.0);
    p.rho = log_uniform(1e-4, 2.0);
    return p;
}

inline State random_state(std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> u(0.0, scale);
    return {u(rng), u(rng), u(rng), u(rng), u(rng)};
}

}  // namespace hivsde::testing
