#pragma once

// Closed-form reference solutions used by the order-of-convergence checks.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "hivsde/integrators.hpp"
#include "hivsde/model.hpp"

namespace hivsde::testing {

// Exact solution of the I = C = A = 0 slice, where the model is affine in (S_u, S_a).
inline Vec5 susceptible_slice_exact(const ModelParams& p, const Vec5& x0, double t) {
    const double k = p.alpha + p.mu;
    const double su_star = p.lambda_recruit / k;
    const double b = x0[0] - su_star;
    const double sa_star = p.alpha * su_star / p.mu;
    const double coef = p.alpha * b / (p.mu - k);
    const double c = x0[1] - sa_star - coef;
    return {su_star + b * std::exp(-k * t), sa_star + coef * std::exp(-k * t) + c * std::exp(-p.mu * t), 0, 0, 0};
}

// Endpoint errors of RK4 on the slice for each step size.
inline std::vector<double> rk4_slice_errors(const std::vector<double>& steps) {
    ModelParams p{};
    p.lambda_recruit = 1000.0;
    p.alpha = 0.9;
    p.mu = 0.3;
    const Vec5 x0{5000, 10, 0, 0, 0};
    const double t_end = 8.0;
    const Vec5 exact = susceptible_slice_exact(p, x0, t_end);
    std::vector<double> errors;
    for (double dt : steps) {
        StepConfig cfg;
        cfg.scheme = Scheme::kRk4;
        cfg.dt = dt;
        cfg.t_end = t_end;
        const Vec5 got = rk4_simulate(p, State::from_array(x0), cfg).states.back().to_array();
        errors.push_back(std::hypot(got[0] - exact[0], got[1] - exact[1]));
    }
    return errors;
}

// RMS endpoint error of plain EM on dS = -(alpha + mu) S dt + sigma S dB (the Lambda = beta = 0
// slice), whose exact solution is S0 exp((-(alpha + mu) - sigma^2/2) t + sigma B(t)).
// Each path draws increments on the 2^-finest grid; coarser levels sum them.
inline std::vector<double> em_rms_errors(const std::vector<int>& levels, int finest, std::size_t n_paths,
                                         double sigma = 0.5, std::uint64_t seed = 4242) {
    ModelParams p{};
    p.alpha = 0.3;
    p.mu = 0.2;
    NoiseIntensities n;
    n.sigma[0] = sigma;
    const double s0 = 1.0;
    const double t_end = 1.0;
    const std::size_t fine_steps = std::size_t{1} << finest;
    const double fine_dt = t_end / static_cast<double>(fine_steps);

    std::vector<double> sq(levels.size(), 0.0);
    NormalStream rng(seed);
    std::vector<double> db(fine_steps);
    for (std::size_t path = 0; path < n_paths; ++path) {
        double b_total = 0.0;
        for (double& d : db) {
            d = std::sqrt(fine_dt) * rng.next()[0];
            b_total += d;
        }
        const double exact = s0 * std::exp((-(p.alpha + p.mu) - 0.5 * sigma * sigma) * t_end + sigma * b_total);
        for (std::size_t l = 0; l < levels.size(); ++l) {
            const std::size_t steps = std::size_t{1} << levels[l];
            const std::size_t group = fine_steps / steps;
            const double dt = t_end / static_cast<double>(steps);
            Vec5 x{s0, 0, 0, 0, 0};
            for (std::size_t k = 0; k < steps; ++k) {
                double inc = 0.0;
                for (std::size_t j = 0; j < group; ++j) inc += db[k * group + j];
                x = em_step(p, n, x, dt, {inc / std::sqrt(dt), 0, 0, 0, 0});
            }
            sq[l] += (x[0] - exact) * (x[0] - exact);
        }
    }
    for (double& e : sq) e = std::sqrt(e / static_cast<double>(n_paths));
    return sq;
}

}  // namespace hivsde::testing
