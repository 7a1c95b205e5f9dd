#include "hivsde/thresholds.hpp"

#include <algorithm>

#include "hivsde/errors.hpp"

namespace hivsde {

namespace {

double half_sq(double s) { return 0.5 * s * s; }

// b [mu + (1 - eps) alpha] L, the numerator shared by every index.
double infection_numerator(const ModelParams& p) {
    return p.beta * (p.mu + (1.0 - p.epsilon) * p.alpha) * p.lambda_recruit;
}

// mu (k2 (k1 + gamma) + rho k1 + gamma delta) + eta gamma delta, which equals
// k1 k2 k4 - k1 rho eta - k2 gamma nu without the cancellation.
double deterministic_bracket(const ModelParams& p) {
    const double k1 = p.mu + p.delta + p.nu;
    const double k2 = p.mu + p.eta;
    return p.mu * (k2 * (k1 + p.gamma) + p.rho * k1 + p.gamma * p.delta) + p.eta * p.gamma * p.delta;
}

}  // namespace

RateConstants rate_constants(const ModelParams& p, const NoiseIntensities& n) {
    RateConstants rc;
    rc.k[0] = p.mu + p.delta + p.nu;
    rc.k[1] = p.mu + p.eta;
    rc.k[2] = infection_numerator(p) / (p.mu * (p.mu + p.alpha));
    rc.k[3] = p.rho + p.gamma + p.mu;
    rc.k[4] = p.mu + half_sq(n.sigma[1]);
    rc.k[5] = p.mu + p.alpha + half_sq(n.sigma[0]);
    return rc;
}

double r0(const ModelParams& p) {
    const double k1 = p.mu + p.delta + p.nu;
    const double k2 = p.mu + p.eta;
    return infection_numerator(p) * k1 * k2 / (p.mu * (p.mu + p.alpha) * deterministic_bracket(p));
}

double stochastic_bracket(const ModelParams& p, const NoiseIntensities& n) {
    // Expanded around the noise-free bracket so that zero noise reproduces r0() bit for bit.
    const auto rc = rate_constants(p, n);
    const auto& s = n.sigma;
    return deterministic_bracket(p) + half_sq(s[2]) * rc.k1() * rc.k2() - half_sq(s[4]) * p.rho * p.eta -
           half_sq(s[3]) * p.gamma * p.nu;
}

double r0_stochastic(const ModelParams& p, const NoiseIntensities& n) {
    const auto rc = rate_constants(p, n);
    const double bracket = stochastic_bracket(p, n);
    if (!(bracket > 0.0)) throw NonpositiveDenominator(bracket);
    return infection_numerator(p) * rc.k1() * rc.k2() / (rc.k5() * rc.k6() * bracket);
}

double sigma_hat(const ModelParams& p, const NoiseIntensities& n) {
    const auto& s = n.sigma;
    return std::min({p.delta + half_sq(s[4]), half_sq(s[2]), half_sq(s[3])});
}

double r0_extinction(const ModelParams& p, const NoiseIntensities& n, ExtinctionVariant variant) {
    const double damping = p.mu + sigma_hat(p, n) / 3.0;
    switch (variant) {
        case ExtinctionVariant::kPrinted:
            return infection_numerator(p) / damping;
        case ExtinctionVariant::kDerivation:
            return infection_numerator(p) / (p.mu * (p.mu + p.alpha) * damping);
    }
    return 0.0;
}

bool noise_condition(const ModelParams& p, const NoiseIntensities& n) {
    double max_sq = 0.0;
    for (double s : n.sigma) max_sq = std::max(max_sq, s * s);
    return p.mu > 0.5 * max_sq;
}

ThresholdReport threshold_report(const ModelParams& p, const NoiseIntensities& n) {
    ThresholdReport rep;
    rep.r0 = r0(p);
    rep.constants = rate_constants(p, n);
    rep.stochastic_bracket = stochastic_bracket(p, n);
    rep.r0_s = r0_stochastic(p, n);
    rep.r0_e_printed = r0_extinction(p, n, ExtinctionVariant::kPrinted);
    rep.r0_e_derivation = r0_extinction(p, n, ExtinctionVariant::kDerivation);
    rep.sigma_hat = sigma_hat(p, n);
    rep.noise_condition_holds = noise_condition(p, n);
    return rep;
}

}  // namespace hivsde
