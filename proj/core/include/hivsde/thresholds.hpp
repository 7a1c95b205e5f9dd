#pragma once

#include <array>

#include "hivsde/model.hpp"

namespace hivsde {

/// Aggregate rate constants shared by the threshold formulas.
///   k1 = mu + delta + nu        k2 = mu + eta
///   k3 = b (mu + (1-eps) alpha) L / (mu (mu + alpha))   (reported only; no formula uses it)
///   k4 = rho + gamma + mu       k5 = mu + s2^2/2        k6 = mu + alpha + s1^2/2
struct RateConstants {
    std::array<double, 6> k{};

    double k1() const { return k[0]; }
    double k2() const { return k[1]; }
    double k3() const { return k[2]; }
    double k4() const { return k[3]; }
    double k5() const { return k[4]; }
    double k6() const { return k[5]; }
};

RateConstants rate_constants(const ModelParams& p, const NoiseIntensities& n);

/// Deterministic basic reproduction number.
double r0(const ModelParams& p);

/// k1 k2 (k4 + s3^2/2) - (k1 + s5^2/2) rho eta - (k2 + s4^2/2) gamma nu.
double stochastic_bracket(const ModelParams& p, const NoiseIntensities& n);

/// Stochastic persistence index. Equals r0(p) when every sigma is zero.
/// Throws NonpositiveDenominator when stochastic_bracket() <= 0.
double r0_stochastic(const ModelParams& p, const NoiseIntensities& n);

/// min(delta + s5^2/2, s3^2/2, s4^2/2).
double sigma_hat(const ModelParams& p, const NoiseIntensities& n);

enum class ExtinctionVariant {
    kPrinted,     ///< b [mu + (1-eps) alpha] L / (mu + sigma_hat/3)
    kDerivation,  ///< b L [mu + (1-eps) alpha] / (mu (mu + alpha) (mu + sigma_hat/3))
};

/// Stochastic extinction index. The two variants differ by the factor mu (mu + alpha);
/// both are reported because neither can be ruled out from the closed form alone.
double r0_extinction(const ModelParams& p, const NoiseIntensities& n, ExtinctionVariant variant);

/// mu > max_i(sigma_i^2) / 2.
bool noise_condition(const ModelParams& p, const NoiseIntensities& n);

struct ThresholdReport {
    double r0 = 0.0;
    double r0_s = 0.0;
    double r0_e_printed = 0.0;
    double r0_e_derivation = 0.0;
    RateConstants constants;
    double sigma_hat = 0.0;
    double stochastic_bracket = 0.0;
    bool noise_condition_holds = false;
};

/// Evaluates every index. Propagates NonpositiveDenominator from r0_stochastic.
ThresholdReport threshold_report(const ModelParams& p, const NoiseIntensities& n);

}  // namespace hivsde
