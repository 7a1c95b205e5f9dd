#pragma once

// Five-compartment HIV/AIDS transmission model with protection awareness.
//
//   S_u' = L - b S_u I - (alpha + mu) S_u
//   S_a' = alpha S_u - (1 - eps) b S_a I - mu S_a
//   I'   = b I (S_u + (1 - eps) S_a) + eta C + nu A - (rho + gamma + mu) I
//   C'   = rho I - (eta + mu) C
//   A'   = gamma I - (nu + delta + mu) A
//
// The stochastic version perturbs each compartment with multiplicative white
// noise sigma_i X_i dB_i.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace hivsde {

inline constexpr std::size_t kCompartments = 5;

/// Five reals, one per compartment, in the order S_u, S_a, I, C, A.
using Vec5 = std::array<double, kCompartments>;

enum class Compartment : std::size_t { kSu = 0, kSa = 1, kI = 2, kC = 3, kA = 4 };

/// Column names used in every CSV artifact.
inline constexpr std::array<std::string_view, kCompartments> kCompartmentNames{"S_u", "S_a", "I", "C",
                                                                                "A"};

std::optional<Compartment> compartment_from_name(std::string_view name);

/// Deterministic rate parameters. Times are abstract units (years in the bundled scenarios).
struct ModelParams {
    double lambda_recruit = 0.0;  ///< recruitment, individuals/time
    double beta = 0.0;            ///< transmission, 1/(individuals*time)
    double mu = 0.0;              ///< natural death
    double delta = 0.0;           ///< AIDS mortality
    double alpha = 0.0;           ///< awareness migration S_u -> S_a
    double epsilon = 0.0;         ///< awareness-induced infection reduction, in (0, 1)
    double eta = 0.0;             ///< C -> I
    double nu = 0.0;              ///< A -> I
    double gamma = 0.0;           ///< I -> A
    double rho = 0.0;             ///< I -> C

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Field names in declaration order; these are also the scenario-file keys.
inline constexpr std::array<std::string_view, 10> kParamNames{
    "lambda_recruit", "beta", "mu", "delta", "alpha", "epsilon", "eta", "nu", "gamma", "rho"};

/// Throws ValidationError naming the first field that is not strictly positive,
/// or `epsilon` when it falls outside (0, 1).
void validate(const ModelParams& p);

/// Named access used by sweeps and calibration. Throws ValidationError for unknown names.
double param_value(const ModelParams& p, std::string_view name);
ModelParams with_param(ModelParams p, std::string_view name, double value);
bool is_param_name(std::string_view name);

struct NoiseIntensities {
    Vec5 sigma{};  ///< per-compartment intensity, 1/sqrt(time)

    static NoiseIntensities uniform(double s) { return {{s, s, s, s, s}}; }
    bool is_zero() const;

    friend bool operator==(const NoiseIntensities&, const NoiseIntensities&) = default;
};

void validate(const NoiseIntensities& n);

struct State {
    double s_u = 0.0;
    double s_a = 0.0;
    double i = 0.0;
    double c = 0.0;
    double a = 0.0;

    Vec5 to_array() const { return {s_u, s_a, i, c, a}; }
    static State from_array(const Vec5& v) { return {v[0], v[1], v[2], v[3], v[4]}; }

    double operator[](Compartment k) const { return to_array()[static_cast<std::size_t>(k)]; }

    friend bool operator==(const State&, const State&) = default;
};

void validate(const State& x);

/// Recruitment plus every linear transfer term, evaluated at `x` as given (no clamping).
Vec5 linear_flows(const ModelParams& p, const Vec5& x);

/// Bilinear infection terms (-b S_u I, -(1-eps) b S_a I, b I (S_u + (1-eps) S_a), 0, 0).
Vec5 infection_flows(const ModelParams& p, const Vec5& x);

/// Right-hand side of the deterministic model: linear_flows(x) + infection_flows(x).
Vec5 drift(const ModelParams& p, const State& x);

/// Multiplicative diffusion coefficients (sigma_1 S_u, ..., sigma_5 A).
Vec5 diffusion(const NoiseIntensities& n, const State& x);

double total_population(const State& x);

/// True iff N(x) <= Lambda/mu, i.e. x lies in the positively invariant set of the ODE.
bool in_invariant_set(const ModelParams& p, const State& x);

double euclidean_norm(std::span<const double, kCompartments> v);

}  // namespace hivsde
