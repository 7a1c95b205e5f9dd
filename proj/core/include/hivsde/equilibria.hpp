#pragma once

#include <array>
#include <optional>

#include "hivsde/model.hpp"

namespace hivsde {

/// Coefficients of p1 I^2 + p2 I + p3, the numerator factor of the infected-balance
/// function f(I*) after the other equilibrium components are eliminated.
/// p1 < 0 for every valid parameter set; sign(p3) = sign(r0 - 1).
struct EndemicPoly {
    double p1 = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;

    double operator()(double i) const { return (p1 * i + p2) * i + p3; }
};

/// Disease-free equilibrium (L/(mu+alpha), alpha L/(mu (mu+alpha)), 0, 0, 0).
State disease_free(const ModelParams& p);

EndemicPoly endemic_poly(const ModelParams& p);

/// Real roots of a x^2 + b x + c (a != 0), computed with the cancellation-free
/// q = -(b + sign(b) sqrt(b^2 - 4ac))/2 form. Empty when the discriminant is negative.
/// Roots are returned in ascending order.
struct QuadraticRoots {
    int count = 0;
    std::array<double, 2> root{};
};
QuadraticRoots solve_quadratic(double a, double b, double c);

/// Positive root of endemic_poly(p), or nullopt when r0(p) <= 1.
std::optional<double> endemic_infected(const ModelParams& p);

/// Endemic equilibrium reconstructed from the full-precision I*; nullopt when r0(p) <= 1.
std::optional<State> endemic_equilibrium(const ModelParams& p);

/// Infected balance f(I) = b I (S_u*(I) + (1-eps) S_a*(I)) + eta C*(I) + nu A*(I) - (rho+gamma+mu) I,
/// evaluated directly from the component formulas rather than through endemic_poly().
double f_of_istar(const ModelParams& p, double i_star);

/// Positive denominator k1 k2 (b I + alpha + mu)((1-eps) b I + mu) relating f to the polynomial:
/// f(I) = I * endemic_poly(p)(I) / poly_denominator(p, I).
double poly_denominator(const ModelParams& p, double i_star);

}  // namespace hivsde
