#include "hivsde/equilibria.hpp"

#include <cmath>
#include <utility>

#include "hivsde/thresholds.hpp"

namespace hivsde {

namespace {

struct Aggregates {
    double k1;
    double k2;
    // mu (k2 (k1 + gamma) + rho k1 + gamma delta) + eta gamma delta. Equal to
    // -(k1 eta rho + k2 nu gamma - k1 k2 (rho + gamma + mu)), the term that appears in P1..P3.
    double d;
};

Aggregates aggregates(const ModelParams& p) {
    const double k1 = p.mu + p.delta + p.nu;
    const double k2 = p.mu + p.eta;
    const double d = p.mu * (k2 * (k1 + p.gamma) + p.rho * k1 + p.gamma * p.delta) + p.eta * p.gamma * p.delta;
    return {k1, k2, d};
}

}  // namespace

State disease_free(const ModelParams& p) {
    const double s_u = p.lambda_recruit / (p.mu + p.alpha);
    return {s_u, p.alpha * p.lambda_recruit / (p.mu * (p.mu + p.alpha)), 0.0, 0.0, 0.0};
}

EndemicPoly endemic_poly(const ModelParams& p) {
    const auto [k1, k2, d] = aggregates(p);
    const double one_m_eps = 1.0 - p.epsilon;
    EndemicPoly poly;
    poly.p1 = -one_m_eps * p.beta * p.beta * d;
    poly.p2 = -p.beta * (one_m_eps * p.alpha + (2.0 - p.epsilon) * p.mu) * d +
              k1 * k2 * p.lambda_recruit * p.beta * p.beta * one_m_eps;
    poly.p3 = p.mu * (p.mu + p.alpha) * d * (r0(p) - 1.0);
    return poly;
}

QuadraticRoots solve_quadratic(double a, double b, double c) {
    QuadraticRoots out;
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return out;
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    if (q == 0.0) {
        // b == 0 and c == 0: double root at zero.
        out.count = 2;
        out.root = {0.0, 0.0};
        return out;
    }
    double r1 = q / a;
    double r2 = c / q;
    if (r1 > r2) std::swap(r1, r2);
    out.count = 2;
    out.root = {r1, r2};
    return out;
}

std::optional<double> endemic_infected(const ModelParams& p) {
    if (!(r0(p) > 1.0)) return std::nullopt;
    const auto poly = endemic_poly(p);
    const auto roots = solve_quadratic(poly.p1, poly.p2, poly.p3);
    // p1 < 0 < p3 forces two real roots of opposite sign.
    if (roots.count == 0 || !(roots.root[1] > 0.0)) return std::nullopt;
    return roots.root[1];
}

std::optional<State> endemic_equilibrium(const ModelParams& p) {
    const auto i_star = endemic_infected(p);
    if (!i_star) return std::nullopt;
    const double i = *i_star;
    const auto agg = aggregates(p);
    const double su_den = p.beta * i + p.alpha + p.mu;
    State x;
    x.s_u = p.lambda_recruit / su_den;
    x.s_a = p.alpha * p.lambda_recruit / (((1.0 - p.epsilon) * p.beta * i + p.mu) * su_den);
    x.i = i;
    x.c = p.rho * i / agg.k2;
    x.a = p.gamma * i / agg.k1;
    return x;
}

double f_of_istar(const ModelParams& p, double i_star) {
    const double k1 = p.mu + p.delta + p.nu;
    const double k2 = p.mu + p.eta;
    const double su_den = p.beta * i_star + p.alpha + p.mu;
    const double s_u = p.lambda_recruit / su_den;
    const double s_a_aware = (1.0 - p.epsilon) * p.alpha * p.lambda_recruit /
                             (((1.0 - p.epsilon) * p.beta * i_star + p.mu) * su_den);
    return p.beta * i_star * (s_u + s_a_aware) + p.eta * p.rho * i_star / k2 + p.nu * p.gamma * i_star / k1 -
           (p.rho + p.gamma + p.mu) * i_star;
}

double poly_denominator(const ModelParams& p, double i_star) {
    const double k1 = p.mu + p.delta + p.nu;
    const double k2 = p.mu + p.eta;
    return k1 * k2 * (p.beta * i_star + p.alpha + p.mu) * ((1.0 - p.epsilon) * p.beta * i_star + p.mu);
}

}  // namespace hivsde
