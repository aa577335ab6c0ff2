#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "betatest/errors.hpp"

namespace betatest {

/// Limiting spectral distribution of the Beta matrix: a continuous density on
/// [x_l, x_r] plus point masses at 0 and 1 matching the limiting fractions of
/// pinned eigenvalues.
struct EsdParams {
    double y1 = 0.0;
    double y2 = 0.0;
    double alpha = 0.0;  ///< y1 / y2 (= n2/n1 at matched p)
    double h = 0.0;      ///< sqrt(y1 + y2 - y1 y2)
    double x_l = 0.0;
    double x_r = 0.0;
    double mass0 = 0.0;  ///< max(0, (y1-1)/y1), atom at 0
    double mass1 = 0.0;  ///< max(0, (y2-1)/y2), atom at 1

    static EsdParams make(double y1, double y2);
};

inline EsdParams EsdParams::make(double y1, double y2) {
    if (!(y1 > 0.0) || !(y2 > 0.0))
        throw DesignError("dimension ratios must be positive, got y1=" + std::to_string(y1) +
                          ", y2=" + std::to_string(y2));
    const double h2 = y1 + y2 - y1 * y2;
    if (!(h2 > 0.0))
        throw DegenerateDesignError("spectrum support is degenerate: h^2 = " + std::to_string(h2) +
                                    " at y1=" + std::to_string(y1) + ", y2=" + std::to_string(y2));
    EsdParams p;
    p.y1 = y1;
    p.y2 = y2;
    p.alpha = y1 / y2;
    p.h = std::sqrt(h2);
    const double s2 = (y1 + y2) * (y1 + y2);
    p.x_l = y2 * (p.h - y1) * (p.h - y1) / s2;
    p.x_r = y2 * (p.h + y1) * (p.h + y1) / s2;
    // the endpoints reach 0 / 1 exactly at y1 = 1 / y2 = 1; snap away the
    // representation round-off so the hard-edge quadrature path triggers
    if (p.x_l < 1e-14) p.x_l = 0.0;
    if (1.0 - p.x_r < 1e-14) p.x_r = 1.0;
    p.mass0 = std::max(0.0, (y1 - 1.0) / y1);
    p.mass1 = std::max(0.0, (y2 - 1.0) / y2);
    return p;
}

/// Continuous part of the limiting density; 0 outside (x_l, x_r).
inline double esd_density(double x, const EsdParams& p) {
    if (!(x > p.x_l) || !(x < p.x_r)) return 0.0;
    const double radicand = (p.x_r - x) * (x - p.x_l);
    return (p.alpha + 1.0) * std::sqrt(radicand) / (2.0 * std::numbers::pi * p.y1 * x * (1.0 - x));
}

/// Integral of g against the continuous part of the density. Chebyshev-Gauss
/// quadrature after x = (x_l+x_r)/2 + ((x_r-x_l)/2) sin(theta): the
/// substitution turns the endpoint square-root factor into cos^2(theta), so
/// the transformed integrand is smooth and the node sum converges spectrally.
/// When the support touches a hard edge exactly (x_l = 0 at y1 = 1, x_r = 1
/// at y2 = 1) the transformed integrand no longer vanishes at that endpoint
/// and the matching trapezoid endpoint term is added back analytically.
/// Point masses are never included; callers add them explicitly when needed.
template <class G>
double integrate_esd(G&& g, const EsdParams& p, int nodes = 512) {
    if (nodes < 16) throw InputError("quadrature needs at least 16 nodes");
    const double mid = 0.5 * (p.x_l + p.x_r);
    const double half = 0.5 * (p.x_r - p.x_l);
    const double scale = (p.alpha + 1.0) * half * half / (2.0 * p.y1 * (nodes + 1.0));

    double sum = 0.0;
    for (int i = 1; i <= nodes; ++i) {
        const double theta = i * std::numbers::pi / (nodes + 1.0);
        const double sin_t = std::sin(theta);
        const double x = mid + half * std::cos(theta);
        const double gx = g(x);
        if (!std::isfinite(gx))
            throw IntegrandError("integrand is not finite at x=" + std::to_string(x));
        sum += sin_t * sin_t * gx / (x * (1.0 - x));
    }
    // limits of sin^2(theta) g(x) / (x (1-x)) at theta = 0 and theta = pi
    if (p.x_r == 1.0) sum += 0.5 * 2.0 * g(1.0) / half;
    if (p.x_l == 0.0) sum += 0.5 * 2.0 * g(0.0) / half;
    return scale * sum;
}

/// Integrand whose mean under the limiting density is the quadratic
/// statistic's limit: c1 (x/c1 - 1)^2 + c2 ((1-x)/c2 - 1)^2 with
/// c1 = y2/(y1+y2), c2 = y1/(y1+y2).
inline double quadratic_limit_integrand(double x, double y1, double y2) {
    const double c1 = y2 / (y1 + y2);
    const double c2 = y1 / (y1 + y2);
    const double a = x / c1 - 1.0;
    const double b = (1.0 - x) / c2 - 1.0;
    return c1 * a * a + c2 * b * b;
}

}  // namespace betatest
