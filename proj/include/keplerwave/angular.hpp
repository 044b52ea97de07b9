#pragma once

// Circular squeezed states on the unit circle: construction from the
// angular-momentum spread, evaluation, analytic expectations and
// uncertainties, and the rotation-invariant Q combination.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "keplerwave/errors.hpp"
#include "keplerwave/specfun.hpp"

namespace keplerwave::angular {

/// Angular squeezing delta >= 0, integer angular momentum beta, packet
/// orientation phi0.  beta must be an integer for single-valuedness,
/// enforced by the type.
struct CssParams {
    double delta;
    int beta;
    double phi0 = 0.0;

    CssParams(double delta_, int beta_, double phi0_ = 0.0)
        : delta(delta_), beta(beta_), phi0(phi0_) {
        if (!(delta >= 0.0)) throw std::domain_error("CssParams: delta must be >= 0");
        if (!(phi0 >= -M_PI && phi0 < M_PI))
            throw std::domain_error("CssParams: phi0 must lie in [-pi, pi)");
    }
};

/// chi(phi) = N2 exp(delta cos(phi - phi0) + i beta (phi - phi0)),
/// N2 = (2 pi I0(2 delta))^{-1/2}; normalized on [-pi, pi).
inline std::complex<double> css_eval(const CssParams& p, double phi) {
    const double ln_n2 = -0.5 * (std::log(2.0 * M_PI) + specfun::detail::log_bessel_i0(2.0 * p.delta));
    const double u = phi - p.phi0;
    const double mag = std::exp(ln_n2 + p.delta * std::cos(u));
    return {mag * std::cos(p.beta * u), mag * std::sin(p.beta * u)};
}

/// Invert (Delta L)^2 = (delta/2) I1(2 delta)/I0(2 delta) for delta.
/// The map is strictly increasing from 0; bisection plus a secant polish.
inline double delta_from_spread(double dL) {
    if (dL < 0.0) throw std::domain_error("delta_from_spread: dL must be >= 0");
    if (dL == 0.0) return 0.0;
    if (dL > 50.0) throw std::out_of_range("delta_from_spread: dL > 50 outside validated range");
    const double target = dL * dL;
    auto f = [&](double d) {
        return 0.5 * d * specfun::detail::bessel_ratio_i1_i0(2.0 * d) - target;
    };
    double lo = 0.0, hi = 2.0 * target + 1.0;
    while (f(hi) < 0.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) lo = mid; else hi = mid;
        if (hi - lo < 1e-16 * hi) break;
    }
    double d = 0.5 * (lo + hi);
    // secant polish to drive the residual to rounding level
    double d2 = d * (1.0 + 1e-8), f1 = f(d), f2 = f(d2);
    for (int it = 0; it < 4 && f2 != f1; ++it) {
        const double dn = d2 - f2 * (d2 - d) / (f2 - f1);
        d = d2; f1 = f2; d2 = dn; f2 = f(d2);
    }
    return d2;
}

struct CssExpectations {
    double cos_phi;   // <cos(phi - phi0)>
    double sin_phi;   // <sin(phi - phi0)> = 0
    double cos2_phi;
    double sin2_phi;
    double L;
    double L2;
    double d_cos_phi;
    double d_sin_phi;
    double d_L;
};

/// Analytic expectations in the packet's own frame.
inline CssExpectations css_expectations(const CssParams& p) {
    CssExpectations e{};
    e.sin_phi = 0.0;
    e.L = p.beta;
    if (p.delta == 0.0) {
        // angular-momentum eigenstate limit
        e.cos_phi = 0.0;
        e.cos2_phi = 0.5;
        e.sin2_phi = 0.5;
        e.L2 = double(p.beta) * p.beta;
        e.d_cos_phi = std::sqrt(0.5);
        e.d_sin_phi = std::sqrt(0.5);
        e.d_L = 0.0;
        return e;
    }
    const double t = specfun::detail::bessel_ratio_i1_i0(2.0 * p.delta);
    e.cos_phi = t;
    e.sin2_phi = t / (2.0 * p.delta);
    e.cos2_phi = 1.0 - e.sin2_phi;
    e.L2 = 0.5 * p.delta * t + double(p.beta) * p.beta;
    e.d_L = std::sqrt(0.5 * p.delta * t);
    e.d_sin_phi = std::sqrt(e.sin2_phi);
    e.d_cos_phi = std::sqrt(std::max(0.0, e.cos2_phi - t * t));
    return e;
}

/// Residual of the minimized relation Delta sin phi * Delta L - |<cos phi>|/2.
inline double css_minimality(const CssParams& p) {
    const auto e = css_expectations(p);
    return e.d_sin_phi * e.d_L - 0.5 * std::abs(e.cos_phi);
}

struct QInvariant {
    double mu2;
    double nu2;
    double Q;
    double Q0;
};

/// mu^2, nu^2 evaluated with probe operators cos(phi - phi0_probe),
/// sin(phi - phi0_probe) on the packet; Q = mu^2 + nu^2 is rotation
/// invariant and equals Q0 when the probe matches the packet frame.
inline QInvariant css_q_invariant(const CssParams& p, double phi0_probe) {
    const auto e = css_expectations(p);
    const double psi = phi0_probe - p.phi0;
    const double cp = std::cos(psi), sp = std::sin(psi);
    const double mc = e.cos_phi * cp;    // <cos(phi - probe)>
    const double ms = -e.cos_phi * sp;   // <sin(phi - probe)>
    const double c2 = e.cos2_phi * cp * cp + e.sin2_phi * sp * sp;
    const double s2 = e.sin2_phi * cp * cp + e.cos2_phi * sp * sp;
    const double dL2 = e.d_L * e.d_L;
    QInvariant q{};
    q.mu2 = (c2 - mc * mc) * dL2 - 0.25 * ms * ms;
    q.nu2 = (s2 - ms * ms) * dL2 - 0.25 * mc * mc;
    q.Q = q.mu2 + q.nu2;
    if (p.delta == 0.0) {
        q.Q0 = 0.0;
    } else {
        const double t = e.cos_phi;
        const double s = 1.0 - t / p.delta;  // I2(2d)/I0(2d)
        q.Q0 = 0.25 * p.delta * t * (1.0 + s - 2.0 * t * t);
    }
    return q;
}

}  // namespace keplerwave::angular
