#pragma once

// Planar radial squeezed states.  The radial measure is r dr (planar);
// the constant N1 = (2 gamma0)^{alpha+1}/Gamma(2 alpha+2)^{1/2}
// normalizes exactly under it.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "keplerwave/errors.hpp"
#include "keplerwave/specfun.hpp"

namespace keplerwave::radial {

struct RssParams {
    double alpha;    // radial exponent, > 0
    double gamma0;   // decay rate, > 0
    double gamma1;   // phase gradient (= -<p_r>)

    RssParams(double alpha_, double gamma0_, double gamma1_ = 0.0)
        : alpha(alpha_), gamma0(gamma0_), gamma1(gamma1_) {
        if (!(alpha > 0.0)) throw std::domain_error("RssParams: alpha must be > 0");
        if (!(gamma0 > 0.0)) throw std::domain_error("RssParams: gamma0 must be > 0");
    }
};

inline double log_norm_const(const RssParams& p) {
    return (p.alpha + 1.0) * std::log(2.0 * p.gamma0) - 0.5 * specfun::log_gamma(2.0 * p.alpha + 2.0);
}

/// psi(r) = N1 r^alpha exp(-gamma0 r - i gamma1 r), int |psi|^2 r dr = 1.
inline std::complex<double> rss_eval(const RssParams& p, double r) {
    if (!(r > 0.0)) throw std::domain_error("rss_eval: r must be > 0");
    const double lnmag = log_norm_const(p) + p.alpha * std::log(r) - p.gamma0 * r;
    const double mag = lnmag > -745.0 ? std::exp(lnmag) : 0.0;
    return {mag * std::cos(p.gamma1 * r), -mag * std::sin(p.gamma1 * r)};
}

/// alpha = 1/S - 1/2, gamma0 = <1/r>/S, gamma1 = -<p_r>.
inline RssParams rss_from_moments(double S, double inv_r, double pr) {
    if (!(S > 0.0 && S < 2.0)) throw std::domain_error("rss_from_moments: squeezing must lie in (0, 2)");
    if (!(inv_r > 0.0)) throw std::domain_error("rss_from_moments: <1/r> must be > 0");
    return RssParams(1.0 / S - 0.5, inv_r / S, -pr);
}

/// <r^k> = Gamma(2 alpha + 2 + k) / (Gamma(2 alpha + 2) (2 gamma0)^k).
inline double moment(const RssParams& p, double k) {
    if (!(2.0 * p.alpha + 2.0 + k > 0.0))
        throw std::domain_error("moment: <r^k> diverges for this alpha");
    return std::exp(specfun::log_gamma(2.0 * p.alpha + 2.0 + k) -
                    specfun::log_gamma(2.0 * p.alpha + 2.0) - k * std::log(2.0 * p.gamma0));
}

struct RssExpectations {
    double r;
    double r2;
    double p_r;
    double p_r2;
    double inv_r;
    double inv_r2;
    double d_r;
    double d_pr;
    double uncertainty_product;  // d_r * d_pr = (1/2) sqrt((alpha+1)/alpha)
};

inline RssExpectations rss_expectations(const RssParams& p) {
    if (!(p.alpha > 0.5))
        throw std::domain_error("rss_expectations: <1/r^2> diverges for alpha <= 1/2");
    RssExpectations e{};
    const double a = p.alpha, g = p.gamma0;
    e.r = (a + 1.0) / g;
    e.r2 = (a + 1.0) * (2.0 * a + 3.0) / (2.0 * g * g);
    e.p_r = -p.gamma1;
    e.p_r2 = g * g / (2.0 * a) + p.gamma1 * p.gamma1;
    e.inv_r = 2.0 * g / (2.0 * a + 1.0);
    e.inv_r2 = 2.0 * g * g / (a * (2.0 * a + 1.0));
    e.d_r = std::sqrt((a + 1.0) / 2.0) / g;
    e.d_pr = g / std::sqrt(2.0 * a);
    e.uncertainty_product = e.d_r * e.d_pr;
    return e;
}

struct OscillatorUncertainty {
    double d_R;          // spread of R = 1/r - const (shift-invariant)
    double d_P;          // spread of P = -i(d/dr + 1/2r)
    double half_inv_r2;  // (1/2) <1/r^2>
    double residual;     // d_R d_P - (1/2) <1/r^2>, zero for the RSS
};

inline OscillatorUncertainty rss_oscillator_uncertainty(const RssParams& p) {
    if (!(p.alpha > 0.5))
        throw std::domain_error("rss_oscillator_uncertainty: requires alpha > 1/2");
    const double a = p.alpha, g = p.gamma0;
    OscillatorUncertainty u{};
    u.d_R = g * std::sqrt(2.0 / a) / (2.0 * a + 1.0);
    u.d_P = g / std::sqrt(2.0 * a);
    u.half_inv_r2 = g * g / (a * (2.0 * a + 1.0));
    u.residual = u.d_R * u.d_P - u.half_inv_r2;
    return u;
}

}  // namespace keplerwave::radial
