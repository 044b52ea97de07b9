#pragma once

// Special-function kernel: modified Bessel functions of integer order,
// generalized Laguerre polynomials, log-gamma, principal-branch complex
// powers.  Self-contained, pure functions, no global state.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "keplerwave/errors.hpp"

namespace keplerwave::specfun {

namespace detail {

inline constexpr double kBesselZMax = 200.0;
inline constexpr int kBesselOrderMax = 200;

// Lanczos approximation, g = 7, 9 terms.  ~1e-15 relative on the real axis.
inline double lanczos_log_gamma(double x) {
    static constexpr double c[9] = {
        0.99999999999980993,     676.5203681218851,   -1259.1392167224028,
        771.32342877765313,     -176.61502916214059,  12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    double a = c[0];
    for (int i = 1; i < 9; ++i) a += c[i] / (x - 1.0 + i);
    const double t = x + 6.5;
    return 0.91893853320467274178 /* ln sqrt(2 pi) */
           + (x - 0.5) * std::log(t) - t + std::log(a);
}

// Ascending series for I_n(z); all terms positive, no cancellation.
inline double bessel_i_series_scaled(int n, double z) {
    if (z == 0.0) return n == 0 ? 1.0 : 0.0;
    const double lnt0 = n * std::log(z / 2) - lanczos_log_gamma(n + 1.0);
    if (lnt0 - z < -745.0) return 0.0;  // result underflows double
    const double q = z * z / 4;
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < 500; ++k) {
        term *= q / ((k + 1.0) * (n + k + 1.0));
        sum += term;
        if (term < sum * 1e-18) break;
    }
    return std::exp(lnt0 - z) * sum;
}

// Miller downward recurrence normalized by e^z = I_0 + 2 sum_{k>=1} I_k.
// Returns e^{-z} I_n(z).
inline double bessel_i_miller_scaled(int n, double z) {
    const int m = std::max(n, static_cast<int>(1.3 * z)) + 40;
    std::vector<double> p(m + 2, 0.0);
    p[m + 1] = 0.0;
    p[m] = 1e-250;
    for (int k = m; k >= 1; --k) {
        p[k - 1] = p[k + 1] + (2.0 * k / z) * p[k];
        if (p[k - 1] > 1e280) {
            for (int j = k - 1; j <= m + 1; ++j) p[j] *= 1e-280;
        }
    }
    double norm = p[0];
    for (int k = 1; k <= m; ++k) norm += 2.0 * p[k];
    return p[n] / norm;
}

// e^{-z} I_n(z) for n in [0, 200], z in [0, 200].
inline double bessel_i_scaled(int n, double z) {
    if (z < 20.0) return bessel_i_series_scaled(n, z);
    return bessel_i_miller_scaled(n, z);
}

// I_1(z)/I_0(z) for any z >= 0.  Beyond the tabulated Bessel range the
// large-argument expansions of I_0 and I_1 through z^-5 are used
// (error < 1e-13 for z > 200).
inline double bessel_ratio_i1_i0(double z) {
    if (z == 0.0) return 0.0;
    if (z <= detail::kBesselZMax) return bessel_i_scaled(1, z) / bessel_i_scaled(0, z);
    const double u = 1.0 / z;
    const double num = 1.0 + u * (-3.0 / 8 + u * (-15.0 / 128 + u * (-105.0 / 1024
                       + u * (-14175.0 / 98304 + u * (-1091475.0 / 3932160)))));
    const double den = 1.0 + u * (1.0 / 8 + u * (9.0 / 128 + u * (75.0 / 1024
                       + u * (11025.0 / 98304 + u * (893025.0 / 3932160)))));
    return num / den;
}

// ln I_0(z), valid for all z >= 0.
inline double log_bessel_i0(double z) {
    if (z <= detail::kBesselZMax) return z + std::log(bessel_i_scaled(0, z));
    // asymptotic: I_0(z) ~ e^z/sqrt(2 pi z) (1 + 1/8z + 9/128z^2 + 225/3072 z^3)
    const double u = 1.0 / (8.0 * z);
    return z - 0.5 * std::log(2 * M_PI * z) + std::log(1.0 + u + 4.5 * u * u + 37.5 * u * u * u);
}

// Generalized Laguerre by three-term recurrence with a log-scale guard.
// Returns log|L| in *log_abs and the sign; degree >= 0, a > -1, x >= 0.
inline int laguerre_ln(int degree, double a, double x, double* log_abs) {
    if (degree == 0) { *log_abs = 0.0; return 1; }
    double lk1 = 1.0;            // L_0
    double lk = 1.0 + a - x;     // L_1
    double scale = 0.0;          // accumulated log rescale
    for (int k = 1; k < degree; ++k) {
        double next = ((2.0 * k + 1.0 + a - x) * lk - (k + a) * lk1) / (k + 1.0);
        lk1 = lk;
        lk = next;
        const double m = std::max(std::abs(lk), std::abs(lk1));
        if (m > 1e280) {
            lk *= 1e-280; lk1 *= 1e-280; scale += std::log(1e280);
        }
    }
    if (lk == 0.0) { *log_abs = -std::numeric_limits<double>::infinity(); return 0; }
    *log_abs = std::log(std::abs(lk)) + scale;
    return lk > 0 ? 1 : -1;
}

}  // namespace detail

/// I_order(z), modified Bessel function of the first kind, integer order.
/// Ascending series for z < 20, Miller downward recurrence normalized by
/// the sum identity otherwise.  order, z limited to the validated range.
inline double bessel_i(int order, double z) {
    if (order < 0 || order > detail::kBesselOrderMax)
        throw std::domain_error("bessel_i: order out of [0, 200]");
    if (z < 0.0 || z > detail::kBesselZMax)
        throw std::domain_error("bessel_i: argument out of [0, 200]");
    return detail::bessel_i_scaled(order, z) * std::exp(z);
}

/// e^{-z} I_order(z); same contract, no overflow for large z.
inline double bessel_i_scaled(int order, double z) {
    if (order < 0 || order > detail::kBesselOrderMax)
        throw std::domain_error("bessel_i_scaled: order out of [0, 200]");
    if (z < 0.0 || z > detail::kBesselZMax)
        throw std::domain_error("bessel_i_scaled: argument out of [0, 200]");
    return detail::bessel_i_scaled(order, z);
}

/// I'_n(z) = (I_{n-1}(z) + I_{n+1}(z))/2, with I'_0 = I_1.
inline double bessel_i_prime(int order, double z) {
    if (order == 0) return bessel_i(1, z);
    return 0.5 * (bessel_i(order - 1, z) + bessel_i(order + 1, z));
}

/// Generalized Laguerre polynomial L^a_degree(x) by stable three-term
/// recurrence in linear space (rescaled when intermediates grow).
inline double laguerre(int degree, double superscript, double x) {
    if (degree < 0) throw std::domain_error("laguerre: negative degree");
    if (degree > 300) throw std::domain_error("laguerre: degree > 300");
    if (superscript <= -1.0) throw std::domain_error("laguerre: superscript <= -1");
    if (x < 0.0) throw std::domain_error("laguerre: x < 0");
    double la;
    const int sign = detail::laguerre_ln(degree, superscript, x, &la);
    if (sign == 0) return 0.0;
    if (la > 709.0) throw accuracy_error("laguerre: value overflows double");
    return sign * std::exp(la);
}

/// ln Gamma(x) for x > 0, Lanczos approximation.
inline double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
    return detail::lanczos_log_gamma(x);
}

/// Principal-branch base^exponent for Re(base) > 0.
inline std::complex<double> complex_pow(std::complex<double> base, double exponent) {
    if (!(base.real() > 0.0))
        throw std::domain_error("complex_pow: requires Re(base) > 0");
    const double lnr = 0.5 * std::log(std::norm(base));
    const double th = std::atan2(base.imag(), base.real());
    const double mod = std::exp(exponent * lnr);
    return {mod * std::cos(exponent * th), mod * std::sin(exponent * th)};
}

}  // namespace keplerwave::specfun
