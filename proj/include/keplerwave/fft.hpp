#pragma once

// Iterative radix-2 complex FFT and spectral derivatives of periodically
// sampled rows.  Sizes must be powers of two.

#include <complex>
#include <stdexcept>
#include <vector>

namespace keplerwave::fft {

using cd = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n && (n & (n - 1)) == 0; }

/// In-place radix-2 FFT; sign = -1 forward, +1 inverse (inverse is
/// scaled by 1/n).
inline void transform(cd* a, std::size_t n, int sign) {
    if (!is_pow2(n)) throw std::domain_error("fft: size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    // exact-index twiddle table: avoids the roundoff drift of repeated
    // twiddle multiplication
    std::vector<cd> tw(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double ang = sign * 2.0 * M_PI * double(k) / double(n);
        tw[k] = cd(std::cos(ang), std::sin(ang));
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cd u = a[i + k];
                const cd v = a[i + k + len / 2] * tw[k * stride];
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
    if (sign > 0) {
        const double inv = 1.0 / double(n);
        for (std::size_t i = 0; i < n; ++i) a[i] *= inv;
    }
}

/// d^order/dphi^order of a periodic row sampled on n uniform points.
/// Writes `order`-th derivative rows into the provided outputs (any may
/// be null to skip).  Modes are signed, the Nyquist mode is zeroed for
/// odd orders.
inline void spectral_derivatives(const cd* row, std::size_t n,
                                 cd* d1, cd* d2, cd* d3) {
    std::vector<cd> spec(row, row + n);
    transform(spec.data(), n, -1);
    std::vector<cd> tmp(n);
    auto emit = [&](int order, cd* out) {
        if (!out) return;
        for (std::size_t k = 0; k < n; ++k) {
            const double m = (k <= n / 2) ? double(k) : double(k) - double(n);
            cd f;
            switch (order) {
                case 1: f = cd(0.0, m); break;
                case 2: f = cd(-m * m, 0.0); break;
                default: f = cd(0.0, -m * m * m); break;
            }
            if ((order % 2) == 1 && k == n / 2) f = 0.0;  // Nyquist
            tmp[k] = spec[k] * f;
        }
        transform(tmp.data(), n, +1);
        for (std::size_t k = 0; k < n; ++k) out[k] = tmp[k];
    };
    emit(1, d1);
    emit(2, d2);
    emit(3, d3);
}

}  // namespace keplerwave::fft
