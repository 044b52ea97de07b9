#pragma once

// Gauss-Laguerre rules with log-space weights (node counts into the
// hundreds push the classical weights far below double underflow).

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "keplerwave/dd.hpp"

namespace keplerwave::quadrature {

struct GaussLaguerre {
    std::vector<double> x;      // nodes of L_n
    std::vector<double> log_w;  // log of the weights
};

namespace detail {

// L_n(x) and L'_n(x) with joint rescaling; returns the scale-free Newton
// step and log|L_{n+1}(x)| needed for the weight.
struct LagEval {
    double newton_step;   // L_n / L'_n
    double log_lnp1_abs;  // log |L_{n+1}(x)|
};

// Series value of L_m(x); accurate for small m*x where the three-term
// recurrence cancels badly.
inline double laguerre_series(int m, double x) {
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < m; ++k) {
        term *= -x * double(m - k) / ((k + 1.0) * (k + 1.0));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

inline LagEval laguerre_newton_eval(int n, double x) {
    LagEval ev;
    if (n * x <= 10.0) {
        const double ln = laguerre_series(n, x);
        const double lnm1 = laguerre_series(n - 1, x);
        const double lnp1 = laguerre_series(n + 1, x);
        ev.newton_step = ln / (n * (ln - lnm1) / x);
        ev.log_lnp1_abs = std::log(std::abs(lnp1));
        return ev;
    }
    // double-double recurrence: the three-term rule cancels near small x,
    // and node/weight accuracy sets the floor for every quadrature built
    // on this rule (the rule itself is cached, so the cost is one-time)
    using keplerwave::detail::dd;
    dd lm(0.0), lk(1.0);  // L_{-1}, L_0
    const dd xd(x);
    double scale = 0.0;
    for (int k = 0; k < n; ++k) {
        const dd coef = dd(2.0 * k + 1.0) - xd;  // keep the subtraction in dd
        const dd next = (coef * lk - dd(double(k)) * lm) / dd(k + 1.0);
        lm = lk;
        lk = next;
        const double m = std::max(std::abs(lk.hi), std::abs(lm.hi));
        if (m > 1e280) {
            lk = lk * dd(1e-280); lm = lm * dd(1e-280);
            scale += std::log(1e280);
        }
    }
    // L'_n(x) = n (L_n - L_{n-1}) / x
    const dd dl = dd(double(n)) * (lk - lm) / xd;
    const dd lnp1 = ((dd(2.0 * n + 1.0) - xd) * lk - dd(double(n)) * lm) / dd(n + 1.0);
    ev.newton_step = double(lk / dl);
    ev.log_lnp1_abs = std::log(std::abs(double(lnp1))) + scale;
    return ev;
}

}  // namespace detail

/// n-point Gauss-Laguerre rule: int_0^inf e^{-x} f(x) dx ~= sum w_i f(x_i).
inline GaussLaguerre gauss_laguerre(int n) {
    if (n < 1 || n > 2000) throw std::domain_error("gauss_laguerre: bad node count");
    GaussLaguerre rule;
    rule.x.resize(n);
    rule.log_w.resize(n);
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i == 0) {
            z = 3.0 / (1.0 + 2.4 * n);
        } else if (i == 1) {
            z += 15.0 / (1.0 + 2.5 * n);
        } else {
            const double ai = i - 1;
            z += ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - rule.x[i - 2]);
        }
        detail::LagEval ev{};
        double best_z = z, best_dz = std::numeric_limits<double>::max();
        for (int it = 0; it < 100; ++it) {
            ev = detail::laguerre_newton_eval(n, z);
            const double adz = std::abs(ev.newton_step);
            if (adz < best_dz) { best_dz = adz; best_z = z - ev.newton_step; }
            z -= ev.newton_step;
            if (adz <= 2e-15 * std::max(1.0, z)) break;
            if (it > 6 && adz <= 1e-12 * std::max(1.0, z)) break;  // roundoff floor
        }
        z = best_z;
        ev = detail::laguerre_newton_eval(n, z);
        rule.x[i] = z;
        // w_i = x_i / ((n+1)^2 L_{n+1}(x_i)^2)
        rule.log_w[i] = std::log(z) - 2.0 * std::log(n + 1.0) - 2.0 * ev.log_lnp1_abs;
    }
    return rule;
}

/// Shared cache; rules are immutable after construction.
inline const GaussLaguerre& gauss_laguerre_cached(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GaussLaguerre>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<GaussLaguerre>(gauss_laguerre(n));
    return *slot;
}

}  // namespace keplerwave::quadrature
