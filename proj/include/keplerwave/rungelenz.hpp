#pragma once

// Runge-Lenz diagnostics on the t = 0 ESS: matrix elements of A_x, A_y,
// A^2 and HL by polar-grid quadrature with spectral differentiation in
// phi and 6th-order central differences in r, plus the Z surface over
// orbit families composed with the classical-orbit parameter map.

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <vector>

#include "keplerwave/angular.hpp"
#include "keplerwave/errors.hpp"
#include "keplerwave/ess.hpp"
#include "keplerwave/fft.hpp"
#include "keplerwave/threading.hpp"

namespace keplerwave::ess {

namespace rl {

using cd = std::complex<double>;

/// Uniform polar grid: r_j = (j+1) dr for j in [0, nr), phi_k = -pi + k dphi.
struct PolarGrid {
    int nr;
    int nphi;
    double dr;
    double r(int j) const { return (j + 1) * dr; }
    double phi(int k) const { return -M_PI + k * (2.0 * M_PI / nphi); }
    std::size_t size() const { return std::size_t(nr) * nphi; }
};

using Field = std::vector<cd>;  // row-major [r][phi]

namespace detail {

/// phi-derivatives of every row by FFT (any of d1/d2/d3 may be null).
inline void phi_derivs(const PolarGrid& g, const Field& u, Field* d1, Field* d2, Field* d3) {
    if (d1) d1->resize(g.size());
    if (d2) d2->resize(g.size());
    if (d3) d3->resize(g.size());
    keplerwave::detail::parallel_for(std::size_t(g.nr), [&](std::size_t j) {
        fft::spectral_derivatives(&u[j * g.nphi], g.nphi,
                                  d1 ? &(*d1)[j * g.nphi] : nullptr,
                                  d2 ? &(*d2)[j * g.nphi] : nullptr,
                                  d3 ? &(*d3)[j * g.nphi] : nullptr);
    });
}

/// 6th-order central difference along r per phi-column; the field is
/// treated as zero outside (0, r_max] (the states here vanish there to
/// machine precision).
inline void r_deriv(const PolarGrid& g, const Field& u, Field& out, int order) {
    out.resize(g.size());
    const double h = g.dr;
    keplerwave::detail::parallel_for(std::size_t(g.nphi), [&](std::size_t k) {
        auto at = [&](int j) -> cd {
            return (j < 0 || j >= g.nr) ? cd(0.0, 0.0) : u[std::size_t(j) * g.nphi + k];
        };
        for (int j = 0; j < g.nr; ++j) {
            cd v;
            if (order == 1) {
                v = (-at(j - 3) + 9.0 * at(j - 2) - 45.0 * at(j - 1) + 45.0 * at(j + 1) -
                     9.0 * at(j + 2) + at(j + 3)) / (60.0 * h);
            } else {
                v = (2.0 * at(j - 3) - 27.0 * at(j - 2) + 270.0 * at(j - 1) - 490.0 * at(j) +
                     270.0 * at(j + 1) - 27.0 * at(j + 2) + 2.0 * at(j + 3)) / (180.0 * h * h);
            }
            out[std::size_t(j) * g.nphi + k] = v;
        }
    });
}

}  // namespace detail

/// L Psi = -i d/dphi Psi.
inline Field apply_l(const PolarGrid& g, const Field& u) {
    Field d1;
    detail::phi_derivs(g, u, &d1, nullptr, nullptr);
    for (auto& v : d1) v *= cd(0.0, -1.0);
    return d1;
}

/// H Psi = -1/2 (U_rr + U_r/r + U_pp/r^2) - U/r.
inline Field apply_h(const PolarGrid& g, const Field& u) {
    Field upp, ur, urr;
    detail::phi_derivs(g, u, nullptr, &upp, nullptr);
    detail::r_deriv(g, u, ur, 1);
    detail::r_deriv(g, u, urr, 2);
    Field out(g.size());
    keplerwave::detail::parallel_for(std::size_t(g.nr), [&](std::size_t j) {
        const double r = g.r(int(j));
        for (int k = 0; k < g.nphi; ++k) {
            const std::size_t i = j * g.nphi + k;
            out[i] = -0.5 * (urr[i] + ur[i] / r + upp[i] / (r * r)) - u[i] / r;
        }
    });
    return out;
}

/// A_x Psi with A_x = (p_y L + L p_y)/2 - cos(phi).
inline Field apply_ax(const PolarGrid& g, const Field& u) {
    Field up, upp, ur, urp;
    detail::phi_derivs(g, u, &up, &upp, nullptr);
    detail::r_deriv(g, u, ur, 1);
    detail::r_deriv(g, up, urp, 1);
    Field out(g.size());
    keplerwave::detail::parallel_for(std::size_t(g.nr), [&](std::size_t j) {
        const double r = g.r(int(j));
        for (int k = 0; k < g.nphi; ++k) {
            const std::size_t i = j * g.nphi + k;
            const double c = std::cos(g.phi(k)), s = std::sin(g.phi(k));
            out[i] = -(s * urp[i] + c / r * upp[i] + 0.5 * c * ur[i] - 0.5 * s / r * up[i]) -
                     c * u[i];
        }
    });
    return out;
}

/// A_y Psi with A_y = -(p_x L + L p_x)/2 - sin(phi).
inline Field apply_ay(const PolarGrid& g, const Field& u) {
    Field up, upp, ur, urp;
    detail::phi_derivs(g, u, &up, &upp, nullptr);
    detail::r_deriv(g, u, ur, 1);
    detail::r_deriv(g, up, urp, 1);
    Field out(g.size());
    keplerwave::detail::parallel_for(std::size_t(g.nr), [&](std::size_t j) {
        const double r = g.r(int(j));
        for (int k = 0; k < g.nphi; ++k) {
            const std::size_t i = j * g.nphi + k;
            const double c = std::cos(g.phi(k)), s = std::sin(g.phi(k));
            out[i] = (c * urp[i] - s / r * upp[i] - 0.5 * s * ur[i] - 0.5 * c / r * up[i]) -
                     s * u[i];
        }
    });
    return out;
}

/// <f|g> under r dr dphi, deterministic chunked reduction.
inline cd inner(const PolarGrid& g, const Field& f, const Field& h) {
    const double dphi = 2.0 * M_PI / g.nphi;
    return keplerwave::detail::parallel_sum_chunks<cd>(
        std::size_t(g.nr), 64, [&](std::size_t lo, std::size_t hi) {
            cd acc(0.0, 0.0);
            for (std::size_t j = lo; j < hi; ++j) {
                cd row(0.0, 0.0);
                for (int k = 0; k < g.nphi; ++k)
                    row += std::conj(f[j * g.nphi + k]) * h[j * g.nphi + k];
                acc += row * (g.r(int(j)) * g.dr * dphi);
            }
            return acc;
        });
}

/// Sample the t = 0 ESS on the grid.
inline Field sample_ess(const PolarGrid& g, const EssParams& p) {
    std::vector<cd> chi(g.nphi);
    const auto css = p.css();
    for (int k = 0; k < g.nphi; ++k) chi[k] = angular::css_eval(css, g.phi(k));
    Field u(g.size());
    const auto rss = p.rss();
    keplerwave::detail::parallel_for(std::size_t(g.nr), [&](std::size_t j) {
        const cd psi = radial::rss_eval(rss, g.r(int(j)));
        for (int k = 0; k < g.nphi; ++k) u[j * g.nphi + k] = psi * chi[k];
    });
    return u;
}

}  // namespace rl

struct RlOptions {
    int nr = 1200;
    int nphi = 2048;
    double rmax_factor = 4.0;  // domain (0, rmax_factor * <r>]
    double tol = 1e-4;         // grid-doubling change tolerance
    bool richardson = true;
};

struct RungeLenz {
    double ax_mean, ay_mean;
    double d_ax, d_ay;
    double hl;        // <HL>, signed
    double abs_hl;
    double a2;        // <A_x^2 + A_y^2>
    double h_mean;    // <H> on the grid (diagnostic)
    double norm;      // grid norm of the state
    double z;         // (dAx dAy - |<HL>|) / |<HL>|
    double err_estimate;  // Richardson grid-doubling change
};

namespace detail {

inline RungeLenz rl_one_pass(const EssParams& p, int nr, int nphi, double rmax) {
    rl::PolarGrid g{nr, nphi, rmax / nr};
    const auto u = rl::sample_ess(g, p);
    RungeLenz d{};
    d.norm = rl::inner(g, u, u).real();
    {
        const auto axu = rl::apply_ax(g, u);
        d.ax_mean = rl::inner(g, u, axu).real() / d.norm;
        d.a2 = rl::inner(g, axu, axu).real() / d.norm;
        d.d_ax = std::sqrt(std::max(0.0, d.a2 - d.ax_mean * d.ax_mean));
    }
    {
        const auto ayu = rl::apply_ay(g, u);
        d.ay_mean = rl::inner(g, u, ayu).real() / d.norm;
        const double ay2 = rl::inner(g, ayu, ayu).real() / d.norm;
        d.a2 += ay2;
        d.d_ay = std::sqrt(std::max(0.0, ay2 - d.ay_mean * d.ay_mean));
    }
    {
        const auto lu = rl::apply_l(g, u);
        const auto hlu = rl::apply_h(g, lu);
        d.hl = rl::inner(g, u, hlu).real() / d.norm;
        d.abs_hl = std::abs(d.hl);
        const auto hu = rl::apply_h(g, u);
        d.h_mean = rl::inner(g, u, hu).real() / d.norm;
    }
    d.z = (d.d_ax * d.d_ay - d.abs_hl) / d.abs_hl;
    return d;
}

}  // namespace detail

/// Runge-Lenz diagnostics on the t = 0 ESS.  With opts.richardson the
/// radial grid is doubled and the relative change reported; a change
/// above opts.tol raises an accuracy error.
inline RungeLenz runge_lenz_diagnostics(const EssParams& p, const RlOptions& opts = {}) {
    const double r_mean = (p.alpha + 1.0) / p.gamma0;
    const double dr_packet = std::sqrt((p.alpha + 1.0) / 2.0) / p.gamma0;
    const double rmax = std::max(opts.rmax_factor * r_mean, r_mean + 40.0 * dr_packet);
    RungeLenz fine = detail::rl_one_pass(p, opts.richardson ? 2 * opts.nr : opts.nr,
                                         opts.nphi, rmax);
    if (opts.richardson) {
        const RungeLenz coarse = detail::rl_one_pass(p, opts.nr, opts.nphi, rmax);
        double err = 0.0;
        err = std::max(err, std::abs(fine.d_ax - coarse.d_ax) / std::max(fine.d_ax, 1e-300));
        err = std::max(err, std::abs(fine.d_ay - coarse.d_ay) / std::max(fine.d_ay, 1e-300));
        err = std::max(err, std::abs(fine.hl - coarse.hl) / std::max(fine.abs_hl, 1e-300));
        fine.err_estimate = err;
        if (err > opts.tol) {
            std::ostringstream os;
            os << "runge_lenz_diagnostics: grid-doubling change " << err
               << " above tolerance " << opts.tol;
            throw accuracy_error(os.str());
        }
    } else {
        fine.err_estimate = std::numeric_limits<double>::quiet_NaN();
    }
    return fine;
}

struct ZSurface {
    std::vector<double> a;
    std::vector<double> e;
    std::vector<double> z;           // row-major [a][e]
    std::vector<double> err;         // per-point Richardson change
    std::vector<double> beta_real;   // unrounded beta from the orbit map
    std::vector<int> beta_used;      // integer beta actually evaluated
};

/// Z over a grid of classical orbits with fixed packet widths (Delta r,
/// delta from dL); composes params_from_orbit with the Runge-Lenz
/// diagnostics using the rounded (single-valued) beta.
inline ZSurface z_surface(const std::vector<double>& a_grid, const std::vector<double>& e_grid,
                          double dr, double dL, double eta = 0.0,
                          const RlOptions& opts = {600, 512, 4.0, 0.25, true}) {
    if (a_grid.empty() || e_grid.empty()) throw std::domain_error("z_surface: empty grid");
    const double delta = angular::delta_from_spread(dL);
    ZSurface out;
    out.a = a_grid;
    out.e = e_grid;
    const std::size_t n = a_grid.size() * e_grid.size();
    out.z.resize(n);
    out.err.resize(n);
    out.beta_real.resize(n);
    out.beta_used.resize(n);
    // points run sequentially; the grid work inside each diagnostic is
    // parallel.  Near-origin packets (alpha barely above 1/2) converge
    // slowly in the radial differences, so the per-point Richardson
    // change is reported rather than enforced tightly.
    for (std::size_t i = 0; i < n; ++i) {
        const double a = a_grid[i / e_grid.size()];
        const double e = e_grid[i % e_grid.size()];
        const auto m = params_from_orbit(a, e, eta, dr, delta);
        const int beta = std::max(1, m.beta_rounded);
        const EssParams p(m.alpha, m.gamma0, m.gamma1, beta, delta);
        const auto d = runge_lenz_diagnostics(p, opts);
        out.z[i] = d.z;
        out.err[i] = d.err_estimate;
        out.beta_real[i] = m.beta_plus;
        out.beta_used[i] = beta;
    }
    return out;
}

}  // namespace keplerwave::ess
