#pragma once

// Elliptical squeezed states: parameter fixing from physical inputs,
// spectral expansion in the planar Coulomb eigenbasis, time evolution,
// grid densities and coefficient-space observables.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>
#include <vector>

#include "keplerwave/angular.hpp"
#include "keplerwave/classical.hpp"
#include "keplerwave/dd.hpp"
#include "keplerwave/errors.hpp"
#include "keplerwave/quadrature.hpp"
#include "keplerwave/radial.hpp"
#include "keplerwave/specfun.hpp"
#include "keplerwave/threading.hpp"

namespace keplerwave::ess {

using cd = std::complex<double>;

/// Experiment-side inputs: mean principal quantum number, mean angular
/// momentum and angular-momentum spread.
struct PhysicalSpec {
    double n_bar;
    int l_bar;
    double dL;

    PhysicalSpec(double n_bar_, int l_bar_, double dL_)
        : n_bar(n_bar_), l_bar(l_bar_), dL(dL_) {
        if (!(n_bar > 1.0)) throw std::domain_error("PhysicalSpec: n_bar must be > 1");
        if (l_bar < 1) throw std::domain_error("PhysicalSpec: l_bar must be >= 1");
        if (!(l_bar <= n_bar - 1.0)) throw std::domain_error("PhysicalSpec: l_bar must be <= n_bar - 1");
        if (!(dL > 0.0)) throw std::domain_error("PhysicalSpec: dL must be > 0");
    }
};

/// The five ESS parameters.
struct EssParams {
    double alpha;
    double gamma0;
    double gamma1;
    int beta;
    double delta;

    EssParams(double alpha_, double gamma0_, double gamma1_, int beta_, double delta_)
        : alpha(alpha_), gamma0(gamma0_), gamma1(gamma1_), beta(beta_), delta(delta_) {
        radial::RssParams(alpha, gamma0, gamma1);  // validates
        if (!(delta >= 0.0)) throw std::domain_error("EssParams: delta must be >= 0");
    }

    radial::RssParams rss() const { return radial::RssParams(alpha, gamma0, gamma1); }
    angular::CssParams css() const { return angular::CssParams(delta, beta); }
};

/// Outer apsidal distance for the mean quantum numbers:
/// (n-1/2)^2 (1 + sqrt(1 - l^2/(n-1/2)^2)).
inline double outer_apsis(double n_bar, double l_bar) {
    const double nt = n_bar - 0.5;
    const double disc = 1.0 - l_bar * l_bar / (nt * nt);
    if (disc < 0.0) throw std::domain_error("outer_apsis: l_bar > n_bar - 1/2");
    return nt * nt * (1.0 + std::sqrt(disc));
}

inline double bound_energy(double n_eff) { return -0.5 / ((n_eff - 0.5) * (n_eff - 0.5)); }

/// <H> of the ESS as a function of the five parameters; L2 = <L^2>.
inline double hamiltonian_expectation(double alpha, double gamma0, double gamma1, double L2) {
    return gamma0 * (gamma0 - 4.0) / (2.0 * (2.0 * alpha + 1.0)) + 0.5 * gamma1 * gamma1 +
           gamma0 * gamma0 * L2 / (alpha * (2.0 * alpha + 1.0));
}

namespace detail {

/// Solve <r>(alpha,gamma0) = r_t, <H>(alpha,gamma0; L2) = E_t by damped
/// Newton with analytic Jacobian.  Seed: eliminating gamma0 = (alpha+1)/r_t
/// reduces the system exactly to
///   A^2 + (2 - 8r + 4K - 8r^2 E) A + (1 - 8r + 12K) + 16K/(A-1) = 0
/// in A = 2 alpha + 1; the quadratic root with two correction passes of
/// the 16K/(A-1) term lands within ~1% of the solution.
inline std::pair<double, double> solve_alpha_gamma(double r_t, double E_t, double L2) {
    const double b = 2.0 - 8.0 * r_t + 4.0 * L2 - 8.0 * r_t * r_t * E_t;
    const double c0 = 1.0 - 8.0 * r_t + 12.0 * L2;
    auto root = [&](double shift) {
        const double disc = b * b - 4.0 * (c0 + shift);
        if (disc < 0.0) throw solver_error("ess_build: seed quadratic has no real root");
        return 0.5 * (-b + std::sqrt(disc));
    };
    double A = root(0.0);
    for (int i = 0; i < 2; ++i) A = root(16.0 * L2 / (A - 1.0));
    double alpha = std::max(0.05, 0.5 * (A - 1.0));
    double gamma0 = (alpha + 1.0) / r_t;

    auto residual = [&](double a, double g, double* f1, double* f2) {
        *f1 = (a + 1.0) / g - r_t;
        *f2 = hamiltonian_expectation(a, g, 0.0, L2) - E_t;
    };
    double f1, f2;
    residual(alpha, gamma0, &f1, &f2);
    double merit = std::abs(f1) / r_t + std::abs(f2) / std::abs(E_t);
    bool ok = false;
    for (int it = 0; it < 200; ++it) {
        if (std::abs(f1) <= 1e-10 && std::abs(f2) <= 1e-12 * std::abs(E_t)) { ok = true; break; }
        const double a = alpha, g = gamma0, A2 = 2.0 * a + 1.0;
        const double j11 = 1.0 / g;
        const double j12 = -(a + 1.0) / (g * g);
        const double j21 = -g * (g - 4.0) / (A2 * A2) -
                           g * g * L2 * (4.0 * a + 1.0) / (a * a * A2 * A2);
        const double j22 = (2.0 * g - 4.0) / (2.0 * A2) + 2.0 * g * L2 / (a * A2);
        const double det = j11 * j22 - j12 * j21;
        if (det == 0.0) throw solver_error("ess_build: singular Jacobian");
        const double da = (-f1 * j22 + f2 * j12) / det;
        const double dg = (-f2 * j11 + f1 * j21) / det;
        double lam = 1.0;
        for (int bt = 0; bt < 40; ++bt) {
            const double an = alpha + lam * da, gn = gamma0 + lam * dg;
            if (an > 0.0 && gn > 0.0) {
                double g1, g2;
                residual(an, gn, &g1, &g2);
                const double m = std::abs(g1) / r_t + std::abs(g2) / std::abs(E_t);
                if (m < merit || lam < 1e-8) {
                    alpha = an; gamma0 = gn; f1 = g1; f2 = g2; merit = m;
                    break;
                }
            }
            lam *= 0.5;
        }
    }
    if (!ok && !(std::abs(f1) <= 1e-10 && std::abs(f2) <= 1e-12 * std::abs(E_t))) {
        std::ostringstream os;
        os << "ess_build: Newton did not converge; residuals <r>-r_out = " << f1
           << ", <H>-E = " << f2;
        throw solver_error(os.str());
    }
    return {alpha, gamma0};
}

}  // namespace detail

/// Fix the five ESS parameters from (n_bar, l_bar, dL): beta = l_bar,
/// gamma1 = 0, delta from the spread, then (alpha, gamma0) from the
/// <r> = r_out and <H> = E_nbar conditions.
inline EssParams ess_build(const PhysicalSpec& spec) {
    const double delta = angular::delta_from_spread(spec.dL);
    const double r_t = outer_apsis(spec.n_bar, spec.l_bar);
    const double E_t = bound_energy(spec.n_bar);
    const double t = specfun::detail::bessel_ratio_i1_i0(2.0 * delta);
    const double L2 = 0.5 * delta * t + double(spec.l_bar) * spec.l_bar;
    const auto [alpha, gamma0] = detail::solve_alpha_gamma(r_t, E_t, L2);
    return EssParams(alpha, gamma0, 0.0, spec.l_bar, delta);
}

/// Psi(r, phi) = psi(r) chi(phi), normalized under r dr dphi.
inline cd ess_eval(const EssParams& p, double r, double phi) {
    return radial::rss_eval(p.rss(), r) * angular::css_eval(p.css(), phi);
}

struct EssExpectations {
    double r, r2, p_r, p_r2;
    double sin_phi, cos_phi;
    double L, L2;
    double H;
    double dr_dpr;      // Delta r * Delta p_r
    double dsin_dL;     // Delta sin phi * Delta L
    double dcos_dL;     // Delta cos phi * Delta L
};

inline EssExpectations ess_expectations(const EssParams& p) {
    const auto re = radial::rss_expectations(p.rss());  // throws for alpha <= 1/2
    const auto ae = angular::css_expectations(p.css());
    EssExpectations e{};
    e.r = re.r; e.r2 = re.r2; e.p_r = re.p_r; e.p_r2 = re.p_r2;
    e.sin_phi = ae.sin_phi; e.cos_phi = ae.cos_phi;
    e.L = ae.L; e.L2 = ae.L2;
    e.H = hamiltonian_expectation(p.alpha, p.gamma0, p.gamma1, ae.L2);
    e.dr_dpr = re.uncertainty_product;
    e.dsin_dL = ae.d_sin_phi * ae.d_L;
    e.dcos_dL = ae.d_cos_phi * ae.d_L;
    return e;
}

// ---------------------------------------------------------------------------
// spectral representation

struct SpectralEntry {
    int n;
    int l;
    cd c;           // coefficient at the state's current time
    double energy;
    double kappa;   // radial scale (n - 1/2, starred for SQDT)
    double lstar;   // radial power (|l|, starred for SQDT)
};

struct Window {
    int n_lo, n_hi, l_lo, l_hi;
};

struct SpectralState {
    std::vector<SpectralEntry> entries;  // sorted by (n, l)
    Window window{};
    double t = 0.0;
    double tail_mass = 0.0;
};

namespace detail {

/// log of the radial eigenfunction normalization under r dr:
/// N^2 = (2/kappa)^{2a+2} Gamma(m+1) / (2 kappa Gamma(m+2a+1)).
inline double radial_log_norm(double kappa, double a, int m) {
    return 0.5 * ((2.0 * a + 2.0) * std::log(2.0 / kappa) + specfun::log_gamma(m + 1.0) -
                  std::log(2.0 * kappa) - specfun::log_gamma(m + 2.0 * a + 1.0));
}

/// R(r) = N r^a e^{-r/kappa} L^{2a}_m(2 r / kappa).
inline double radial_eigen(double kappa, double a, int m, double r) {
    if (r <= 0.0) return a > 0.0 ? 0.0 : std::exp(radial_log_norm(kappa, a, m)) *
                                             specfun::laguerre(m, 2.0 * a, 0.0);
    double lnl;
    const int sign = specfun::detail::laguerre_ln(m, 2.0 * a, 2.0 * r / kappa, &lnl);
    if (sign == 0) return 0.0;
    const double ln = radial_log_norm(kappa, a, m) + a * std::log(r) - r / kappa + lnl;
    return ln > -745.0 ? sign * std::exp(ln) : 0.0;
}

struct MessResult {
    cd c;
    double sigma;      // numerical significance floor of |c|
    bool degenerate;   // true if the dd sum lost all significance
};

/// Closed-form expansion coefficient.  The alternating p-sum is run in
/// double-double via its exact term-ratio recursion; prefactors are
/// assembled in log space.
inline MessResult mess_coefficient(const EssParams& p, int n, int l) {
    using keplerwave::detail::cdd;
    using keplerwave::detail::dd;
    const int al = std::abs(l);
    const int m = n - al - 1;
    const double kap = n - 0.5;
    MessResult out{cd(0.0, 0.0), 0.0, false};
    if (std::abs(p.beta - l) > specfun::detail::kBesselOrderMax) return out;  // angular weight ~ 0
    const double ivs = specfun::bessel_i_scaled(std::abs(p.beta - l), p.delta);
    if (ivs == 0.0) return out;

    const double lnF0 = 0.5 * ((2.0 * p.alpha + 2.0) * std::log(2.0 * p.gamma0) -
                               specfun::detail::log_bessel_i0(2.0 * p.delta) -
                               specfun::log_gamma(2.0 * p.alpha + 2.0));
    const double lnN = radial_log_norm(kap, double(al), m);
    const double lnI = p.delta + std::log(ivs);
    const cd base(1.0 / kap + p.gamma0, p.gamma1);
    const double lnT0 = specfun::log_gamma(double(n + al)) +
                        specfun::log_gamma(p.alpha + al + 2.0) -
                        specfun::log_gamma(2.0 * al + 1.0) - specfun::log_gamma(m + 1.0) -
                        (p.alpha + al + 2.0) * 0.5 * std::log(std::norm(base));
    const double phT0 = -(p.alpha + al + 2.0) * std::atan2(base.imag(), base.real());

    const cdd Xm = cdd(-2.0 / kap, 0.0) / cdd(base.real(), base.imag());
    cdd term(1.0, 0.0), sum(1.0, 0.0);
    double max_ab = 1.0;
    for (int q = 0; q < m; ++q) {
        const dd num = (dd(p.alpha) + dd(double(al + q + 2))) * dd(double(m - q));
        const dd den((q + 1.0) * (q + 2.0 * al + 1.0));
        term = term * Xm * cdd(num / den, dd(0.0));
        sum = sum + term;
        max_ab = std::max(max_ab, std::sqrt(keplerwave::detail::abs2(term)));
    }
    const double lnpref = lnF0 + lnN + lnI + lnT0;
    const double s_abs = std::sqrt(keplerwave::detail::abs2(sum));
    out.sigma = std::exp(lnpref + std::log(max_ab)) * 1e-30 * (m + 1);
    if (s_abs == 0.0) { out.degenerate = true; return out; }
    const double ln_c = lnpref + std::log(s_abs);
    const double phase = phT0 + std::atan2(double(sum.im), double(sum.re));
    const double mag = ln_c > -745.0 ? std::exp(ln_c) : 0.0;
    out.c = cd(mag * std::cos(phase), mag * std::sin(phase));
    if (std::abs(out.c) <= 8.0 * out.sigma) out.degenerate = true;
    return out;
}

/// <R_{kappa,a,m} | psi> under r dr by scaled Gauss-Laguerre quadrature;
/// works for real (starred) radial powers a.
inline cd radial_overlap_quadrature(const radial::RssParams& rp, double kappa, double a,
                                    int m, int nodes) {
    const double lnNR = radial_log_norm(kappa, a, m);
    const double lnN1 = (rp.alpha + 1.0) * std::log(2.0 * rp.gamma0) -
                        0.5 * specfun::log_gamma(2.0 * rp.alpha + 2.0);
    const double s = rp.gamma0 + 1.0 / kappa;
    const auto& gl = quadrature::gauss_laguerre_cached(nodes);
    cd acc(0.0, 0.0);
    for (int i = 0; i < nodes; ++i) {
        const double r = gl.x[i] / s;
        double lnl;
        const int sign = specfun::detail::laguerre_ln(m, 2.0 * a, 2.0 * r / kappa, &lnl);
        if (sign == 0) continue;
        const double ln = gl.log_w[i] + lnNR + lnN1 + (a + rp.alpha + 1.0) * std::log(r) +
                          lnl - std::log(s);
        if (ln < -745.0) continue;
        const double v = sign * std::exp(ln);
        acc += cd(v * std::cos(rp.gamma1 * r), -v * std::sin(rp.gamma1 * r));
    }
    return acc;
}

/// Angular weight I_{beta-l}(delta)/sqrt(I0(2 delta)); zero when the order
/// is beyond the tabulated Bessel range (the weight is astronomically small).
inline double angular_weight(int beta, int l, double delta) {
    if (std::abs(beta - l) > specfun::detail::kBesselOrderMax) return 0.0;
    const double ivs = specfun::bessel_i_scaled(std::abs(beta - l), delta);
    if (ivs == 0.0) return 0.0;
    return std::exp(delta + std::log(ivs) - 0.5 * specfun::detail::log_bessel_i0(2.0 * delta));
}

/// Stable fallback for entries where the closed-form sum is numerically
/// degenerate: Gauss-Laguerre quadrature of the radial overlap.
inline cd overlap_coefficient_quadrature(const EssParams& p, int n, int l, int nodes = 500) {
    const int al = std::abs(l);
    const double w = angular_weight(p.beta, l, p.delta);
    if (w == 0.0) return cd(0.0, 0.0);
    return radial_overlap_quadrature(p.rss(), n - 0.5, double(al), n - al - 1, nodes) * w;
}

/// Shared window-growth loop: evaluates coef(n, l) over a rectangle
/// centered at (nc, beta), doubling the margins until the captured mass
/// reaches 1 - tol.  fill(n, l, c) supplies the per-entry metadata.
template <typename CoefFn, typename FillFn>
SpectralState expand_window(int nc, int beta, double dL, double tol, CoefFn coef, FillFn fill) {
    int dn = 10;
    int dl = std::max(1, int(std::ceil(6.0 * std::max(dL, 0.2))));
    std::map<std::pair<int, int>, cd> table;
    for (;;) {
        const int n_lo = std::max(1, nc - dn), n_hi = std::min(400, nc + dn);
        const int l_lo = beta - dl, l_hi = beta + dl;
        std::vector<std::pair<int, int>> todo;
        for (int n = n_lo; n <= n_hi; ++n)
            for (int l = std::max(l_lo, -(n - 1)); l <= std::min(l_hi, n - 1); ++l)
                if (!table.count({n, l})) todo.emplace_back(n, l);
        std::vector<cd> vals(todo.size());
        keplerwave::detail::parallel_for(todo.size(), [&](std::size_t i) {
            vals[i] = coef(todo[i].first, todo[i].second);
        });
        for (std::size_t i = 0; i < todo.size(); ++i) table[todo[i]] = vals[i];

        double mass = 0.0;
        for (const auto& [nl, c] : table) mass += std::norm(c);
        const double tail = 1.0 - mass;
        if (tail <= tol) {
            SpectralState s;
            s.window = {n_lo, n_hi, l_lo, l_hi};
            s.t = 0.0;
            s.tail_mass = tail;
            s.entries.reserve(table.size());
            for (const auto& [nl, c] : table) s.entries.push_back(fill(nl.first, nl.second, c));
            return s;
        }
        if (n_lo == 1 && n_hi == 400) {
            std::ostringstream os;
            os << "expand: tail mass " << tail << " above tol " << tol
               << " with the window at its n = 400 cap";
            throw truncation_error(os.str());
        }
        dn *= 2;
        dl *= 2;
    }
}

inline cd expansion_coefficient(const EssParams& p, int n, int l) {
    const auto res = mess_coefficient(p, n, l);
    if (!res.degenerate) return res.c;
    if (res.sigma < 1e-13) return cd(0.0, 0.0);  // physically negligible entry
    return overlap_coefficient_quadrature(p, n, l);
}

}  // namespace detail

/// Expand the ESS over planar Coulomb eigenstates by the closed-form
/// coefficients, growing a rectangular (n, l) window until the missing
/// probability is below tol.
inline SpectralState expand(const EssParams& p, double tol = 1e-6) {
    if (!(tol > 0.0)) throw std::domain_error("expand: tol must be > 0");
    const double t = specfun::detail::bessel_ratio_i1_i0(2.0 * p.delta);
    const double L2 = 0.5 * p.delta * t + double(p.beta) * p.beta;
    const double H = hamiltonian_expectation(p.alpha, p.gamma0, p.gamma1, L2);
    if (!(H < 0.0)) throw std::domain_error("expand: state is not bound (<H> >= 0)");
    const int nc = std::clamp(int(std::lround(0.5 + 1.0 / std::sqrt(-2.0 * H))), 1, 400);
    const double dL = std::sqrt(std::max(L2 - double(p.beta) * p.beta, 0.0));
    return detail::expand_window(
        nc, p.beta, dL, tol,
        [&](int n, int l) { return detail::expansion_coefficient(p, n, l); },
        [&](int n, int l, cd c) {
            SpectralEntry e;
            e.n = n; e.l = l; e.c = c;
            e.kappa = n - 0.5;
            e.lstar = std::abs(l);
            e.energy = -0.5 / (e.kappa * e.kappa);
            return e;
        });
}

/// Advance by dt: multiplies each coefficient by e^{-i E dt}.
inline SpectralState evolve(const SpectralState& s, double dt) {
    SpectralState out = s;
    out.t = s.t + dt;
    for (auto& e : out.entries) {
        const double ph = -e.energy * dt;
        e.c *= cd(std::cos(ph), std::sin(ph));
    }
    return out;
}

struct GridField {
    std::vector<double> r_grid;
    std::vector<double> phi_grid;
    std::vector<double> values;  // r |Psi|^2, row-major [r][phi]
    double t = 0.0;
};

namespace detail {

struct RadialKey {
    double kappa, lstar;
    int m;
    bool operator<(const RadialKey& o) const {
        return std::tie(kappa, lstar, m) < std::tie(o.kappa, o.lstar, o.m);
    }
};

/// Evaluate every distinct radial eigenfunction of the state on r_grid.
inline std::map<RadialKey, std::vector<double>> radial_table(
    const SpectralState& s, const std::vector<double>& r_grid) {
    std::map<RadialKey, std::vector<double>> table;
    for (const auto& e : s.entries)
        table.try_emplace(RadialKey{e.kappa, e.lstar, e.n - std::abs(e.l) - 1});
    std::vector<std::map<RadialKey, std::vector<double>>::iterator> its;
    for (auto it = table.begin(); it != table.end(); ++it) its.push_back(it);
    keplerwave::detail::parallel_for(its.size(), [&](std::size_t i) {
        const auto& k = its[i]->first;
        auto& v = its[i]->second;
        v.resize(r_grid.size());
        for (std::size_t j = 0; j < r_grid.size(); ++j)
            v[j] = radial_eigen(k.kappa, k.lstar, k.m, r_grid[j]);
    });
    return table;
}

}  // namespace detail

/// Complex field Psi(r, phi) at the state's current time, row-major [r][phi].
inline std::vector<cd> reconstruct_field(const SpectralState& s,
                                         const std::vector<double>& r_grid,
                                         const std::vector<double>& phi_grid) {
    if (r_grid.empty() || phi_grid.empty())
        throw std::domain_error("reconstruct: empty grid");
    const auto table = detail::radial_table(s, r_grid);
    const int l_lo = s.window.l_lo, l_hi = s.window.l_hi;
    const int nl = l_hi - l_lo + 1;
    const std::size_t nr = r_grid.size(), np = phi_grid.size();

    // per-l angular phase rows
    std::vector<cd> phases(std::size_t(nl) * np);
    for (int li = 0; li < nl; ++li) {
        const int l = l_lo + li;
        for (std::size_t k = 0; k < np; ++k) {
            const double a = l * phi_grid[k];
            phases[li * np + k] = cd(std::cos(a), std::sin(a));
        }
    }
    // radial profiles grouped by l: g_l(r) = sum_n c_nl R_nl(r)
    std::vector<cd> g(std::size_t(nl) * nr, cd(0.0, 0.0));
    for (const auto& e : s.entries) {
        const auto& R = table.at({e.kappa, e.lstar, e.n - std::abs(e.l) - 1});
        const int li = e.l - l_lo;
        for (std::size_t j = 0; j < nr; ++j) g[std::size_t(li) * nr + j] += e.c * R[j];
    }
    std::vector<cd> field(nr * np);
    const double inv_sqrt2pi = 1.0 / std::sqrt(2.0 * M_PI);
    keplerwave::detail::parallel_for(nr, [&](std::size_t j) {
        for (std::size_t k = 0; k < np; ++k) {
            cd acc(0.0, 0.0);
            for (int li = 0; li < nl; ++li)
                acc += g[std::size_t(li) * nr + j] * phases[std::size_t(li) * np + k];
            field[j * np + k] = acc * inv_sqrt2pi;
        }
    });
    return field;
}

/// r |Psi|^2 samples at the state's current time.
inline GridField reconstruct(const SpectralState& s,
                             const std::vector<double>& r_grid,
                             const std::vector<double>& phi_grid) {
    const auto field = reconstruct_field(s, r_grid, phi_grid);
    GridField out;
    out.r_grid = r_grid;
    out.phi_grid = phi_grid;
    out.t = s.t;
    out.values.resize(field.size());
    for (std::size_t j = 0; j < r_grid.size(); ++j)
        for (std::size_t k = 0; k < phi_grid.size(); ++k)
            out.values[j * phi_grid.size() + k] = r_grid[j] * std::norm(field[j * phi_grid.size() + k]);
    return out;
}

struct TimeSeries {
    std::vector<double> times;
    std::vector<double> r_mean;
    std::vector<double> cos_phi;
    std::vector<double> sin_phi;
    std::vector<double> autocorr;
};

/// Coefficient-space observables at the given times (offsets from the
/// state's current time).  Radial matrix elements are computed once by
/// Simpson quadrature on a shared grid and reused for every time.
inline TimeSeries observables_vs_time(const SpectralState& s, const std::vector<double>& times) {
    TimeSeries out;
    out.times = times;
    const std::size_t nt = times.size();
    out.r_mean.resize(nt); out.cos_phi.resize(nt); out.sin_phi.resize(nt); out.autocorr.resize(nt);
    if (s.entries.empty()) throw std::domain_error("observables_vs_time: empty state");

    double kmax = 0.0;
    for (const auto& e : s.entries) kmax = std::max(kmax, e.kappa);
    const double rmax = 2.4 * kmax * kmax + 100.0;
    const std::size_t N = 16385;  // odd for Simpson
    std::vector<double> rg(N), w(N);
    const double h = rmax / double(N - 1);
    for (std::size_t i = 0; i < N; ++i) {
        rg[i] = i * h;
        w[i] = (i == 0 || i == N - 1) ? h / 3.0 : (i % 2 ? 4.0 * h / 3.0 : 2.0 * h / 3.0);
    }
    const auto table = detail::radial_table(s, rg);

    // group entries by l
    std::map<int, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < s.entries.size(); ++i) groups[s.entries[i].l].push_back(i);

    auto radial_of = [&](std::size_t i) -> const std::vector<double>& {
        const auto& e = s.entries[i];
        return table.at({e.kappa, e.lstar, e.n - std::abs(e.l) - 1});
    };
    // <R_i | r | R_j> within a group, <R_i | R_j> across adjacent groups
    auto pair_integral = [&](std::size_t i, std::size_t j, bool with_r) {
        const auto& Ri = radial_of(i);
        const auto& Rj = radial_of(j);
        double acc = 0.0;
        for (std::size_t k = 0; k < N; ++k) {
            const double f = Ri[k] * Rj[k] * rg[k] * w[k];
            acc += with_r ? f * rg[k] : f;
        }
        return acc;
    };
    struct Block { std::vector<std::size_t> idx; std::vector<double> M; };
    std::map<int, Block> rblocks;       // <r> within l
    std::map<int, Block> upblocks;      // overlap (l) x (l+1)
    std::vector<int> ls;
    for (const auto& [l, idx] : groups) ls.push_back(l);
    keplerwave::detail::parallel_for(ls.size(), [&](std::size_t gi) {
        const int l = ls[gi];
        const auto& idx = groups.at(l);
        Block b; b.idx = idx;
        b.M.resize(idx.size() * idx.size());
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t c = a; c < idx.size(); ++c) {
                const double v = pair_integral(idx[a], idx[c], true);
                b.M[a * idx.size() + c] = v;
                b.M[c * idx.size() + a] = v;
            }
        static std::mutex mu;
        std::lock_guard<std::mutex> lk(mu);
        rblocks[l] = std::move(b);
    });
    keplerwave::detail::parallel_for(ls.size(), [&](std::size_t gi) {
        const int l = ls[gi];
        if (!groups.count(l + 1)) return;
        const auto& idx = groups.at(l);
        const auto& jdx = groups.at(l + 1);
        Block b; b.idx = idx;
        b.M.resize(idx.size() * jdx.size());
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t c = 0; c < jdx.size(); ++c)
                b.M[a * jdx.size() + c] = pair_integral(idx[a], jdx[c], false);
        static std::mutex mu2;
        std::lock_guard<std::mutex> lk(mu2);
        upblocks[l] = std::move(b);
    });

    keplerwave::detail::parallel_for(nt, [&](std::size_t ti) {
        const double t = times[ti];
        std::vector<cd> ct(s.entries.size());
        cd ac(0.0, 0.0);
        for (std::size_t i = 0; i < s.entries.size(); ++i) {
            const double ph = -s.entries[i].energy * t;
            ct[i] = s.entries[i].c * cd(std::cos(ph), std::sin(ph));
            ac += cd(std::norm(s.entries[i].c), 0.0) * cd(std::cos(ph), std::sin(ph));
        }
        out.autocorr[ti] = std::norm(ac);
        double rm = 0.0;
        for (const auto& [l, b] : rblocks) {
            const auto& idx = b.idx;
            for (std::size_t a = 0; a < idx.size(); ++a)
                for (std::size_t c = 0; c < idx.size(); ++c)
                    rm += std::real(std::conj(ct[idx[a]]) * ct[idx[c]]) * b.M[a * idx.size() + c];
        }
        out.r_mean[ti] = rm;
        // <e^{i phi}> couples (n, l+1) with (n', l)
        cd eip(0.0, 0.0);
        for (const auto& [l, b] : upblocks) {
            const auto& idx = b.idx;             // group l
            const auto& jdx = groups.at(l + 1);  // group l+1
            for (std::size_t a = 0; a < idx.size(); ++a)
                for (std::size_t c = 0; c < jdx.size(); ++c)
                    eip += std::conj(ct[jdx[c]]) * ct[idx[a]] * b.M[a * jdx.size() + c];
        }
        out.cos_phi[ti] = eip.real();
        out.sin_phi[ti] = eip.imag();
    });
    return out;
}

// ---------------------------------------------------------------------------
// classical-orbit parameter map

struct OrbitMapParams {
    double alpha;
    double gamma0;
    double gamma1;
    double beta_plus;   // positive branch of beta
    double beta_minus;  // the opposite traversal direction
    int beta_rounded;   // nearest integer to beta_plus
};

/// Approximate classical-matching map from (a, e, eta, Delta r, delta) to
/// ESS parameters; beta is reported both unrounded and rounded.
inline OrbitMapParams params_from_orbit(double a, double e, double eta, double dr, double delta) {
    if (!(e >= 0.0 && e < 1.0)) throw std::domain_error("params_from_orbit: need 0 <= e < 1");
    if (!(dr > 0.0)) throw std::domain_error("params_from_orbit: need Delta r > 0");
    if (!(delta > 0.0)) throw std::domain_error("params_from_orbit: need delta > 0");
    if (!(a > 0.0)) throw std::domain_error("params_from_orbit: need a > 0");
    const double t = specfun::detail::bessel_ratio_i1_i0(2.0 * delta);
    const double rat = 1.0 / t;  // I0/I1 at 2 delta
    const double ce = std::cos(eta), se = std::sin(eta);
    OrbitMapParams o{};
    o.gamma0 = rat * a / (2.0 * dr * dr) *
               (1.0 + e * ce - e * e * se * se / (1.0 - e * ce));
    o.alpha = 2.0 * o.gamma0 * o.gamma0 * dr * dr - 1.0;
    const double b2 = (2.0 * o.alpha + 1.0) * (2.0 * o.alpha + 1.0) /
                      (4.0 * o.gamma0 * (o.alpha + 1.0)) * (1.0 - e * ce) * rat * rat * rat;
    if (!(b2 >= 0.0)) throw std::domain_error("params_from_orbit: beta^2 < 0");
    o.beta_plus = std::sqrt(b2);
    o.beta_minus = -o.beta_plus;
    o.beta_rounded = int(std::lround(o.beta_plus));
    o.gamma1 = (se == 0.0) ? 0.0
                           : -(2.0 * o.alpha + 1.0) / (2.0 * o.beta_plus * (o.alpha + 1.0)) *
                                 e * se * rat * rat * rat;
    return o;
}

}  // namespace keplerwave::ess
