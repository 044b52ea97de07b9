#pragma once

// Planar quantum-defect theory: shifted Rydberg energies E_{n*}, the
// starred effective-potential eigenstates, defect-aware ESS construction
// (fixed point on the expansion-weighted energy), and the modified
// oscillator uncertainty relation.

#include <cmath>
#include <complex>
#include <map>
#include <sstream>
#include <stdexcept>

#include "keplerwave/ess.hpp"

namespace keplerwave::sqdt {

using cd = std::complex<double>;

/// Asymptotic quantum defects delta(|l|) in [0, 1) and integer shifts
/// I(|l|); absent entries default to zero.
struct QuantumDefectTable {
    std::map<int, double> defects;
    std::map<int, int> shifts;

    QuantumDefectTable() = default;
    QuantumDefectTable(std::map<int, double> d, std::map<int, int> s = {})
        : defects(std::move(d)), shifts(std::move(s)) {
        for (const auto& [l, v] : defects) {
            if (l < 0) throw std::domain_error("QuantumDefectTable: |l| keys must be >= 0");
            if (!(v >= 0.0 && v < 1.0))
                throw std::domain_error("QuantumDefectTable: defects must lie in [0, 1)");
        }
        for (const auto& [l, v] : shifts)
            if (l < 0) throw std::domain_error("QuantumDefectTable: |l| keys must be >= 0");
    }

    double defect(int l) const {
        const auto it = defects.find(std::abs(l));
        return it == defects.end() ? 0.0 : it->second;
    }
    int shift(int l) const {
        const auto it = shifts.find(std::abs(l));
        return it == shifts.end() ? 0 : it->second;
    }
    bool empty() const { return defects.empty(); }
};

struct StarredQuantum {
    double n_star;
    double l_star;
};

/// n* = n - delta(|l|), l* = |l| - delta(|l|) + I(|l|).
inline StarredQuantum starred(int n, int l, const QuantumDefectTable& table) {
    const double d = table.defect(l);
    const StarredQuantum s{n - d, std::abs(l) - d + table.shift(l)};
    if (!(s.n_star > s.l_star))
        throw std::domain_error("starred: n* <= l*, not a bound combination");
    if (!(2.0 * s.l_star > -1.0))
        throw std::domain_error("starred: l* <= -1/2, non-normalizable channel");
    return s;
}

/// E_{n*} = -1/(2 (n* - 1/2)^2).
inline double sqdt_energy(int n, int l, const QuantumDefectTable& table) {
    if (std::abs(l) > n - 1) throw std::domain_error("sqdt_energy: |l| > n - 1");
    const auto s = starred(n, l, table);
    return ess::bound_energy(s.n_star);
}

/// R_{n* l*}(r): the hydrogenic radial form with starred quantum numbers;
/// the Laguerre degree stays n - |l| - 1 (the radial node count).
inline double sqdt_eigenstate(int n, int l, const QuantumDefectTable& table, double r) {
    if (std::abs(l) > n - 1) throw std::domain_error("sqdt_eigenstate: |l| > n - 1");
    if (!(r > 0.0)) throw std::domain_error("sqdt_eigenstate: r must be > 0");
    const auto s = starred(n, l, table);
    return ess::detail::radial_eigen(s.n_star - 0.5, s.l_star, n - std::abs(l) - 1, r);
}

namespace detail {

inline cd sqdt_coefficient(const ess::EssParams& p, int n, int l,
                           const QuantumDefectTable& table, int nodes = 600) {
    const double w = ess::detail::angular_weight(p.beta, l, p.delta);
    if (w == 0.0) return cd(0.0, 0.0);
    const auto s = starred(n, l, table);
    return ess::detail::radial_overlap_quadrature(p.rss(), s.n_star - 0.5, s.l_star,
                                                  n - std::abs(l) - 1, nodes) * w;
}

}  // namespace detail

/// Expand the ESS over SQDT eigenstates; radial overlaps by 600-node
/// scaled Gauss-Laguerre quadrature (no closed form for the starred case).
inline ess::SpectralState sqdt_expand(const ess::EssParams& p, const QuantumDefectTable& table,
                                      double tol = 1e-6) {
    if (!(tol > 0.0)) throw std::domain_error("sqdt_expand: tol must be > 0");
    const double t = specfun::detail::bessel_ratio_i1_i0(2.0 * p.delta);
    const double L2 = 0.5 * p.delta * t + double(p.beta) * p.beta;
    const double H = ess::hamiltonian_expectation(p.alpha, p.gamma0, p.gamma1, L2);
    if (!(H < 0.0)) throw std::domain_error("sqdt_expand: state is not bound");
    const int nc = std::clamp(int(std::lround(0.5 + 1.0 / std::sqrt(-2.0 * H))), 1, 400);
    const double dL = std::sqrt(std::max(L2 - double(p.beta) * p.beta, 0.0));
    return ess::detail::expand_window(
        nc, p.beta, dL, tol,
        [&](int n, int l) { return detail::sqdt_coefficient(p, n, l, table); },
        [&](int n, int l, cd c) {
            const auto st = starred(n, l, table);
            ess::SpectralEntry e;
            e.n = n; e.l = l; e.c = c;
            e.kappa = st.n_star - 0.5;
            e.lstar = st.l_star;
            e.energy = ess::bound_energy(st.n_star);
            return e;
        });
}

/// <H> = sum |c~_nl|^2 E_{n*}, the defect-aware energy functional.
inline double sqdt_hamiltonian_expectation(const ess::SpectralState& s,
                                           const QuantumDefectTable& /*table*/) {
    double acc = 0.0;
    for (const auto& e : s.entries) acc += std::norm(e.c) * e.energy;
    return acc;
}

/// Defect-aware ESS construction.  Targets are E_{n_bar*} and the starred
/// outer apsis; with weighted_mean the 2x2 solve is wrapped in an outer
/// fixed point that makes the expansion-weighted energy meet E_{n_bar*}.
inline ess::EssParams sqdt_build(const ess::PhysicalSpec& spec, const QuantumDefectTable& table,
                                 bool weighted_mean = true) {
    const double d = table.defect(spec.l_bar);
    const double ns_bar = spec.n_bar - d;
    const double ls_bar = spec.l_bar - d + table.shift(spec.l_bar);
    const double E_star = ess::bound_energy(ns_bar);
    const double nt = ns_bar - 0.5;
    const double disc = 1.0 - ls_bar * ls_bar / (nt * nt);
    if (disc < 0.0) throw std::domain_error("sqdt_build: starred l exceeds starred n - 1/2");
    const double r_star = nt * nt * (1.0 + std::sqrt(disc));

    const double delta = angular::delta_from_spread(spec.dL);
    const double t = specfun::detail::bessel_ratio_i1_i0(2.0 * delta);
    const double L2 = 0.5 * delta * t + double(spec.l_bar) * spec.l_bar;

    double E_target = E_star;
    for (int it = 0; it < 50; ++it) {
        const auto [alpha, gamma0] = ess::detail::solve_alpha_gamma(r_star, E_target, L2);
        const ess::EssParams p(alpha, gamma0, 0.0, spec.l_bar, delta);
        if (!weighted_mean) return p;
        const auto s = sqdt_expand(p, table, 1e-7);
        double mass = 0.0, h = 0.0;
        for (const auto& e : s.entries) {
            mass += std::norm(e.c);
            h += std::norm(e.c) * e.energy;
        }
        const double err = h / mass - E_star;
        if (std::abs(err) <= 1e-8 * std::abs(E_star)) return p;
        E_target -= err;
    }
    std::ostringstream os;
    os << "sqdt_build: outer fixed point did not converge in 50 iterations";
    throw solver_error(os.str());
}

struct SqdtOscillator {
    double d_R;
    double d_P;       // spread of P = -(i/f)(d/dr + 1/2r)
    double bound;     // (1/2f) <1/r^2>
    double residual;  // d_R d_P - bound
};

/// Modified oscillator uncertainty with f = |l*|/|l|.
inline SqdtOscillator sqdt_oscillator_uncertainty(const radial::RssParams& p, int l,
                                                  const QuantumDefectTable& table) {
    if (l == 0) throw std::domain_error("sqdt_oscillator_uncertainty: l must be nonzero");
    const auto st = starred(std::abs(l) + 1, l, table);  // n enters only via the guard
    const double f = std::abs(st.l_star) / std::abs(double(l));
    const auto base = radial::rss_oscillator_uncertainty(p);  // requires alpha > 1/2
    SqdtOscillator o{};
    o.d_R = base.d_R;
    o.d_P = base.d_P / f;
    o.bound = base.half_inv_r2 / f;
    o.residual = o.d_R * o.d_P - o.bound;
    return o;
}

}  // namespace keplerwave::sqdt
