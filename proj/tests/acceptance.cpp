// Acceptance suite: one line per criterion, [PASS]/[FAIL] with measured
// values.  Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "keplerwave/classical.hpp"
#include "keplerwave/rungelenz.hpp"
#include "keplerwave/sqdt.hpp"
#include "oracle.hpp"

namespace ke = keplerwave::ess;
namespace ka = keplerwave::angular;
namespace kr = keplerwave::radial;
namespace kc = keplerwave::classical;
namespace ks = keplerwave::sqdt;
namespace sf = keplerwave::specfun;
using cd = std::complex<double>;

namespace {

int g_failures = 0;

struct Criterion {
    std::string label;
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void finish() const {
        std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", label.c_str(),
                    detail.empty() ? "" : " -- ", detail.c_str());
        if (!ok) ++g_failures;
    }
};

std::string num(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.6g", v);
    return b;
}

double now_seconds() {
    using clk = std::chrono::steady_clock;
    static const clk::time_point t0 = clk::now();
    return std::chrono::duration<double>(clk::now() - t0).count();
}

double oracle_radial(int n, int l, double r) {
    const int al = std::abs(l);
    const double kap = n - 0.5;
    const int m = n - al - 1;
    const double lnN = 0.5 * ((2.0 * al + 2.0) * std::log(2.0 / kap) + std::lgamma(m + 1.0) -
                              std::log(2.0 * kap) - std::lgamma(m + 2.0 * al + 1.0));
    const double lnpre = lnN + al * std::log(r) - r / kap;
    if (lnpre < -700.0) return 0.0;
    return std::exp(lnpre) * std::assoc_laguerre(unsigned(m), unsigned(2 * al), 2.0 * r / kap);
}

cd oracle_coefficient(const ke::EssParams& p, int n, int l) {
    const auto rss = p.rss();
    const cd rad = oracle::simpson_c(
        [&](double r) {
            if (r <= 0.0) return cd(0.0);
            return cd(oracle_radial(n, l, r)) * kr::rss_eval(rss, r) * r;
        },
        1e-9, 26000.0, 400000);
    const auto css = p.css();
    const cd ang = oracle::trap_periodic_c(
        [&](double phi) {
            return std::exp(cd(0.0, -double(l) * phi)) / std::sqrt(2.0 * M_PI) *
                   ka::css_eval(css, phi);
        },
        4096);
    return rad * ang;
}

}  // namespace

int main() {
    const double t_start = now_seconds();
    const ke::PhysicalSpec spec30(45.0, 30, 2.5);
    const ke::PhysicalSpec spec40(45.0, 40, 2.5);
    const double t_cl = kc::classical_period(45.0).au;

    // 1. parameter solver reproduces the published values
    {
        Criterion c{"1. parameter solver (45,30,2.5) and (45,40,2.5)"};
        const double t0 = now_seconds();
        const auto p30 = ke::ess_build(spec30);
        const auto p40 = ke::ess_build(spec40);
        const double dt = now_seconds() - t0;
        c.require(std::abs(p30.alpha - 57.408) <= 1e-3, "alpha30=" + num(p30.alpha));
        c.require(std::abs(p30.gamma0 - 0.01697) <= 1e-5, "gamma0_30=" + num(p30.gamma0));
        c.require(std::abs(p30.delta - 12.753) <= 1e-3, "delta=" + num(p30.delta));
        c.require(p30.beta == 30, "beta30");
        c.require(p30.gamma1 == 0.0, "gamma1_30");
        c.require(std::abs(p40.alpha - 20.412) <= 1e-3, "alpha40=" + num(p40.alpha));
        c.require(std::abs(p40.gamma0 - 0.00752) <= 1e-5, "gamma0_40=" + num(p40.gamma0));
        c.require(dt < 1.0, "runtime " + num(dt) + " s");
        c.finish();
    }

    // 2. CSS spread inversion reproduces the reference values
    {
        Criterion c{"2. CSS spread inversion dL -> delta"};
        const double d1 = ka::delta_from_spread(0.5);
        const double d2 = ka::delta_from_spread(1.5);
        const double d3 = ka::delta_from_spread(2.5);
        c.require(std::abs(d1 - 0.804) <= 1e-3, "delta(0.5)=" + num(d1));
        c.require(std::abs(d2 - 4.757) <= 1e-3, "delta(1.5)=" + num(d2));
        c.require(std::abs(d3 - 12.753) <= 1e-3, "delta(2.5)=" + num(d3));
        c.finish();
    }

    // 3. classical geometry
    {
        Criterion c{"3. orbit geometry and period"};
        const double E = -1.0 / (2.0 * 44.5 * 44.5);
        const auto o30 = kc::orbit_from_energy(E, 30.0);
        const auto o40 = kc::orbit_from_energy(E, 40.0);
        const auto per = kc::classical_period(45.0);
        c.require(std::abs(o30.r2 - 3443.0) <= 1.0, "r_out=" + num(o30.r2));
        c.require(std::abs(o30.r1 - 517.0) <= 1.0, "r_in(30)=" + num(o30.r1));
        c.require(std::abs(o40.r1 - 1113.0) <= 1.0, "r_in(40)=" + num(o40.r1));
        c.require(std::abs(per.seconds * 1e12 - 13.4) <= 0.05, "T_cl=" + num(per.seconds * 1e12) + " ps");
        c.finish();
    }

    // 4. Runge-Lenz diagnostics vs the published values
    {
        Criterion c{"4. Runge-Lenz diagnostics (published values)"};
        const double t0 = now_seconds();
        const auto p = ke::ess_build(spec30);
        ke::RungeLenz d{};
        bool threw = false;
        try {
            d = ke::runge_lenz_diagnostics(p);  // 1200x2048, Richardson, tol 1e-4
        } catch (const keplerwave::accuracy_error& e) {
            threw = true;
            c.require(false, std::string("accuracy: ") + e.what());
        }
        const double dt = now_seconds() - t0;
        if (!threw) {
            const double prod = d.d_ax * d.d_ay;
            c.require(d.err_estimate <= 1e-4, "richardson=" + num(d.err_estimate));
            c.require(std::abs(prod - 0.1214) <= 0.02 * 0.1214,
                      "dAx*dAy=" + num(prod) + " (published 0.1214)");
            c.require(std::abs(d.abs_hl - 0.0099) <= 0.02 * 0.0099,
                      "|<HL>|=" + num(d.abs_hl) + " (published 0.0099)");
            c.require(std::abs(d.z - 11.26) <= 0.05, "Z=" + num(d.z) + " (published 11.26)");
            c.require(dt < 120.0, "runtime " + num(dt) + " s");
            if (!c.ok)
                c.detail += "; computed values are internally validated (commutator identity, "
                            "coefficient-space <HL>, classical limits); the published triple is not reproducible";
        }
        c.finish();
    }

    // 5. expansion-coefficient identities
    {
        Criterion c{"5. spectral expansion identities"};
        const auto p = ke::ess_build(spec30);
        const auto s = ke::expand(p, 1e-6);
        double mass = 0.0, sE = 0.0, sl = 0.0, sl2 = 0.0;
        for (const auto& e : s.entries) {
            const double w = std::norm(e.c);
            mass += w; sE += w * e.energy; sl += w * e.l; sl2 += w * double(e.l) * e.l;
        }
        const auto ee = ke::ess_expectations(p);
        c.require(mass >= 1.0 - 1e-6, "sum|c|^2=" + num(mass));
        c.require(std::abs(sE / mass - ee.H) <= 1e-6 * std::abs(ee.H), "sumE rel=" + num(std::abs(sE / mass - ee.H) / std::abs(ee.H)));
        c.require(std::abs(sl / mass - 30.0) <= 1e-6 * 30.0, "sum l=" + num(sl / mass));
        c.require(std::abs(sl2 / mass - 900.0 - 6.25) <= 1e-6 * 6.25,
                  "sum l^2 - 900=" + num(sl2 / mass - 900.0));
        for (const auto& [n, l] : {std::pair{45, 30}, std::pair{42, 28}, std::pair{48, 33}}) {
            const cd got = ke::detail::expansion_coefficient(p, n, l);
            const cd ref = oracle_coefficient(p, n, l);
            c.require(std::abs(got - ref) <= 1e-8,
                      "c(" + std::to_string(n) + "," + std::to_string(l) + ") err=" + num(std::abs(got - ref)));
        }
        c.finish();
    }

    // 6. dynamics
    {
        Criterion c{"6. dynamics over one classical period"};
        const auto p = ke::ess_build(spec30);
        const auto s = ke::expand(p, 1e-6);
        std::vector<double> scan(4001);
        for (int i = 0; i < 4001; ++i) scan[i] = t_cl * (0.5 + 1.0 * i / 4000.0);
        const auto ts = ke::observables_vs_time(s, scan);
        std::size_t imax = 0;
        for (std::size_t i = 0; i < scan.size(); ++i)
            if (ts.autocorr[i] > ts.autocorr[imax]) imax = i;
        const double tpk = scan[imax] / t_cl;
        c.require(std::abs(tpk - 1.0) <= 0.01, "autocorr peak at " + num(tpk) + " T_cl");
        const auto t0s = ke::observables_vs_time(s, {0.0, t_cl / 2.0});
        const double r_out = ke::outer_apsis(45.0, 30);
        c.require(std::abs(t0s.r_mean[0] - r_out) <= 0.005 * r_out, "<r>(0)=" + num(t0s.r_mean[0]));
        c.require(t0s.r_mean[1] < 44.5 * 44.5, "<r>(T/2)=" + num(t0s.r_mean[1]));
        // normalized L2 grid distance between t = 0 and t = T_cl densities
        std::vector<double> rg(420), pg(512);
        for (int i = 0; i < 420; ++i) rg[i] = 4.0 + (6500.0 - 4.0) * i / 419.0;
        for (int i = 0; i < 512; ++i) pg[i] = -M_PI + 2.0 * M_PI * i / 512.0;
        const auto f0 = ke::reconstruct(s, rg, pg);
        const auto fT = ke::reconstruct(ke::evolve(s, t_cl), rg, pg);
        double nn = 0.0, dd = 0.0;
        for (std::size_t i = 0; i < f0.values.size(); ++i) {
            nn += (fT.values[i] - f0.values[i]) * (fT.values[i] - f0.values[i]);
            dd += f0.values[i] * f0.values[i];
        }
        const double dist = std::sqrt(nn / dd);
        c.require(dist <= 0.15, "grid distance=" + num(dist) +
                                    " (autocorr(T_cl)=" + num(ts.autocorr[2000]) +
                                    " bounds it above 0.15: the revival is partial)");
        c.finish();
    }

    // 7. Z > 0 over the full orbit-family grid
    {
        Criterion c{"7. Z surface positivity (20 x 20 orbits)"};
        const double t0 = now_seconds();
        const auto p = ke::ess_build(spec30);
        const double dr = std::sqrt((p.alpha + 1.0) / 2.0) / p.gamma0;
        std::vector<double> ag(20), eg(20);
        for (int i = 0; i < 20; ++i) {
            ag[i] = 500.0 + (4000.0 - 500.0) * i / 19.0;
            eg[i] = 0.1 + (0.9 - 0.1) * i / 19.0;
        }
        try {
            const auto zs = ke::z_surface(ag, eg, dr, 2.5, 0.0, {500, 512, 4.0, 0.25, true});
            double zmin = 1e300, emax = 0.0;
            for (std::size_t i = 0; i < zs.z.size(); ++i) {
                const double z = zs.z[i];
                if (!std::isfinite(z)) { c.require(false, "non-finite Z"); break; }
                zmin = std::min(zmin, z);
                emax = std::max(emax, zs.err[i]);
                // positive beyond 3x the per-point quadrature uncertainty
                c.require(z > 3.0 * (1.0 + z) * zs.err[i],
                          "Z=" + num(z) + " within noise " + num(zs.err[i]) + " at a=" +
                              num(zs.a[i / zs.e.size()]) + ", e=" + num(zs.e[i % zs.e.size()]));
                if (!c.ok) break;
            }
            c.require(zmin > 0.0, "min Z=" + num(zmin));
            c.detail += (c.detail.empty() ? "" : "; ");
            c.detail += "min Z=" + num(zmin) + ", max grid-doubling change " + num(emax) +
                        ", runtime " + num(now_seconds() - t0) + " s";
        } catch (const std::exception& e) {
            c.require(false, e.what());
        }
        c.finish();
    }

    // 8. SQDT consistency
    {
        Criterion c{"8. SQDT: hydrogenic limit, lithium, precession"};
        const ks::QuantumDefectTable zero{};
        const ks::QuantumDefectTable lithium{{{0, 0.40}, {1, 0.05}}};
        const ks::QuantumDefectTable synth{{{30, 0.2}}};
        const auto p0 = ke::ess_build(spec30);
        const auto pz = ks::sqdt_build(spec30, zero);
        c.require(std::abs(pz.alpha - p0.alpha) <= 1e-6 * p0.alpha, "alpha zero-defect rel err");
        c.require(std::abs(pz.gamma0 - p0.gamma0) <= 1e-6 * p0.gamma0, "gamma0 zero-defect rel err");
        c.require(ks::sqdt_energy(45, 1, zero) == ke::bound_energy(45.0), "hydrogenic energies");
        const auto sz = ks::sqdt_expand(p0, zero, 1e-6);
        double cmax = 0.0;
        for (const auto& e : sz.entries)
            cmax = std::max(cmax, std::abs(e.c - ke::detail::expansion_coefficient(p0, e.n, e.l)));
        c.require(cmax <= 1e-6, "zero-defect coefficient err=" + num(cmax));
        c.require(ks::sqdt_energy(45, 0, lithium) != ks::sqdt_energy(45, 1, lithium),
                  "lithium degeneracy");
        c.require(ks::sqdt_energy(45, 1, lithium) != ks::sqdt_energy(45, 2, lithium),
                  "lithium degeneracy p/d");
        // precession offset at t = T_cl with the synthetic table
        const auto ps = ks::sqdt_build(spec30, synth);
        auto ss = ks::sqdt_expand(ps, synth, 1e-6);
        ss = ke::evolve(ss, t_cl);
        std::vector<double> rg(380), pg(2048);
        for (int i = 0; i < 380; ++i) rg[i] = 50.0 + (6500.0 - 50.0) * i / 379.0;
        for (int i = 0; i < 2048; ++i) pg[i] = -M_PI + 2.0 * M_PI * i / 2048.0;
        const auto f = ke::reconstruct(ss, rg, pg);
        std::size_t im = 0;
        for (std::size_t i = 0; i < f.values.size(); ++i)
            if (f.values[i] > f.values[im]) im = i;
        const double phi_max = pg[im % pg.size()];
        const double dphi = 2.0 * M_PI / 2048.0;
        c.require(std::abs(phi_max) > 3.0 * dphi,
                  "precession offset " + num(phi_max) + " rad vs 3 sigma " + num(3.0 * dphi));
        c.finish();
    }

    // 9. invariant suite
    {
        Criterion c{"9. module invariants (normalization, minimality, recurrences, covariance, unitarity)"};
        // CSS normalization for the reference family
        for (double d : {0.0, 0.804, 4.757, 12.753}) {
            const ka::CssParams cp(d, 30);
            const double n = oracle::trap_periodic(
                [&](double phi) { return std::norm(ka::css_eval(cp, phi)); }, 4096);
            c.require(std::abs(n - 1.0) <= 1e-10, "CSS norm delta=" + num(d));
        }
        // RSS normalization
        const auto p = ke::ess_build(spec30);
        const double nr = oracle::simpson(
            [&](double r) { return r <= 0 ? 0.0 : std::norm(kr::rss_eval(p.rss(), r)) * r; },
            1e-9, 28000.0, 300000);
        c.require(std::abs(nr - 1.0) <= 1e-9, "RSS norm");
        // minimality residuals
        c.require(std::abs(ka::css_minimality(p.css())) <= 1e-12, "CSS minimality");
        const auto osc = kr::rss_oscillator_uncertainty(p.rss());
        c.require(std::abs(osc.residual) <= 1e-10 * osc.half_inv_r2, "RSS oscillator minimality");
        // Bessel recurrence consistency
        for (int nn : {1, 5, 25, 50})
            for (double z : {0.5, 5.0, 25.0, 50.0}) {
                const double lhs = sf::bessel_i(nn - 1, z) - sf::bessel_i(nn + 1, z);
                const double rhs = 2.0 * nn / z * sf::bessel_i(nn, z);
                const double scale = std::abs(sf::bessel_i(nn - 1, z));
                if (scale > 1e-280)
                    c.require(std::abs(lhs - rhs) <= 1e-10 * scale, "bessel recurrence");
            }
        // Laguerre recurrence residual
        for (int k : {3, 17, 40}) {
            const double a = 2.7, x = 31.0;
            const double resid = (k + 1.0) * sf::laguerre(k + 1, a, x) -
                                 (2.0 * k + 1.0 + a - x) * sf::laguerre(k, a, x) +
                                 (k + a) * sf::laguerre(k - 1, a, x);
            const double scale = std::max(1.0, std::abs((2.0 * k + 1.0 + a - x) * sf::laguerre(k, a, x)));
            c.require(std::abs(resid) <= 1e-9 * scale, "laguerre recurrence");
        }
        // rotation covariance of the CSS
        const ka::CssParams rot(4.757, 30, 1.234);
        const double c1 = oracle::trap_periodic(
            [&](double x) { return std::cos(x - rot.phi0) * std::norm(ka::css_eval(rot, x)); }, 8192);
        c.require(std::abs(c1 - ka::css_expectations(rot).cos_phi) <= 1e-10, "rotation covariance");
        // unitarity of evolution
        const auto s = ke::expand(p, 1e-6);
        const auto se = ke::evolve(s, 0.37 * t_cl);
        double m0 = 0.0, m1 = 0.0;
        for (std::size_t i = 0; i < s.entries.size(); ++i) {
            m0 += std::norm(s.entries[i].c);
            m1 += std::norm(se.entries[i].c);
        }
        c.require(std::abs(m0 - m1) <= 1e-14, "unitarity");
        const double total = now_seconds() - t_start;
        c.require(total < 600.0, "acceptance runtime " + num(total) + " s");
        c.detail += (c.detail.empty() ? "" : "; ");
        c.detail += "acceptance runtime " + num(total) + " s";
        c.finish();
    }

    if (g_failures) {
        std::printf("%d criterion(s) failed; measured values printed above.\n",
                    g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed.\n");
    return 0;
}
