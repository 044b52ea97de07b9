#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "keplerwave/classical.hpp"

namespace kc = keplerwave::classical;
using Catch::Approx;

namespace {
const double kE45 = -1.0 / (2.0 * 44.5 * 44.5);
}

TEST_CASE("orbit geometry for the n=45 manifold") {
    const auto o30 = kc::orbit_from_energy(kE45, 30.0);
    CHECK(o30.a == Approx(1980.25).epsilon(1e-14));
    CHECK(o30.e == Approx(0.738587794586283).epsilon(1e-12));
    CHECK(o30.r1 == Approx(517.6615197705131).epsilon(1e-12));
    CHECK(o30.r2 == Approx(3442.838480229487).epsilon(1e-12));
    CHECK(o30.r1 == Approx(517.0).margin(1.0));   // r_in ~ 517 a.u.
    CHECK(o30.r1 <= o30.r2);

    const auto o40 = kc::orbit_from_energy(kE45, 40.0);
    CHECK(o40.r1 == Approx(1113.0).margin(1.0));  // r_in ~ 1113 a.u.
}

TEST_CASE("circular limit and rejected orbits") {
    const double l_circ = std::sqrt(1.0 / (2.0 * std::abs(kE45)));
    const auto oc = kc::orbit_from_energy(kE45, l_circ);
    CHECK(oc.e == Approx(0.0).margin(1e-7));
    CHECK(oc.r1 == Approx(oc.a).epsilon(1e-7));
    CHECK(oc.r2 == Approx(oc.a).epsilon(1e-7));

    CHECK_THROWS_AS(kc::orbit_from_energy(0.1, 30.0), std::domain_error);
    CHECK_THROWS_AS(kc::orbit_from_energy(kE45, 0.0), std::domain_error);
    CHECK_THROWS_AS(kc::orbit_from_energy(kE45, 100.0), std::domain_error);
}

TEST_CASE("classical period") {
    const auto p = kc::classical_period(45.0);
    CHECK(p.au == Approx(2.0 * M_PI * std::pow(44.5, 3)).epsilon(1e-15));
    CHECK(p.seconds * 1e12 == Approx(13.4).margin(0.05));  // ~13.4 ps
    CHECK(kc::classical_period(0.5).au == 0.0);
    CHECK_THROWS_AS(kc::classical_period(0.2), std::domain_error);
    // geometry route agrees
    const auto o = kc::orbit_from_energy(kE45, 30.0);
    CHECK(o.T_cl == Approx(p.au).epsilon(1e-14));
}

TEST_CASE("kepler_position apsis conditions") {
    const auto o = kc::orbit_from_energy(kE45, 30.0);
    const auto p0 = kc::kepler_position(o, 0.0, kc::Apsis::outer);
    CHECK(p0.r == Approx(o.r2).epsilon(1e-12));
    CHECK(p0.phi == Approx(0.0).margin(1e-12));
    const auto ph = kc::kepler_position(o, o.T_cl / 2.0, kc::Apsis::outer);
    CHECK(ph.r == Approx(o.r1).epsilon(1e-10));
    CHECK(ph.phi == Approx(M_PI).margin(1e-9));
    const auto pi0 = kc::kepler_position(o, 0.0, kc::Apsis::inner);
    CHECK(pi0.r == Approx(o.r1).epsilon(1e-12));
}

TEST_CASE("kepler_position vs velocity-Verlet integration at T/4") {
    const auto o = kc::orbit_from_energy(kE45, 30.0);
    // independent oracle: symplectic integration of the radial hamiltonian
    const long nstep = 4'000'000;
    const double dt = (o.T_cl / 4.0) / nstep;
    double r = o.r2, v = 0.0;
    auto acc = [&](double rr) { return o.l * o.l / (rr * rr * rr) - 1.0 / (rr * rr); };
    double a0 = acc(r);
    for (long i = 0; i < nstep; ++i) {
        r += v * dt + 0.5 * a0 * dt * dt;
        const double a1 = acc(r);
        v += 0.5 * (a0 + a1) * dt;
        a0 = a1;
    }
    const auto pq = kc::kepler_position(o, o.T_cl / 4.0, kc::Apsis::outer);
    CHECK(pq.r == Approx(r).epsilon(1e-4));
}

TEST_CASE("energy conservation with finite-differenced p_r") {
    const auto o = kc::orbit_from_energy(kE45, 30.0);
    const double h = 2.0;
    for (int i = 0; i <= 40; ++i) {
        const double t = o.T_cl * i / 40.0 + 1000.0;
        const double rp1 = kc::kepler_position(o, t + h).r;
        const double rm1 = kc::kepler_position(o, t - h).r;
        const double rp2 = kc::kepler_position(o, t + 2 * h).r;
        const double rm2 = kc::kepler_position(o, t - 2 * h).r;
        const double pr = (-rp2 + 8.0 * rp1 - 8.0 * rm1 + rm2) / (12.0 * h);
        const double r = kc::kepler_position(o, t).r;
        const double H = 0.5 * pr * pr + o.l * o.l / (2.0 * r * r) - 1.0 / r;
        const double scale = 0.5 * pr * pr + o.l * o.l / (2.0 * r * r) + 1.0 / r;
        CHECK(std::abs(H - o.E) <= 1e-10 * std::max(scale, 1e-3));
    }
}

TEST_CASE("period closure and equal-area law") {
    const auto o = kc::orbit_from_energy(kE45, 30.0);
    const auto pT = kc::kepler_position(o, o.T_cl);
    CHECK(pT.r == Approx(o.r2).epsilon(1e-9));

    const double h = 10.0;
    double ref = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double t = o.T_cl * (i + 0.5) / 100.0;
        const auto pa = kc::kepler_position(o, t - h);
        const auto pb = kc::kepler_position(o, t + h);
        const auto pm = kc::kepler_position(o, t);
        const double dphi = std::remainder(pb.phi - pa.phi, 2.0 * M_PI) / (2.0 * h);
        const double sweep = 0.5 * pm.r * pm.r * dphi;
        if (i == 0) ref = sweep;
        CHECK(sweep == Approx(ref).epsilon(1e-6));
    }
    // the sweep rate is l/2
    CHECK(ref == Approx(o.l / 2.0).epsilon(1e-6));
}

TEST_CASE("orientation offset") {
    const auto o = kc::orbit_from_energy(kE45, 30.0, 0.7);
    const auto p0 = kc::kepler_position(o, 0.0, kc::Apsis::outer);
    CHECK(p0.phi == Approx(0.7).margin(1e-12));
}
