#pragma once

// Classical planar Kepler reference: orbit geometry from (E, l), the
// orbital period, and a trajectory oracle used to validate quantum
// expectation motion.  Atomic units throughout.

#include <cmath>
#include <stdexcept>

#include "keplerwave/errors.hpp"

namespace keplerwave::classical {

inline constexpr double kSecondsPerAu = 2.418884e-17;

struct OrbitGeometry {
    double a;     // semimajor axis
    double e;     // eccentricity, 0 <= e < 1
    double eta;   // orientation of the semimajor axis
    double r1;    // inner apsidal distance a(1-e)
    double r2;    // outer apsidal distance a(1+e)
    double T_cl;  // orbital period
    double E;     // energy
    double l;     // classical angular momentum
};

/// Orbit geometry for a bound orbit.  E must be negative and 2 l^2 |E| <= 1;
/// l = 0 (the degenerate e = 1 radial orbit) is rejected.
inline OrbitGeometry orbit_from_energy(double E, double l, double eta = 0.0) {
    if (!(E < 0.0)) throw std::domain_error("orbit_from_energy: unbound orbit (E >= 0)");
    if (l <= 0.0) throw std::domain_error("orbit_from_energy: l = 0 degenerate orbit rejected");
    const double ee = 1.0 - 2.0 * l * l * std::abs(E);
    if (ee < 0.0) throw std::domain_error("orbit_from_energy: 2 l^2 |E| > 1, no real eccentricity");
    OrbitGeometry o;
    o.E = E;
    o.l = l;
    o.eta = eta;
    o.a = 1.0 / (2.0 * std::abs(E));
    o.e = std::sqrt(ee);
    o.r1 = o.a * (1.0 - o.e);
    o.r2 = o.a * (1.0 + o.e);
    o.T_cl = 2.0 * M_PI / std::pow(2.0 * std::abs(E), 1.5);
    return o;
}

struct Period {
    double au;
    double seconds;
};

/// T_cl = 2 pi (n_bar - 1/2)^3 for the planar Rydberg series.
inline Period classical_period(double n_bar) {
    if (n_bar < 0.5) throw std::domain_error("classical_period: n_bar < 1/2");
    const double au = 2.0 * M_PI * std::pow(n_bar - 0.5, 3);
    return {au, au * kSecondsPerAu};
}

enum class Apsis { inner, outer };

struct PolarPoint {
    double r;
    double phi;  // measured from eta, in [0, 2 pi), increasing along the motion
};

/// Position at time t, starting from the chosen apsis at t = 0.
/// Kepler's equation M = u - e sin u is solved by Newton iteration to
/// |residual| < 1e-13.
inline PolarPoint kepler_position(const OrbitGeometry& orbit, double t, Apsis start = Apsis::outer) {
    const double n_mot = 2.0 * M_PI / orbit.T_cl;
    double M = n_mot * t + (start == Apsis::outer ? M_PI : 0.0);
    M = std::fmod(M, 2.0 * M_PI);
    if (M < 0.0) M += 2.0 * M_PI;
    double u = M + orbit.e * std::sin(M);
    bool done = false;
    for (int it = 0; it < 100; ++it) {
        const double f = u - orbit.e * std::sin(u) - M;
        if (std::abs(f) < 1e-13) { done = true; break; }
        u -= f / (1.0 - orbit.e * std::cos(u));
    }
    if (!done) throw accuracy_error("kepler_position: Newton failed to reach 1e-13");
    const double cu = std::cos(u), su = std::sin(u);
    const double r = orbit.a * (1.0 - orbit.e * cu);
    const double theta = std::atan2(std::sqrt(1.0 - orbit.e * orbit.e) * su, cu - orbit.e);
    double phi = orbit.eta + theta - (start == Apsis::outer ? M_PI : 0.0);
    phi = std::fmod(phi, 2.0 * M_PI);
    if (phi < 0.0) phi += 2.0 * M_PI;
    return {r, phi};
}

}  // namespace keplerwave::classical
