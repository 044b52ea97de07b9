#pragma once

// Minimal double-double arithmetic (~31 significant digits) for the one
// place that needs it: the alternating expansion-coefficient sum, whose
// terms cancel by up to ~27 orders of magnitude.

#include <cmath>

namespace keplerwave::detail {

struct dd {
    double hi = 0.0, lo = 0.0;
    dd() = default;
    dd(double h) : hi(h), lo(0.0) {}
    dd(double h, double l) : hi(h), lo(l) {}
    explicit operator double() const { return hi + lo; }
};

inline dd two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline dd quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd operator+(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd operator-(dd a, dd b) { return a + dd(-b.hi, -b.lo); }

inline dd operator*(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline dd operator/(dd a, dd b) {
    const double q0 = a.hi / b.hi;
    dd r = a - b * dd(q0);
    const double q1 = r.hi / b.hi;
    r = r - b * dd(q1);
    const double q2 = r.hi / b.hi;
    dd q = quick_two_sum(q0, q1);
    q.lo += q2;
    return quick_two_sum(q.hi, q.lo);
}

struct cdd {
    dd re, im;
    cdd() = default;
    cdd(dd r, dd i) : re(r), im(i) {}
    cdd(double r, double i = 0.0) : re(r), im(i) {}
};

inline cdd operator+(cdd a, cdd b) { return {a.re + b.re, a.im + b.im}; }
inline cdd operator*(cdd a, cdd b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline cdd operator*(cdd a, dd s) { return {a.re * s, a.im * s}; }
inline cdd operator/(cdd a, cdd b) {
    const dd den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
inline double abs2(cdd a) { return double(a.re * a.re + a.im * a.im); }

}  // namespace keplerwave::detail
