#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numeric>

#include "keplerwave/dd.hpp"
#include "keplerwave/fft.hpp"
#include "keplerwave/quadrature.hpp"
#include "keplerwave/threading.hpp"
#include "oracle.hpp"

using Catch::Approx;
using cd = std::complex<double>;
namespace kq = keplerwave::quadrature;

TEST_CASE("gauss-laguerre integrates moments exactly") {
    for (int n : {20, 100, 400, 600}) {
        const auto& gl = kq::gauss_laguerre_cached(n);
        for (int k : {0, 1, 5, 12, 25}) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i)
                acc += std::exp(gl.log_w[i] + k * std::log(gl.x[i]));
            const double ref = std::exp(std::lgamma(k + 1.0));
            CHECK(acc == Approx(ref).epsilon(1e-12));
        }
    }
}

TEST_CASE("gauss-laguerre handles a displaced narrow integrand") {
    // int_0^inf e^{-x} x^57.4 dx = Gamma(58.4): sharply peaked near x = 57.4
    const auto& gl = kq::gauss_laguerre_cached(400);
    double acc = 0.0;
    for (int i = 0; i < 400; ++i)
        acc += std::exp(gl.log_w[i] + 57.4 * std::log(gl.x[i]));
    CHECK(acc == Approx(std::exp(std::lgamma(58.4))).epsilon(1e-12));
}

TEST_CASE("fft round trip and spectral derivative") {
    const int n = 256;
    std::vector<cd> a(n), orig;
    for (int k = 0; k < n; ++k) {
        const double phi = -M_PI + 2.0 * M_PI * k / n;
        a[k] = cd(std::exp(2.0 * std::cos(phi)), std::sin(3.0 * phi));
    }
    orig = a;
    keplerwave::fft::transform(a.data(), n, -1);
    keplerwave::fft::transform(a.data(), n, +1);
    for (int k = 0; k < n; ++k) CHECK(std::abs(a[k] - orig[k]) < 1e-13);

    // derivative of exp(i m phi) is i m exp(i m phi)
    std::vector<cd> row(n), d1(n), d2(n), d3(n);
    const int m = 7;
    for (int k = 0; k < n; ++k) {
        const double phi = -M_PI + 2.0 * M_PI * k / n;
        row[k] = cd(std::cos(m * phi), std::sin(m * phi));
    }
    keplerwave::fft::spectral_derivatives(row.data(), n, d1.data(), d2.data(), d3.data());
    for (int k = 0; k < n; ++k) {
        CHECK(std::abs(d1[k] - cd(0.0, m) * row[k]) < 1e-11);
        CHECK(std::abs(d2[k] - cd(-double(m) * m, 0.0) * row[k]) < 1e-10);
        CHECK(std::abs(d3[k] - cd(0.0, -double(m) * m * m) * row[k]) < 1e-8);
    }
}

TEST_CASE("fft derivative of a smooth periodic packet matches the analytic form") {
    const int n = 512;
    const double delta = 12.753;
    std::vector<cd> row(n), d1(n);
    for (int k = 0; k < n; ++k) {
        const double phi = -M_PI + 2.0 * M_PI * k / n;
        row[k] = std::exp(delta * std::cos(phi)) * cd(std::cos(30 * phi), std::sin(30 * phi));
    }
    keplerwave::fft::spectral_derivatives(row.data(), n, d1.data(), nullptr, nullptr);
    for (int k = 0; k < n; ++k) {
        const double phi = -M_PI + 2.0 * M_PI * k / n;
        const cd expect = (cd(0.0, 30.0) - delta * std::sin(phi)) * row[k];
        CHECK(std::abs(d1[k] - expect) <= 1e-12 * std::exp(delta) * (1.0 + 40.0));
    }
}

TEST_CASE("double-double keeps 30 digits through an alternating sum") {
    using keplerwave::detail::dd;
    // sum_{k=0}^{60} (-x)^k / k! = e^{-x} at x = 30: cancellation ~ e^{2x}
    dd term(1.0), sum(1.0);
    for (int k = 1; k <= 250; ++k) {
        term = term * dd(-30.0) / dd(double(k));
        sum = sum + term;
    }
    const double got = double(sum);
    // cancellation amplification here is max|term|/|sum| ~ 8e24; double-double
    // (~1e-32) must keep the result to ~1e-7 relative, plain double cannot
    CHECK(got == Approx(std::exp(-30.0)).epsilon(1e-6));
    double dterm = 1.0, dsum = 1.0;
    for (int k = 1; k <= 250; ++k) { dterm *= -30.0 / k; dsum += dterm; }
    CHECK(std::abs(dsum - std::exp(-30.0)) > 1e-3 * std::exp(-30.0));
}

TEST_CASE("complex double-double division") {
    using keplerwave::detail::cdd;
    const cdd a(1.0, 0.0);
    const cdd b(0.0224719101123595506, 0.0169650943176099941);
    const cdd q = a / b;
    const cd bb(0.0224719101123595506, 0.0169650943176099941);
    const cd ref = 1.0 / bb;
    CHECK(double(q.re) == Approx(ref.real()).epsilon(1e-14));
    CHECK(double(q.im) == Approx(ref.imag()).epsilon(1e-14));
}

TEST_CASE("parallel_sum_chunks is deterministic and correct") {
    std::vector<double> v(10007);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(0.1 * i);
    auto sum = [&](std::size_t chunk) {
        return keplerwave::detail::parallel_sum_chunks<double>(
            v.size(), chunk, [&](std::size_t lo, std::size_t hi) {
                double s = 0.0;
                for (std::size_t i = lo; i < hi; ++i) s += v[i];
                return s;
            });
    };
    const double s1 = sum(64), s2 = sum(64);
    CHECK(s1 == s2);  // bitwise reproducible
    CHECK(s1 == Approx(std::accumulate(v.begin(), v.end(), 0.0)).epsilon(1e-12));
}
