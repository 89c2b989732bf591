#include <doctest.h>

#include <cmath>
#include <complex>

#include "oceanip/model.hpp"
#include "oceanip/specfun.hpp"
#include "oracles.hpp"

using namespace oceanip;
using namespace oceanip::specfun;
using oracle::rel_err;

namespace {

// Relative check, falling back to an absolute floor near zeros of oscillatory functions.
void check_close(double got, double want, double rel, double abs_floor = 1e-12) {
    CHECK(std::abs(got - want) <= std::max(rel * std::abs(want), abs_floor));
}

}  // namespace

TEST_CASE("bessel_j0 spot values") {
    CHECK(bessel_j0(0.0) == 1.0);
    CHECK(bessel_j0(1.0) == doctest::Approx(0.7651976866).epsilon(1e-10));
    CHECK(std::abs(bessel_j0(2.404825557695773)) < 1e-9);
    CHECK_THROWS_AS(bessel_j0(-1.0), ValidationError);
}

TEST_CASE("bessel_j0 and bessel_y0 against long-double series") {
    for (double x = 1e-6; x <= 12.0; x *= 1.07) {
        check_close(bessel_j0(x), oracle::j0_series(x), 1e-10);
        check_close(bessel_y0(x), oracle::y0_series(x), 1e-10);
        CHECK(std::abs(bessel_j0(x)) <= 1.0);
    }
}

TEST_CASE("bessel_j0 and bessel_y0 against libstdc++ on the asymptotic range") {
    for (double x = 12.0; x <= 700.0; x *= 1.03) {
        check_close(bessel_j0(x), std::cyl_bessel_j(0.0, x), 1e-10);
        check_close(bessel_y0(x), std::cyl_neumann(0.0, x), 1e-10);
    }
    // Both sides of the recurrence / asymptotic switch agree.
    const double x = kJ0AsymptoticFrom;
    check_close(bessel_j0(std::nextafter(x, 0.0)), bessel_j0(std::nextafter(x, 100.0)), 1e-12);
}

TEST_CASE("bessel_k0 spot values") {
    CHECK(bessel_k0(1.0) == doctest::Approx(0.4210244382).epsilon(1e-10));
    const double asym10 = std::sqrt(kPi / 20.0) * std::exp(-10.0);
    CHECK(std::abs(bessel_k0(10.0) / asym10 - 1.0) < 0.02);
    const double small = -std::log(0.5e-8) - 0.5772156649;
    CHECK(rel_err(bessel_k0(1e-8), small) < 1e-6);
    CHECK_THROWS_AS(bessel_k0(0.0), ValidationError);
    CHECK_THROWS_AS(bessel_k0(-2.0), ValidationError);
}

TEST_CASE("bessel_k0 against independent oracles on [1e-6, 700]") {
    for (double x = 1e-6; x <= 700.0; x *= 1.05) {
        double want;
        if (x <= 8.0)
            want = oracle::k0_series(x);
        else if (x < 20.0)
            want = std::cyl_bessel_k(0.0, x);
        else
            want = oracle::k0_asymptotic(x);
        CHECK(rel_err(bessel_k0(x), want) < 1e-10);
    }
}

TEST_CASE("bessel_k0 is positive and strictly decreasing") {
    double prev = bessel_k0(1e-6);
    for (double x = 1.1e-6; x < 600.0; x *= 1.1) {
        const double v = bessel_k0(x);
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("bessel_k0 series and continued fraction meet at the crossover") {
    const double x = kK0Crossover;
    CHECK(rel_err(detail::k0_series(x), detail::k0_continued_fraction(x)) < 1e-13);
}

TEST_CASE("bessel_k0 underflow is flagged") {
    auto v = bessel_k0_checked(800.0);
    CHECK(v.underflow);
    CHECK(v.value == 0.0);
    CHECK_FALSE(bessel_k0_checked(700.0).underflow);
}

TEST_CASE("complex bessel_k0 matches the real branch on the positive axis") {
    for (double x : {0.01, 0.5, 1.9, 2.1, 5.0, 40.0}) {
        auto z = bessel_k0(std::complex<double>(x, 0.0));
        CHECK(rel_err(z.real(), bessel_k0(x)) < 1e-13);
        CHECK(std::abs(z.imag()) < 1e-14 * bessel_k0(x));
    }
}

TEST_CASE("hankel0_first spot values and asymptotic flatness") {
    const auto h1 = hankel0_first(1.0);
    CHECK(h1.real() == doctest::Approx(0.7651976866).epsilon(1e-10));
    CHECK(h1.imag() == doctest::Approx(0.0882569642).epsilon(1e-9));
    const double flat = std::abs(hankel0_first(50.0)) * std::sqrt(50.0);
    CHECK(std::abs(flat / std::sqrt(2.0 / kPi) - 1.0) < 0.05);
    CHECK_THROWS_AS(hankel0_first(0.0), ValidationError);
}

TEST_CASE("K0 continuation onto the imaginary axis gives the outgoing Hankel function") {
    // K0(-i x) = (i pi / 2) H0^(1)(x), reached as the eps -> 0 limit of
    // K0(r sqrt(lambda^2 - i eps)) with lambda^2 = -x^2 / r^2.
    const std::complex<double> ipi2(0.0, kPi / 2.0);
    for (double x : {0.3, 1.0, 2.5, 7.0, 30.0}) {
        const auto want = ipi2 * hankel0_first(x);
        CHECK(std::abs(bessel_k0(std::complex<double>(0.0, -x)) - want) < 1e-10 * std::abs(want));
        const double r = 2.0, lam2 = -(x * x) / (r * r);
        const auto lower = bessel_k0(r * std::sqrt(std::complex<double>(lam2, -1e-9)));
        CHECK(std::abs(lower - want) < 1e-6 * std::abs(want));
        // Approaching from Im > 0 lands on the conjugate (incoming) branch.
        const auto upper = bessel_k0(r * std::sqrt(std::complex<double>(lam2, 1e-9)));
        CHECK(std::abs(upper - std::conj(want)) < 1e-6 * std::abs(want));
    }
}

TEST_CASE("sinc_nu and cos_nu spot values") {
    CHECK(sinc_nu(1.0, kPi * kPi / 4.0) == doctest::Approx(2.0 / kPi).epsilon(1e-14));
    CHECK(sinc_nu(0.7, 0.0) == 0.7);
    CHECK(sinc_nu(1.0, -1.0) == doctest::Approx(1.1752011936).epsilon(1e-10));
    CHECK(std::abs(cos_nu(1.0, kPi * kPi / 4.0)) < 1e-12);
    CHECK(cos_nu(1.0, 0.0) == 1.0);
    CHECK(cos_nu(1.0, -1.0) == doctest::Approx(1.5430806348).epsilon(1e-10));
}

TEST_CASE("sinc_nu and cos_nu are continuous across the series threshold") {
    for (double x : {0.2, 0.5, 1.0}) {
        const double edge = 0.01 / (x * x);
        for (double s : {1.0, -1.0}) {
            const double below = s * std::nextafter(edge, 0.0);
            const double above = s * std::nextafter(edge, 1.0);
            CHECK(rel_err(sinc_nu(x, below), sinc_nu(x, above)) < 1e-15);
            CHECK(rel_err(cos_nu(x, below), cos_nu(x, above)) < 1e-15);
        }
    }
}

TEST_CASE("d/dx sinc_nu equals cos_nu (finite differences)") {
    const double h = 1e-6;
    for (double nu : {-50.0, -1.0, -1e-4, 0.0, 1e-3, 2.0, 100.0, 900.0}) {
        for (double x : {0.1, 0.35, 0.6, 0.9}) {
            const double fd = (sinc_nu(x + h, nu) - sinc_nu(x - h, nu)) / (2 * h);
            CHECK(std::abs(fd - cos_nu(x, nu)) < 1e-6 * std::max(1.0, std::abs(cos_nu(x, nu))));
        }
    }
}

TEST_CASE("dsinc_dnu matches finite differences in nu") {
    for (double nu : {-80.0, -3.0, -0.5, 0.0, 0.7, 5.0, 60.0, 2000.0}) {
        for (double x : {0.25, 1.0}) {
            const double h = 1e-5 * (1.0 + std::abs(nu));
            const double fd = (sinc_nu(x, nu + h) - sinc_nu(x, nu - h)) / (2 * h);
            CHECK(std::abs(dsinc_dnu(x, nu) - fd) <= 1e-6 * std::max(std::abs(fd), 1e-3));
        }
    }
}

TEST_CASE("Hankel transform of K0/(2 pi) is 1/(lambda^2 + a^2)") {
    const double a = 1.0;
    for (double lambda : {0.5, 1.0, 2.0}) {
        auto f = [&](double r) {
            if (r == 0.0) return 0.0;
            return bessel_k0(a * r) * bessel_j0(lambda * r) * r;
        };
        // 2 pi * (1 / 2 pi) cancels.
        const double integral = oracle::simpson(f, 0.0, 40.0, 80000);
        CHECK(std::abs(integral - 1.0 / (lambda * lambda + a * a)) < 1e-4);
    }
}
