#pragma once

// Bessel-type kernels for the 2D radial problem and the entire-in-nu
// trigonometric pair used by the Sturm-Liouville machinery.
//
// J0/Y0: power series for x <= 2, Miller backward recurrence (Neumann sum for
// Y0) up to x = 25, Hankel asymptotic expansion beyond.
// K0:    power series for |z| <= 2, Steed's continued fraction (CF2) beyond;
//        the same code paths serve real and complex arguments with Re z >= 0.

#include <complex>

namespace oceanip::specfun {

inline constexpr double kEulerGamma = 0.57721566490153286061;

/// |z| at which K0 switches from the series to CF2.
inline constexpr double kK0Crossover = 2.0;
/// x at which J0/Y0 switch from Miller recurrence to the asymptotic expansion.
inline constexpr double kJ0AsymptoticFrom = 25.0;

double bessel_j0(double x);
double bessel_y0(double x);

struct K0Value {
    double value = 0.0;
    bool underflow = false;  // true when K0(x) is below the normal double range
};

K0Value bessel_k0_checked(double x);
double bessel_k0(double x);

/// Macdonald function for complex argument, Re z >= 0, z != 0 (principal branch).
std::complex<double> bessel_k0(std::complex<double> z);

/// H0^(1)(x) = J0(x) + i Y0(x).
std::complex<double> hankel0_first(double x);

/// sin(sqrt(nu) x) / sqrt(nu), continued through nu = 0 (x) and nu < 0 (sinh).
double sinc_nu(double x, double nu);
/// cos(sqrt(nu) x), continued to cosh for nu < 0.
double cos_nu(double x, double nu);
/// d/dnu sinc_nu(x, nu).
double dsinc_dnu(double x, double nu);

namespace detail {
double k0_series(double x);
double k0_continued_fraction(double x);
}  // namespace detail

}  // namespace oceanip::specfun
