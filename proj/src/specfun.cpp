#include "oceanip/specfun.hpp"

#include <cfloat>
#include <cmath>
#include <limits>

#include "oceanip/errors.hpp"
#include "oceanip/model.hpp"

namespace oceanip::specfun {

namespace {

constexpr double kEps = 1e-17;
constexpr int kMaxIter = 100000;

void j0_y0_series(double x, double& j0, double& y0) {
    const double y = 0.25 * x * x;
    double term = 1.0;
    double harmonic = 0.0;
    double jsum = 1.0;
    double ysum = 0.0;
    for (int k = 1; k < 200; ++k) {
        term *= -y / (static_cast<double>(k) * k);
        harmonic += 1.0 / k;
        jsum += term;
        ysum -= harmonic * term;
        if (std::abs(term) * (1.0 + harmonic) < kEps * std::abs(jsum)) break;
    }
    j0 = jsum;
    y0 = (2.0 / kPi) * ((std::log(0.5 * x) + kEulerGamma) * jsum + ysum);
}

// Miller's algorithm: J_n by downward recurrence, normalized with
// J0 + 2 sum J_2k = 1; Y0 from the Neumann series in J_2k.
void j0_y0_miller(double x, double& j0, double& y0) {
    int n_start = static_cast<int>(x + 12.0 * std::cbrt(x) + 20.0);
    n_start += n_start % 2;
    double jp1 = 0.0;
    double jn = 1e-30;
    double norm = 0.0;
    double ysum = 0.0;
    for (int n = n_start; n >= 1; --n) {
        if (n % 2 == 0) {
            norm += 2.0 * jn;
            const int k = n / 2;
            ysum += ((k % 2 == 0) ? 1.0 : -1.0) * jn / k;
        }
        const double jm1 = (2.0 * n / x) * jn - jp1;
        jp1 = jn;
        jn = jm1;
        if (std::abs(jn) > 1e250) {
            jn *= 1e-250;
            jp1 *= 1e-250;
            norm *= 1e-250;
            ysum *= 1e-250;
        }
    }
    norm += jn;
    j0 = jn / norm;
    y0 = (2.0 / kPi) * (std::log(0.5 * x) + kEulerGamma) * j0 - (4.0 / kPi) * ysum / norm;
}

void j0_y0_asymptotic(double x, double& j0, double& y0) {
    // P0, Q0 from the Hankel expansion with mu = 4 nu^2 = 0.
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;
    double last = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= -(odd * odd) / (k * 8.0 * x);
        const double mag = std::abs(term);
        if (mag > last) break;
        last = mag;
        // k = 1 -> Q, k = 2 -> P, with alternating signs every second term.
        const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 1)
            q += sign * term;
        else
            p += sign * term;
        if (mag < kEps) break;
    }
    const double chi = x - 0.25 * kPi;
    const double amp = std::sqrt(2.0 / (kPi * x));
    const double c = std::cos(chi);
    const double s = std::sin(chi);
    j0 = amp * (p * c - q * s);
    y0 = amp * (p * s + q * c);
}

void j0_y0(double x, double& j0, double& y0) {
    if (x <= 2.0)
        j0_y0_series(x, j0, y0);
    else if (x <= kJ0AsymptoticFrom)
        j0_y0_miller(x, j0, y0);
    else
        j0_y0_asymptotic(x, j0, y0);
}

template <class T>
T k0_series_impl(T z) {
    const T y = 0.25 * z * z;
    T term = 1.0;
    T i0 = 1.0;
    T corr = 0.0;
    double harmonic = 0.0;
    for (int k = 1; k < 200; ++k) {
        term *= y / (static_cast<double>(k) * k);
        harmonic += 1.0 / k;
        i0 += term;
        corr += harmonic * term;
        if (std::abs(term) * (1.0 + harmonic) < kEps * std::abs(i0)) break;
    }
    return -(std::log(0.5 * z) + kEulerGamma) * i0 + corr;
}

// Steed's CF2 (Temme 1975) for nu = 0; returns s with K0 = sqrt(pi/2z) e^-z / s.
template <class T>
T k0_cf2_scale(T z) {
    T b = 2.0 * (1.0 + z);
    T d = 1.0 / b;
    T h = d;
    T delh = d;
    T q1 = 0.0;
    T q2 = 1.0;
    const double a1 = 0.25;
    T q = a1;
    T c = a1;
    double a = -a1;
    T s = 1.0 + q * delh;
    for (int i = 1; i < kMaxIter; ++i) {
        a -= 2 * i;
        c = -a * c / (i + 1.0);
        const T qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const T dels = q * delh;
        s += dels;
        if (std::abs(dels) < kEps * std::abs(s)) return s;
    }
    throw NumericalError("bessel_k0: continued fraction did not converge");
}

}  // namespace

namespace detail {

double k0_series(double x) { return k0_series_impl(x); }

double k0_continued_fraction(double x) {
    return std::sqrt(kPi / (2.0 * x)) * std::exp(-x) / k0_cf2_scale(x);
}

}  // namespace detail

double bessel_j0(double x) {
    if (!(x >= 0.0)) throw ValidationError("bessel_j0: x must be >= 0");
    if (x == 0.0) return 1.0;
    double j0, y0;
    j0_y0(x, j0, y0);
    return j0;
}

double bessel_y0(double x) {
    if (!(x > 0.0)) throw ValidationError("bessel_y0: x must be > 0");
    double j0, y0;
    j0_y0(x, j0, y0);
    return y0;
}

K0Value bessel_k0_checked(double x) {
    if (!(x > 0.0)) throw ValidationError("bessel_k0: x must be > 0");
    if (x <= kK0Crossover) return {detail::k0_series(x), false};
    const double log_k0 = 0.5 * std::log(kPi / (2.0 * x)) - x - std::log(k0_cf2_scale(x));
    if (log_k0 < std::log(DBL_MIN)) return {0.0, true};
    return {std::exp(log_k0), false};
}

double bessel_k0(double x) { return bessel_k0_checked(x).value; }

std::complex<double> bessel_k0(std::complex<double> z) {
    if (z.real() < 0.0 || z == std::complex<double>(0.0))
        throw ValidationError("bessel_k0: complex argument needs Re z >= 0 and z != 0");
    if (std::abs(z) <= kK0Crossover) return k0_series_impl(z);
    return std::sqrt(kPi / (2.0 * z)) * std::exp(-z) / k0_cf2_scale(z);
}

std::complex<double> hankel0_first(double x) {
    if (!(x > 0.0)) throw ValidationError("hankel0_first: x must be > 0");
    double j0, y0;
    j0_y0(x, j0, y0);
    return {j0, y0};
}

double sinc_nu(double x, double nu) {
    const double t = nu * x * x;
    if (std::abs(t) < 0.01) {
        // x * sum (-t)^k / (2k+1)!
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 10; ++k) {
            term *= -t / ((2.0 * k) * (2.0 * k + 1.0));
            sum += term;
        }
        return x * sum;
    }
    if (nu > 0.0) {
        const double s = std::sqrt(nu);
        return std::sin(s * x) / s;
    }
    const double s = std::sqrt(-nu);
    return std::sinh(s * x) / s;
}

double cos_nu(double x, double nu) {
    const double t = nu * x * x;
    if (std::abs(t) < 0.01) {
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 10; ++k) {
            term *= -t / ((2.0 * k - 1.0) * (2.0 * k));
            sum += term;
        }
        return sum;
    }
    if (nu > 0.0) return std::cos(std::sqrt(nu) * x);
    return std::cosh(std::sqrt(-nu) * x);
}

double dsinc_dnu(double x, double nu) {
    const double t = nu * x * x;
    if (std::abs(t) < 1.0) {
        // -x^3 sum_{k>=1} k (-t)^(k-1) / (2k+1)!
        double fact = 6.0;  // 3!
        double pow_t = 1.0;
        double sum = 0.0;
        for (int k = 1; k < 20; ++k) {
            sum += k * pow_t / fact;
            pow_t *= -t;
            fact *= (2.0 * k + 2.0) * (2.0 * k + 3.0);
        }
        return -x * x * x * sum;
    }
    return (x * cos_nu(x, nu) - sinc_nu(x, nu)) / (2.0 * nu);
}

}  // namespace oceanip::specfun
