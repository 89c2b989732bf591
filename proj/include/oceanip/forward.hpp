#pragma once

// Sturm-Liouville forward solver for
//
//     -Psi'' - nu Psi - q(z) Psi = 0,   Psi(0) = 0,  Psi'(0) = 1,
//
// on a uniform grid of m steps. Eigenvalues lambda_j^2 are the zeros of
// W(nu) = Psi'(1, nu); norming constants alpha_j = ||Psi_j||^2.

#include <cstddef>
#include <string>
#include <vector>

#include "oceanip/model.hpp"

namespace oceanip::forward {

inline constexpr std::size_t kDefaultGrid = 2000;
inline constexpr std::size_t kMinGrid = 16;

struct IvpSolution {
    std::vector<double> grid;
    std::vector<double> psi;
    std::vector<double> dpsi;
    // d/dnu of psi and dpsi; empty unless the tangent was requested.
    std::vector<double> psi_dot;
    std::vector<double> dpsi_dot;
    double nu = 0.0;
};

/// Shooting state at z = 1.
struct EndState {
    double psi = 0.0;
    double dpsi = 0.0;
    double psi_dot = 0.0;
    double dpsi_dot = 0.0;
    double angle = 0.0;  // unwrapped scaled Pruefer angle atan2(sigma Psi, Psi')
};

/// Fourth-order Magnus integrator on a fixed uniform grid.
///
/// Each step freezes the two-point Gauss-Legendre Magnus exponent
/// Omega = h/2 (A1 + A2) + sqrt(3) h^2 / 12 [A2, A1] and applies exp(Omega)
/// exactly; for constant q the propagator is exact. The nu-tangent is the
/// exact derivative of the discrete propagator, so it is consistent with the
/// variational equation -Psi_dot'' - (nu + q) Psi_dot = Psi to the same order.
class MagnusIntegrator {
public:
    MagnusIntegrator(const PotentialProfile& q, std::size_t m = kDefaultGrid);

    std::size_t steps() const { return m_; }
    double q_min() const { return q_min_; }
    double q_max() const { return q_max_; }
    double q_integral() const { return q_integral_; }

    EndState shoot(double nu, bool tangent = false) const;
    IvpSolution solve(double nu, bool tangent = false) const;

    /// Number of eigenvalues strictly below nu (oscillation count).
    std::size_t count_below(double nu) const;

private:
    template <class Sink>
    EndState run(double nu, bool tangent, Sink&& sink) const;

    std::size_t m_;
    double h_;
    std::vector<double> q_gauss1_;
    std::vector<double> q_gauss2_;
    double q_min_;
    double q_max_;
    double q_integral_;
};

IvpSolution integrate_ivp(const PotentialProfile& q, double nu, std::size_t m = kDefaultGrid);

/// W(nu) = Psi'(1, nu).
double characteristic(const PotentialProfile& q, double nu, std::size_t m = kDefaultGrid);

struct NuDerivative {
    std::vector<double> psi_dot;  // samples on the IVP grid
    double dpsi_dot_end = 0.0;    // Psi_dot'(1) = dW/dnu
};

NuDerivative nu_derivative(const PotentialProfile& q, double nu, std::size_t m = kDefaultGrid);

/// First n eigenvalues, ascending.
std::vector<double> eigenvalues(const PotentialProfile& q, std::size_t n,
                                std::size_t m = kDefaultGrid);

struct EigenSet {
    std::vector<EigenPair> pairs;
    std::string profile_hash;
    std::size_t n_modes = 0;
    // Unnormalized eigenfunctions Psi_j and Psi_j' on `grid`, one row per mode.
    std::vector<double> grid;
    std::vector<std::vector<double>> psi;
    std::vector<std::vector<double>> dpsi;
    double max_alpha_disagreement = 0.0;  // worst relative quadrature-vs-identity gap
};

/// Tolerance on quadrature vs -Psi(1) Psi_dot'(1) beyond which eigen_data aborts.
inline constexpr double kAlphaAbortTolerance = 1e-6;

EigenSet eigen_data(const PotentialProfile& q, std::size_t n, std::size_t m = kDefaultGrid);

/// The boundary data {lambda_j^2, t_j} of an eigen set.
SpectralData spectral_data(const EigenSet& es);

/// Cubic Hermite interpolation of the j-th eigenfunction at depth z.
double eigenfunction_at(const EigenSet& es, std::size_t j, double z);

}  // namespace oceanip::forward
