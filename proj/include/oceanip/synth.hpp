#pragma once

// Boundary data generated by a line source at depth 1:
//
//   G(lambda) = sum_j t_j / (lambda^2 + lambda_j^2)          (transformed data)
//   g(r)      = sum_j t_j B_j(r) / (2 pi)                      (range data)
//   u_eps     = sum_j psi_j(z) psi_j(1) K0(r sqrt(lambda_j^2 + i eps)) / (2 pi)

#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "oceanip/forward.hpp"
#include "oceanip/model.hpp"

namespace oceanip::synth {

enum class Tail { off, on };

Tail tail_from_string(const std::string& s);

/// Modes averaged to estimate the asymptotic shift of the missing modes.
inline constexpr std::size_t kShiftWindow = 5;

/// sum_{j>=1} 2 / (u + (lambda_j^0)^2) = tanh(sqrt u) / sqrt u, continued to u < 0.
double free_sum(double u);
std::complex<double> free_sum(std::complex<double> u);
/// d/du free_sum(u).
double free_sum_derivative(double u);

/// Mean of (lambda_j^0)^2 - lambda_j^2 over the last kShiftWindow modes.
double tail_shift(const SpectralData& sd);

/// Free tail sum_{j>n} 2 / (u + (lambda_j^0)^2) with u = lambda^2 - shift.
double free_tail(double u, std::size_t n);
std::complex<double> free_tail(std::complex<double> u, std::size_t n);

/// Passing kAutoShift uses tail_shift(sd); any finite value overrides it.
inline const double kAutoShift = std::numeric_limits<double>::quiet_NaN();

double modal_G(const SpectralData& sd, double lambda, Tail tail = Tail::on,
               double shift = kAutoShift);
/// Analytic continuation of the modal sum to complex lambda.
std::complex<double> modal_G(const SpectralData& sd, std::complex<double> lambda,
                             Tail tail = Tail::on, double shift = kAutoShift);

/// Residue of the continued G at lambda = i lambda_j (mode index j >= 1, lambda_j^2 > 0),
/// by trapezoidal contour integration on a small circle.
std::complex<double> modal_residue(const SpectralData& sd, std::size_t j, Tail tail = Tail::on,
                                   double shift = kAutoShift);

/// Psi(1, nu) / Psi'(1, nu) at nu = -lambda^2.
double greens_G(const PotentialProfile& q, double lambda,
                std::size_t m = forward::kDefaultGrid);

/// Range data; with the tail on, the missing modes are continued as
/// t = 2, lambda^2 = (lambda_j^0)^2 - shift until their terms are negligible.
std::complex<double> field_g(const SpectralData& sd, double r, Tail tail = Tail::off);

struct FieldPoint {
    double r = 1.0;
    double z = 1.0;
    double eps = 0.0;
};

std::complex<double> field_u_eps(const forward::EigenSet& es, const FieldPoint& p);

struct HankelResult {
    double value = 0.0;
    bool decayed = true;        // |g(r_max) r_max| below the threshold
    double edge_level = 0.0;    // |g(r_max) r_max|
};

inline constexpr double kDecayThreshold = 1e-6;

/// 2 pi int g(r) J0(lambda r) r dr by the trapezoid rule over the samples, with
/// [0, r_min] closed under the assumption that r g(r) is flat there.
HankelResult hankel_transform(const SampledCurve& g, double lambda,
                              double decay_threshold = kDecayThreshold);

SampledCurve synthesize_G(const SpectralData& sd, const std::vector<double>& lambdas,
                          Tail tail = Tail::on);
SampledCurve synthesize_g(const SpectralData& sd, const std::vector<double>& radii,
                          Tail tail = Tail::on);
SampledCurve synthesize_field(const forward::EigenSet& es, const std::vector<double>& radii,
                              double z, double eps);

}  // namespace oceanip::synth
