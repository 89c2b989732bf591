#pragma once

// Shared value types for the layered-waveguide forward and inverse problems.
// Depth is normalized so the layer occupies z in [0, 1].

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "oceanip/errors.hpp"

namespace oceanip {

inline constexpr double kPi = 3.14159265358979323846;

/// Positive root of cos: (j - 1/2) * pi, j = 1, 2, ...
inline double free_root(std::size_t j) { return (static_cast<double>(j) - 0.5) * kPi; }
/// Free eigenvalue (lambda_j^0)^2.
inline double free_eigenvalue(std::size_t j) { return free_root(j) * free_root(j); }

/// q(z) = k^2 n(z), sampled at ascending nodes on [0, 1] and linear in between.
struct PotentialProfile {
    std::vector<double> nodes;
    std::vector<double> values;
    double k = 1.0;

    double operator()(double z) const;
    double min_value() const;
    double max_value() const;
    /// Integral of q over [0, 1] (exact for the piecewise-linear model).
    double integral() const;
    /// n(z) = q(z) / k^2 at each node.
    std::vector<double> refraction() const;
};

/// Throws ValidationError unless every profile invariant holds.
const PotentialProfile& validate_profile(const PotentialProfile& p);

/// Linear interpolant of p on m + 1 uniform nodes.
PotentialProfile resample_profile(const PotentialProfile& p, std::size_t m);

/// Samples an analytic q on m + 1 uniform nodes.
PotentialProfile sample_profile(const std::function<double(double)>& q, std::size_t m,
                                double k = 1.0);

PotentialProfile constant_profile(double c, double k = 1.0);

/// FNV-1a over the profile bytes, rendered as 16 hex digits.
std::string profile_hash(const PotentialProfile& p);

struct EigenPair {
    double lambda_sq = 0.0;  // lambda_j^2
    double psi_end = 0.0;    // Psi_j(1), with Psi'(0) = 1
    double alpha = 0.0;      // ||Psi_j||^2
    double t = 0.0;          // psi_j(1)^2 = psi_end^2 / alpha
};

struct SpectralMode {
    double lambda_sq = 0.0;
    double t = 0.0;
};

/// The boundary-data spectral set {lambda_j^2, t_j}.
struct SpectralData {
    std::vector<SpectralMode> modes;

    std::size_t size() const { return modes.size(); }
    std::vector<double> lambda_sq() const;
    std::vector<double> t() const;
};

const SpectralData& validate_spectral_data(const SpectralData& sd);

struct SpectralJump {
    double location = 0.0;  // lambda_j^2
    double weight = 0.0;    // 1 / alpha_j
};

/// rho(lambda) = sum over lambda_j^2 < lambda of 1 / alpha_j.
struct SpectralFunction {
    std::vector<SpectralJump> jumps;

    double operator()(double lambda) const;
};

enum class CurveKind { G_of_lambda, g_of_r, field_slice };

std::string to_string(CurveKind kind);
CurveKind curve_kind_from_string(const std::string& s);

/// Ordered samples of G(lambda), g(r) or a complex field slice.
/// `imag` is empty for real-valued curves.
struct SampledCurve {
    CurveKind kind = CurveKind::G_of_lambda;
    std::vector<double> abscissae;
    std::vector<double> values;
    std::vector<double> imag;

    std::size_t size() const { return abscissae.size(); }
    bool is_complex() const { return !imag.empty(); }
};

const SampledCurve& validate_curve(const SampledCurve& c);

/// count points from lo to hi inclusive, uniformly spaced in log.
std::vector<double> geometric_grid(double lo, double hi, std::size_t count);
std::vector<double> linear_grid(double lo, double hi, std::size_t count);

}  // namespace oceanip
