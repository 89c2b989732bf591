#pragma once

// Gelfand-Levitan reconstruction.
//
//   F(x,y) = sum_j phi(x,l_j) phi(y,l_j) / alpha_j - phi(x,l0_j) phi(y,l0_j) / alpha0_j
//   phi(x,nu) = sin(sqrt(nu) x) / sqrt(nu),   alpha0_j = 1 / (2 (lambda_j^0)^2)
//   K(x,y) + F(x,y) + int_0^x K(x,t) F(t,y) dt = 0,   q(z) = -2 d/dz K(z,z)

#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "oceanip/model.hpp"

namespace oceanip::gl {

inline constexpr std::size_t kDefaultGrid = 400;
inline constexpr std::size_t kDefaultFree = 200;
inline constexpr double kMinRcond = 1e-12;

struct PerturbedModes {
    std::vector<double> lambda_sq;
    std::vector<double> alpha;
};

/// Shift estimate from the last few known modes.
double completion_shift(const std::vector<double>& lambda_sq);

/// Completed norming constants are 1 / (2 ((lambda_j^0)^2 - beta)); beta read off the last known mode.
double completion_beta(const PerturbedModes& pm);

inline const double kAutoShift = std::numeric_limits<double>::quiet_NaN();

struct GlKernel {
    std::vector<double> grid;  // m_gl + 1 uniform points on [0, 1]
    Eigen::MatrixXd F;
    double c_bar = 0.0;        // shift used for the completed modes
    double beta = 0.0;         // norming correction of the completed modes
    std::size_t n_free = 0;
    std::size_t degenerate = 0;  // known modes with lambda^2 <= 0
};

/// Modes past the known ones are completed as lambda_j^2 = (lambda_j^0)^2 - c_bar,
/// 1 / alpha_j = 2 ((lambda_j^0)^2 - beta), explicitly up to n_free and analytically beyond.
/// NaN for c_bar or beta means estimate from the known modes.
GlKernel gl_kernel(const PerturbedModes& pm, std::size_t n_free = kDefaultFree,
                   std::size_t m_gl = kDefaultGrid, double c_bar = kAutoShift,
                   double beta = kAutoShift);

struct GlSolution {
    std::vector<double> grid;
    std::vector<double> K_diag;
    Eigen::MatrixXd K;       // K(x_i, y_l) for l <= i, zero above
    std::vector<double> q_hat;
    double min_rcond = 1.0;
};

GlSolution gl_solve(const GlKernel& kern);

/// max |K + F + int K F| over the triangle, with the same trapezoid rule.
double gl_defect(const GlKernel& kern, const GlSolution& sol);

/// -2 d/dz K(z,z).
PotentialProfile recover_q(const GlSolution& sol, double k = 1.0);

}  // namespace oceanip::gl
