#pragma once

// Spectral data from sampled G(lambda), and the characteristic function rebuilt
// from its zeros:
//
//   W(nu)  = gamma prod_j (1 - nu / lambda_j^2)
//   gamma  = prod_j lambda_j^2 / (lambda_j^0)^2
//   b_j    = W'(lambda_j^2),   alpha_j = t_j b_j^2
//
// Modes beyond the known ones are completed as (lambda_j^0)^2 - c_bar.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "oceanip/model.hpp"

namespace oceanip::invert {

struct FitOptions {
    double tolerance = 1e-6;      // rms relative misfit accepted
    std::size_t max_iterations = 400;
    bool allow_fallback = true;   // pole relocation restart if the first fit stalls
    bool free_tail = false;       // fit c_bar and tau instead of taking them from the last mode
};

struct PoleFit {
    SpectralData modes;
    double residual = 0.0;   // rms relative misfit on the samples
    std::size_t n_fitted = 0;
    double c_bar = 0.0;      // fitted shift of the missing modes
    double tau = 0.0;        // missing modes carry t_j = 2 + tau / (lambda_j^0)^2
    std::size_t iterations = 0;
    std::size_t merged = 0;  // duplicate poles folded together
    bool used_fallback = false;
    std::vector<std::string> trace;
};

/// Geometric lambda grid [0.05, 3 lambda_m^0] with `count` points.
std::vector<double> inversion_grid(std::size_t m, std::size_t count = 500);

/// Fits sum_{j<=m} t_j / (lambda^2 + lambda_j^2) plus the tail of the missing modes,
/// modelled as lambda_j^2 = (lambda_j^0)^2 - c_bar, t_j = 2 + tau / (lambda_j^0)^2.
PoleFit extract_spectral_data(const SampledCurve& G, std::size_t m,
                              const FitOptions& opts = FitOptions{});

/// Without the free tail (finite rational model), e.g. for constructed spectra.
PoleFit extract_spectral_data_no_tail(const SampledCurve& G, std::size_t m,
                                      const FitOptions& opts = FitOptions{});

/// prod_{j>n} (1 - x / (lambda_j^0)^2) = cos(sqrt x) / prod_{j<=n} (1 - x / (lambda_j^0)^2),
/// evaluated without cancellation near the free roots.
double free_product_tail(double x, std::size_t n);

inline std::size_t default_product_terms(std::size_t m) { return std::max<std::size_t>(200, 4 * m); }

double gamma_const(const std::vector<double>& lambda_sq, double c_bar, std::size_t n_prod = 0);

struct ProductModel {
    std::vector<double> lambda_sq;  // known eigenvalues, ascending
    double gamma = 1.0;
    double c_bar = 0.0;
    std::size_t n_prod = 200;       // explicit factors (known plus completed)
    std::vector<double> completed;  // explicit factors actually used (length n_prod)

    static ProductModel build(const std::vector<double>& lambda_sq, double c_bar,
                              std::size_t n_prod = 0);
};

/// gamma prod (1 - nu / lambda_j^2), the right-hand form.
double char_product(const ProductModel& pm, double nu);
/// prod (lambda_j^2 - nu) / (lambda_j^0)^2, the left-hand form (independent of gamma).
double char_product_left(const ProductModel& pm, double nu);

/// b_j for 1-based j within the known modes.
double b_coeff(const ProductModel& pm, std::size_t j);

std::vector<double> alphas(const PoleFit& pf, const ProductModel& pm);
std::vector<double> alphas(const SpectralData& sd, const ProductModel& pm);

SpectralFunction spectral_function(const std::vector<double>& lambda_sq,
                                   const std::vector<double>& alpha);

}  // namespace oceanip::invert
