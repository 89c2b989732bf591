#pragma once

// Stage orchestration behind the command-line tool:
//
//   forward      profile      -> eigen data (JSON)
//   synthesize   profile/spec -> G, g or a field slice (CSV)
//   invert       G curve      -> spectral data, gamma, alpha (JSON), rho (CSV)
//   reconstruct  spectral     -> q_hat (CSV z,q,n)
//   roundtrip    profile      -> all of the above plus an error report
//   selfcheck                 -> oracle table

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "oceanip/forward.hpp"
#include "oceanip/glevitan.hpp"
#include "oceanip/model.hpp"

namespace oceanip::pipeline {

enum class Command { forward, synthesize, invert, reconstruct, roundtrip, selfcheck };

std::string to_string(Command c);
Command command_from_string(const std::string& s);

struct RunConfig {
    Command command = Command::selfcheck;
    std::string profile, curve, spec, out, report, rho;
    std::size_t modes = 0;          // 0: 200 for forward/synthesize, 5 for invert/roundtrip
    std::size_t forward_modes = 200;  // roundtrip: modes synthesized into the data
    std::size_t grid = 0;           // 0: ODE grid 2000 for forward/synthesize, m_gl 400 otherwise
    std::size_t ode_grid = forward::kDefaultGrid;
    std::size_t n_free = gl::kDefaultFree;
    std::string grid_spec;          // empty: default for the curve kind
    std::string tail = "on";
    double eps = 0.0;
    double depth = 1.0;
    double tol = 1e-6;
    double inject_gamma = 0.0;      // relative perturbation of gamma in the product check
    double specfun_tol = 1e-12;
    bool timing = true;             // runtimes in reports (off for byte-identical reports)
};

/// Knobs positive, paths present for the commands that need them.
void validate(const RunConfig& cfg);

std::size_t effective_modes(const RunConfig& cfg);
std::size_t effective_grid(const RunConfig& cfg);

/// "geom:lo:hi:count" or "lin:lo:hi:count".
std::vector<double> parse_grid_spec(const std::string& s);
/// Default sample grid for a curve kind (G, g or field).
std::string default_grid_spec(const std::string& kind);

struct RoundtripResult {
    std::vector<double> d_lambda_sq;  // fitted - true
    std::vector<double> d_t;
    std::vector<double> d_alpha_rel;
    double q_l2 = 0.0;
    double q_l2_rel = 0.0;  // NaN when q = 0
    double q_sup = 0.0;
    double q_sup_inner = 0.0;  // on [0.05, 0.95]
    double k11 = 0.0;
    double fit_residual = 0.0;
    double c_bar = 0.0;
    double tau = 0.0;
    double gamma = 0.0;
    PotentialProfile q_hat;
    std::vector<std::pair<std::string, double>> runtimes;
};

RoundtripResult roundtrip(const PotentialProfile& q, const RunConfig& cfg);

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<Check> selfcheck(const RunConfig& cfg);

/// Runs cfg.command, writing artifacts and a text summary to `out`.
/// Returns the process exit code; stage failures throw ValidationError / NumericalError.
int run(const RunConfig& cfg, std::ostream& out);

}  // namespace oceanip::pipeline
