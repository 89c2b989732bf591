// oceanip <command> [options]
// exit codes: 0 ok, 1 selfcheck failure, 2 validation error, 3 numerical failure

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "oceanip/errors.hpp"
#include "oceanip/pipeline.hpp"

using namespace oceanip;

int main(int argc, char** argv) {
    CLI::App app{"Forward and inverse spectral tools for a layered waveguide"};
    pipeline::RunConfig cfg;
    std::string command;
    bool no_timing = false;

    app.add_option("command", command, "forward | synthesize | invert | reconstruct | roundtrip | selfcheck")
        ->required()
        ->check(CLI::IsMember({"forward", "synthesize", "invert", "reconstruct", "roundtrip", "selfcheck"}));
    app.set_config("--config", "", "flat key=value file; command-line flags take precedence");

    app.add_option("--profile", cfg.profile, "profile CSV (z,q)");
    app.add_option("--curve", cfg.curve, "synthesize: G, g or field; invert: G curve CSV");
    app.add_option("--spec", cfg.spec, "spectral data JSON");
    app.add_option("--out", cfg.out, "output file");
    app.add_option("--report", cfg.report, "JSON report (roundtrip, selfcheck)");
    app.add_option("--rho", cfg.rho, "invert: spectral function CSV (lambda,rho)");
    app.add_option("--modes", cfg.modes, "modes (forward/synthesize: computed, invert/roundtrip: fitted)")
        ->check(CLI::PositiveNumber);
    app.add_option("--forward-modes", cfg.forward_modes, "roundtrip: modes in the synthetic data")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--grid", cfg.grid, "forward/synthesize: ODE steps; reconstruct/roundtrip: m_gl")
        ->check(CLI::PositiveNumber);
    app.add_option("--ode-grid", cfg.ode_grid, "roundtrip: ODE steps")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--n-free", cfg.n_free, "explicit completion modes in the kernel")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--grid-spec", cfg.grid_spec, "sample grid, geom:lo:hi:count or lin:lo:hi:count");
    app.add_option("--tail", cfg.tail, "tail correction")->check(CLI::IsMember({"on", "off"}))->capture_default_str();
    app.add_option("--eps", cfg.eps, "absorption for field slices")->capture_default_str();
    app.add_option("--depth", cfg.depth, "receiver depth for field slices")->capture_default_str();
    app.add_option("--tol", cfg.tol, "fit residual tolerance")->capture_default_str();
    app.add_option("--inject-gamma", cfg.inject_gamma, "selfcheck: relative perturbation of gamma")->capture_default_str();
    app.add_option("--specfun-tol", cfg.specfun_tol, "selfcheck: K0 crossover tolerance")->capture_default_str();
    app.add_flag("--no-timing", no_timing, "leave runtimes out of reports");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    cfg.timing = !no_timing;

    try {
        cfg.command = pipeline::command_from_string(command);
        return pipeline::run(cfg, std::cout);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
