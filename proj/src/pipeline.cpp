#include "oceanip/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "oceanip/errors.hpp"
#include "oceanip/invert.hpp"
#include "oceanip/io.hpp"
#include "oceanip/specfun.hpp"
#include "oceanip/synth.hpp"

namespace oceanip::pipeline {

using nlohmann::json;

std::string to_string(Command c) {
    switch (c) {
        case Command::forward: return "forward";
        case Command::synthesize: return "synthesize";
        case Command::invert: return "invert";
        case Command::reconstruct: return "reconstruct";
        case Command::roundtrip: return "roundtrip";
        case Command::selfcheck: return "selfcheck";
    }
    return "?";
}

Command command_from_string(const std::string& s) {
    for (Command c : {Command::forward, Command::synthesize, Command::invert, Command::reconstruct,
                      Command::roundtrip, Command::selfcheck})
        if (to_string(c) == s) return c;
    throw ValidationError("unknown command '" + s + "'");
}

std::size_t effective_modes(const RunConfig& cfg) {
    if (cfg.modes) return cfg.modes;
    return (cfg.command == Command::forward || cfg.command == Command::synthesize) ? 200 : 5;
}

std::size_t effective_grid(const RunConfig& cfg) {
    if (cfg.grid) return cfg.grid;
    return (cfg.command == Command::forward || cfg.command == Command::synthesize) ? forward::kDefaultGrid
                                                                                   : gl::kDefaultGrid;
}

namespace {

void need(const std::string& v, const char* what, Command c) {
    if (v.empty()) throw ValidationError(to_string(c) + ": --" + what + " is required");
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void validate(const RunConfig& cfg) {
    if (cfg.forward_modes == 0 || cfg.ode_grid == 0 || cfg.n_free == 0)
        throw ValidationError("mode counts and grid sizes must be positive");
    if (!positive(cfg.tol)) throw ValidationError("--tol must be positive");
    if (!positive(cfg.specfun_tol)) throw ValidationError("--specfun-tol must be positive");
    if (!(std::isfinite(cfg.eps) && cfg.eps >= 0.0)) throw ValidationError("--eps must be >= 0");
    if (!(std::isfinite(cfg.depth) && cfg.depth >= 0.0 && cfg.depth <= 1.0))
        throw ValidationError("--depth must lie in [0, 1]");
    if (!std::isfinite(cfg.inject_gamma) || cfg.inject_gamma <= -1.0)
        throw ValidationError("--inject-gamma must be finite and > -1");
    if (cfg.tail != "on" && cfg.tail != "off") throw ValidationError("--tail must be on or off");
    const Command c = cfg.command;
    switch (c) {
        case Command::forward:
            need(cfg.profile, "profile", c);
            need(cfg.out, "out", c);
            break;
        case Command::synthesize:
            if (cfg.profile.empty() && cfg.spec.empty())
                throw ValidationError("synthesize: --profile or --spec is required");
            need(cfg.out, "out", c);
            break;
        case Command::invert:
            need(cfg.curve, "curve", c);
            need(cfg.out, "out", c);
            break;
        case Command::reconstruct:
            need(cfg.spec, "spec", c);
            need(cfg.out, "out", c);
            break;
        case Command::roundtrip: need(cfg.profile, "profile", c); break;
        case Command::selfcheck: break;
    }
    if (effective_grid(cfg) < 2) throw ValidationError("--grid must be at least 2");
}

std::vector<double> parse_grid_spec(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 4 || (parts[0] != "geom" && parts[0] != "lin"))
        throw ValidationError("grid spec '" + s + "': expected geom:lo:hi:count or lin:lo:hi:count");
    double lo = 0, hi = 0;
    long long n = 0;
    try {
        std::size_t used = 0;
        lo = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("lo");
        hi = std::stod(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("hi");
        n = std::stoll(parts[3], &used);
        if (used != parts[3].size()) throw std::invalid_argument("count");
    } catch (const std::exception&) {
        throw ValidationError("grid spec '" + s + "': bad number");
    }
    if (n < 2) throw ValidationError("grid spec '" + s + "': need at least 2 points");
    return parts[0] == "geom" ? geometric_grid(lo, hi, static_cast<std::size_t>(n))
                              : linear_grid(lo, hi, static_cast<std::size_t>(n));
}

std::string default_grid_spec(const std::string& kind) {
    if (kind == "G") {
        std::ostringstream os;
        os << "geom:0.05:" << io::format_double(3.0 * free_root(5)) << ":500";
        return os.str();
    }
    if (kind == "g" || kind == "field") return "geom:1e-3:40:400";
    throw ValidationError("curve kind must be G, g or field, got '" + kind + "'");
}

namespace {

// Runs one stage, prefixing any failure with the stage name.
template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("stage ") + name + ": " + e.what());
    } catch (const NumericalError& e) {
        throw NumericalError(std::string("stage ") + name + ": " + e.what());
    }
}

class Stopwatch {
public:
    double lap() {
        const auto now = std::chrono::steady_clock::now();
        const double s = std::chrono::duration<double>(now - t_).count();
        t_ = now;
        return s;
    }

private:
    std::chrono::steady_clock::time_point t_ = std::chrono::steady_clock::now();
};

void write_json(const std::string& path, const json& j) { io::write_text_file(path, j.dump(2) + "\n"); }

json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

std::string short_num(double v) {
    std::ostringstream os;
    os << std::setprecision(4) << v;
    return os.str();
}

json eigen_json(const forward::EigenSet& es, std::size_t grid) {
    json j;
    j["profile_hash"] = es.profile_hash;
    j["n_modes"] = es.n_modes;
    j["grid"] = grid;
    j["max_alpha_disagreement"] = es.max_alpha_disagreement;
    json modes = json::array();
    for (const auto& p : es.pairs)
        modes.push_back({{"lambda_sq", p.lambda_sq}, {"psi_end", p.psi_end}, {"alpha", p.alpha}, {"t", p.t}});
    j["modes"] = modes;
    return j;
}

void write_reconstruction(const std::string& path, const PotentialProfile& q) {
    std::ostringstream os;
    os << "# k=" << io::format_double(q.k) << "\n";
    os << "z,q,n\n";
    const double k2 = q.k * q.k;
    for (std::size_t i = 0; i < q.nodes.size(); ++i)
        os << io::format_double(q.nodes[i]) << "," << io::format_double(q.values[i]) << ","
           << io::format_double(q.values[i] / k2) << "\n";
    io::write_text_file(path, os.str());
}

void write_rho(const std::string& path, const SpectralFunction& rho) {
    std::ostringstream os;
    // value just after each jump
    os << "lambda,rho\n";
    double acc = 0.0;
    for (const auto& jmp : rho.jumps) {
        acc += jmp.weight;
        os << io::format_double(jmp.location) << "," << io::format_double(acc) << "\n";
    }
    io::write_text_file(path, os.str());
}

struct SpecFile {
    std::vector<double> lambda_sq, alpha;
    double c_bar = gl::kAutoShift;
    double beta = gl::kAutoShift;
};

SpecFile read_spec_file(const std::string& path) {
    json j;
    try {
        j = json::parse(io::read_text_file(path));
    } catch (const json::exception& e) {
        throw ValidationError(path + ": " + e.what());
    }
    if (!j.contains("modes") || !j["modes"].is_array() || j["modes"].empty())
        throw ValidationError(path + ": missing 'modes' array");
    SpecFile s;
    for (const auto& m : j["modes"]) {
        if (!m.contains("lambda_sq") || !m.contains("alpha") || !m["lambda_sq"].is_number() ||
            !m["alpha"].is_number())
            throw ValidationError(path + ": every mode needs numeric lambda_sq and alpha");
        s.lambda_sq.push_back(m["lambda_sq"].get<double>());
        s.alpha.push_back(m["alpha"].get<double>());
    }
    if (j.contains("c_bar") && j["c_bar"].is_number()) s.c_bar = j["c_bar"].get<double>();
    if (j.contains("tau") && j["tau"].is_number()) s.beta = 0.5 * j["tau"].get<double>();
    return s;
}

double trapezoid(const std::vector<double>& f, double h) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += (i == 0 || i + 1 == f.size() ? 0.5 : 1.0) * f[i];
    return s * h;
}

// Independent power series for the selfcheck table (long double).
long double harmonic(int k) {
    long double h = 0.0L;
    for (int i = 1; i <= k; ++i) h += 1.0L / i;
    return h;
}

void bessel_series(double x, long double& j0, long double& y0, long double& k0) {
    const long double q = (long double)x * x / 4.0L;
    const long double lg = std::log((long double)x / 2.0L) + (long double)specfun::kEulerGamma;
    long double term = 1.0L, sj = 0.0L, si = 0.0L, sy = 0.0L, sk = 0.0L;
    for (int k = 0; k < 80; ++k) {
        if (k > 0) term *= q / ((long double)k * k);
        const long double sgn = (k % 2) ? -1.0L : 1.0L;
        sj += sgn * term;
        si += term;
        sy += -sgn * harmonic(k) * term;
        sk += harmonic(k) * term;
    }
    const long double pi = 3.141592653589793238462643383279502884L;
    j0 = sj;
    y0 = (2.0L / pi) * (lg * sj + sy);
    k0 = -lg * si + sk;
}

}  // namespace

RoundtripResult roundtrip(const PotentialProfile& q, const RunConfig& cfg) {
    validate_profile(q);
    const std::size_t m = effective_modes(cfg);
    const std::size_t m_gl = effective_grid(cfg);
    RoundtripResult r;
    Stopwatch sw;

    const auto es = stage("forward", [&] { return forward::eigen_data(q, cfg.forward_modes, cfg.ode_grid); });
    r.runtimes.emplace_back("forward", sw.lap());
    if (es.pairs.size() < m) throw ValidationError("stage forward: fewer modes than the fit asks for");

    const auto G = stage("synthesize", [&] {
        return synth::synthesize_G(forward::spectral_data(es), invert::inversion_grid(m),
                                   synth::tail_from_string(cfg.tail));
    });
    r.runtimes.emplace_back("synthesize", sw.lap());

    invert::FitOptions opts;
    opts.tolerance = cfg.tol;
    const auto fit = stage("invert", [&] { return invert::extract_spectral_data(G, m, opts); });
    r.runtimes.emplace_back("invert", sw.lap());

    const auto pm = stage("products", [&] { return invert::ProductModel::build(fit.modes.lambda_sq(), fit.c_bar); });
    const auto alpha = stage("products", [&] { return invert::alphas(fit, pm); });
    r.runtimes.emplace_back("products", sw.lap());

    const auto sol = stage("gelfand-levitan", [&] {
        const gl::PerturbedModes known{fit.modes.lambda_sq(), alpha};
        return gl::gl_solve(gl::gl_kernel(known, std::max(cfg.n_free, m), m_gl, fit.c_bar, 0.5 * fit.tau));
    });
    r.q_hat = recover_q(sol, q.k);
    r.runtimes.emplace_back("gelfand-levitan", sw.lap());

    const std::size_t n_cmp = std::min(m, fit.modes.modes.size());
    for (std::size_t j = 0; j < n_cmp; ++j) {
        r.d_lambda_sq.push_back(fit.modes.modes[j].lambda_sq - es.pairs[j].lambda_sq);
        r.d_t.push_back(fit.modes.modes[j].t - es.pairs[j].t);
        r.d_alpha_rel.push_back(alpha[j] / es.pairs[j].alpha - 1.0);
    }
    std::vector<double> d2, q2;
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
        const double z = sol.grid[i], d = sol.q_hat[i] - q(z);
        d2.push_back(d * d);
        q2.push_back(q(z) * q(z));
        r.q_sup = std::max(r.q_sup, std::abs(d));
        if (z >= 0.05 - 1e-12 && z <= 0.95 + 1e-12) r.q_sup_inner = std::max(r.q_sup_inner, std::abs(d));
    }
    const double h = 1.0 / static_cast<double>(sol.grid.size() - 1);
    r.q_l2 = std::sqrt(trapezoid(d2, h));
    const double qn = std::sqrt(trapezoid(q2, h));
    r.q_l2_rel = qn > 0.0 ? r.q_l2 / qn : std::numeric_limits<double>::quiet_NaN();
    r.k11 = sol.K_diag.back();
    r.fit_residual = fit.residual;
    r.c_bar = fit.c_bar;
    r.tau = fit.tau;
    r.gamma = pm.gamma;
    return r;
}

std::vector<Check> selfcheck(const RunConfig& cfg) {
    std::vector<Check> out;
    auto add = [&](std::string name, bool ok, std::string detail) {
        out.push_back({std::move(name), ok, std::move(detail)});
    };

    // Special functions against independent series.
    for (double x : {0.5, 1.0, 3.0, 5.0}) {
        long double j0, y0, k0;
        bessel_series(x, j0, y0, k0);
        const double ej = std::abs(specfun::bessel_j0(x) - (double)j0) / std::abs((double)j0);
        const double ey = std::abs(specfun::bessel_y0(x) - (double)y0) / std::abs((double)y0);
        const double ek = std::abs(specfun::bessel_k0(x) - (double)k0) / std::abs((double)k0);
        const double e = std::max({ej, ey, ek});
        add("specfun J0/Y0/K0 series x=" + short_num(x), e <= 1e-10, "max rel " + short_num(e));
    }
    {
        double worst = 0.0, at = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double x = 1.5 + 0.005 * i;
            const double a = specfun::detail::k0_series(x), b = specfun::detail::k0_continued_fraction(x);
            const double e = std::abs(a - b) / b;
            if (e > worst) worst = e, at = x;
        }
        add("K0 crossover series vs CF2 on [1.5,2.5]", worst <= cfg.specfun_tol,
            "max rel " + short_num(worst) + " at x=" + short_num(at) + ", tol " + short_num(cfg.specfun_tol));
    }

    // Norming identity on three profiles.
    const std::vector<std::pair<std::string, PotentialProfile>> profiles = {
        {"q=0", constant_profile(0.0)},
        {"q=1", constant_profile(1.0)},
        {"q=sin(pi z)", sample_profile([](double z) { return std::sin(kPi * z); }, 400)}};
    for (const auto& [name, q] : profiles) {
        const auto es = forward::eigen_data(q, 10);
        add("norming identity " + name, es.max_alpha_disagreement <= 1e-8,
            "max rel " + short_num(es.max_alpha_disagreement));
    }

    // Product identity against the forward characteristic function.
    {
        const auto q = sample_profile([](double z) { return 0.5 + 0.3 * std::sin(kPi * z); }, 400);
        const auto ev = forward::eigenvalues(q, 200);
        SpectralData sd;
        for (double x : ev) sd.modes.push_back({x, 2.0});
        auto pm = invert::ProductModel::build(ev, synth::tail_shift(sd));
        pm.gamma *= 1.0 + cfg.inject_gamma;
        double worst = 0.0;
        for (double nu : {-400.0, -50.0, -3.0, 0.0, 1.0, 5.0, 20.0, 60.0, 150.0, 300.0}) {
            const double w = forward::characteristic(q, nu);
            worst = std::max(worst, std::abs(invert::char_product(pm, nu) - w) / std::max(1.0, std::abs(w)));
        }
        std::string detail = "max err " + short_num(worst);
        if (cfg.inject_gamma != 0.0) detail += " (gamma perturbed by " + short_num(cfg.inject_gamma) + ")";
        add("product identity vs W, 10 points", worst <= 1e-6, detail);
    }

    // gamma limit, free spectrum and a zero-mean profile.
    {
        std::vector<double> l0;
        for (std::size_t j = 1; j <= 5; ++j) l0.push_back(free_eigenvalue(j));
        const auto q = sample_profile([](double z) { return 0.5 * std::sin(2.0 * kPi * z); }, 400);
        const auto ev = forward::eigenvalues(q, 200);
        SpectralData sd;
        for (double x : ev) sd.modes.push_back({x, 2.0});
        const std::pair<std::string, invert::ProductModel> cases[] = {
            {"free spectrum", invert::ProductModel::build(l0, 0.0)},
            {"q=0.5 sin(2 pi z)", invert::ProductModel::build(ev, synth::tail_shift(sd))}};
        for (const auto& [name, pm] : cases) {
            bool ok = true;
            std::string detail;
            const double nus[] = {-1e2, -1e3, -1e4}, tols[] = {1e-3, 1e-4, 1e-5};
            for (int i = 0; i < 3; ++i) {
                const double e = std::abs(invert::char_product(pm, nus[i]) / specfun::cos_nu(1.0, nus[i]) - 1.0);
                ok = ok && e <= tols[i];
                detail += (i ? ", " : "") + short_num(e);
            }
            add("gamma limit, " + name, ok, detail);
        }
    }
    return out;
}

int run(const RunConfig& cfg, std::ostream& out) {
    validate(cfg);
    switch (cfg.command) {
        case Command::forward: {
            const auto q = stage("forward", [&] { return io::load_profile(cfg.profile); });
            const std::size_t n = effective_modes(cfg), m = effective_grid(cfg);
            const auto es = stage("forward", [&] { return forward::eigen_data(q, n, m); });
            write_json(cfg.out, eigen_json(es, m));
            out << "forward: " << es.pairs.size() << " modes, lambda_1^2 = " << short_num(es.pairs.front().lambda_sq)
                << ", max alpha disagreement " << short_num(es.max_alpha_disagreement) << "\n";
            return 0;
        }
        case Command::synthesize: {
            const std::string kind = cfg.curve.empty() ? "G" : cfg.curve;
            const auto grid = parse_grid_spec(cfg.grid_spec.empty() ? default_grid_spec(kind) : cfg.grid_spec);
            const auto tail = synth::tail_from_string(cfg.tail);
            const std::size_t n = effective_modes(cfg), m = effective_grid(cfg);
            SampledCurve c;
            if (kind == "field") {
                if (cfg.profile.empty()) throw ValidationError("synthesize: field slices need --profile");
                const auto q = stage("forward", [&] { return io::load_profile(cfg.profile); });
                const auto es = stage("forward", [&] { return forward::eigen_data(q, n, m); });
                c = stage("synthesize", [&] { return synth::synthesize_field(es, grid, cfg.depth, cfg.eps); });
            } else {
                SpectralData sd;
                if (!cfg.profile.empty()) {
                    const auto q = stage("forward", [&] { return io::load_profile(cfg.profile); });
                    sd = forward::spectral_data(stage("forward", [&] { return forward::eigen_data(q, n, m); }));
                } else {
                    sd = stage("synthesize", [&] { return io::load_spectral_data(cfg.spec); });
                }
                c = stage("synthesize", [&] {
                    return kind == "G" ? synth::synthesize_G(sd, grid, tail) : synth::synthesize_g(sd, grid, tail);
                });
            }
            io::save_curve(cfg.out, c, cfg.depth);
            out << "synthesize: " << kind << " on " << c.size() << " samples -> " << cfg.out << "\n";
            return 0;
        }
        case Command::invert: {
            const auto G = stage("invert", [&] { return io::load_curve(cfg.curve); });
            invert::FitOptions opts;
            opts.tolerance = cfg.tol;
            const std::size_t m = effective_modes(cfg);
            const auto fit = stage("invert", [&] { return invert::extract_spectral_data(G, m, opts); });
            const auto pm = stage("products", [&] { return invert::ProductModel::build(fit.modes.lambda_sq(), fit.c_bar); });
            const auto alpha = stage("products", [&] { return invert::alphas(fit, pm); });
            json j;
            j["residual"] = fit.residual;
            j["iterations"] = fit.iterations;
            j["used_fallback"] = fit.used_fallback;
            j["merged"] = fit.merged;
            j["c_bar"] = fit.c_bar;
            j["tau"] = fit.tau;
            j["gamma"] = pm.gamma;
            json modes = json::array();
            for (std::size_t i = 0; i < fit.modes.modes.size(); ++i)
                modes.push_back({{"lambda_sq", fit.modes.modes[i].lambda_sq},
                                 {"t", fit.modes.modes[i].t},
                                 {"b", invert::b_coeff(pm, i + 1)},
                                 {"alpha", alpha[i]}});
            j["modes"] = modes;
            write_json(cfg.out, j);
            if (!cfg.rho.empty()) write_rho(cfg.rho, invert::spectral_function(fit.modes.lambda_sq(), alpha));
            out << "invert: " << fit.n_fitted << " modes, residual " << short_num(fit.residual) << ", gamma "
                << short_num(pm.gamma) << ", c_bar " << short_num(fit.c_bar) << "\n";
            return 0;
        }
        case Command::reconstruct: {
            const auto s = stage("reconstruct", [&] { return read_spec_file(cfg.spec); });
            const std::size_t m_gl = effective_grid(cfg);
            const auto sol = stage("gelfand-levitan", [&] {
                const gl::PerturbedModes known{s.lambda_sq, s.alpha};
                return gl::gl_solve(gl::gl_kernel(known, std::max(cfg.n_free, s.lambda_sq.size()), m_gl, s.c_bar, s.beta));
            });
            double k = 1.0;
            if (!cfg.profile.empty()) k = io::load_profile(cfg.profile).k;
            const auto q = gl::recover_q(sol, k);
            write_reconstruction(cfg.out, q);
            out << "reconstruct: " << s.lambda_sq.size() << " modes, m_gl " << m_gl << ", K(1,1) "
                << short_num(sol.K_diag.back()) << "\n";
            return 0;
        }
        case Command::roundtrip: {
            const auto q = stage("forward", [&] { return io::load_profile(cfg.profile); });
            const auto r = roundtrip(q, cfg);
            if (!cfg.out.empty()) write_reconstruction(cfg.out, r.q_hat);
            auto maxabs = [](const std::vector<double>& v) {
                double m = 0.0;
                for (double x : v) m = std::max(m, std::abs(x));
                return m;
            };
            if (!cfg.report.empty()) {
                json j;
                j["profile_hash"] = profile_hash(q);
                j["modes"] = effective_modes(cfg);
                j["forward_modes"] = cfg.forward_modes;
                j["m_gl"] = effective_grid(cfg);
                j["errors"] = {{"lambda_sq", r.d_lambda_sq},
                               {"t", r.d_t},
                               {"alpha_rel", r.d_alpha_rel},
                               {"max_lambda_sq", maxabs(r.d_lambda_sq)},
                               {"max_t", maxabs(r.d_t)},
                               {"max_alpha_rel", maxabs(r.d_alpha_rel)},
                               {"q_l2", r.q_l2},
                               {"q_l2_rel", num(r.q_l2_rel)},
                               {"q_sup", r.q_sup},
                               {"q_sup_inner", r.q_sup_inner}};
                j["fit"] = {{"residual", r.fit_residual}, {"c_bar", r.c_bar}, {"tau", r.tau}, {"gamma", r.gamma}};
                j["k11"] = r.k11;
                if (cfg.timing) {
                    json t = json::object();
                    for (const auto& [name, s] : r.runtimes) t[name] = s;
                    j["runtimes_s"] = t;
                }
                write_json(cfg.report, j);
            }
            out << "roundtrip: " << effective_modes(cfg) << " fitted modes\n"
                << "  max |d lambda^2|  " << short_num(maxabs(r.d_lambda_sq)) << "\n"
                << "  max |d t|         " << short_num(maxabs(r.d_t)) << "\n"
                << "  max |d alpha|/a   " << short_num(maxabs(r.d_alpha_rel)) << "\n"
                << "  q L2 rel          " << (std::isnan(r.q_l2_rel) ? std::string("n/a") : short_num(r.q_l2_rel))
                << "\n"
                << "  q L2              " << short_num(r.q_l2) << "\n"
                << "  q sup [.05,.95]   " << short_num(r.q_sup_inner) << "\n";
            if (cfg.timing) {
                double total = 0.0;
                for (const auto& rt : r.runtimes) total += rt.second;
                out << "  runtime           " << short_num(total) << " s\n";
            }
            return 0;
        }
        case Command::selfcheck: {
            const auto checks = selfcheck(cfg);
            bool ok = true;
            json rows = json::array();
            for (const auto& c : checks) {
                out << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  (" << c.detail << ")\n";
                ok = ok && c.passed;
                rows.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
            }
            if (!cfg.report.empty()) write_json(cfg.report, {{"passed", ok}, {"checks", rows}});
            return ok ? 0 : 1;
        }
    }
    return 0;
}

}  // namespace oceanip::pipeline
