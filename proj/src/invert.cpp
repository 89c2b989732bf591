#include "oceanip/invert.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "oceanip/specfun.hpp"
#include "oceanip/synth.hpp"

namespace oceanip::invert {

namespace {

enum class TailMode { none, free, tied };

struct Problem {
    std::vector<double> x;  // lambda^2
    std::vector<double> y;  // G samples
    std::vector<double> w;  // 1 / |G|
    std::size_t m = 0;
    TailMode tail = TailMode::tied;
    bool free_tail() const { return tail == TailMode::free; }
};

// Parameter layout: mu_1..mu_m, t_1..t_m, then c_bar and tau for a free tail.
// A tied tail takes both from the last fitted mode.
struct Params {
    std::vector<double> mu, t;
    double c_bar = 0.0;
    double tau = 0.0;
};

Eigen::VectorXd pack(const Params& p, bool tail) {
    const std::size_t m = p.mu.size();
    Eigen::VectorXd v(2 * m + (tail ? 2 : 0));
    for (std::size_t j = 0; j < m; ++j) {
        v[j] = p.mu[j];
        v[m + j] = p.t[j];
    }
    if (tail) {
        v[2 * m] = p.c_bar;
        v[2 * m + 1] = p.tau;
    }
    return v;
}

Params unpack(const Eigen::VectorXd& v, std::size_t m, bool tail) {
    Params p;
    p.mu.resize(m);
    p.t.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        p.mu[j] = v[j];
        p.t[j] = v[m + j];
    }
    p.c_bar = tail ? v[2 * m] : 0.0;
    p.tau = tail ? v[2 * m + 1] : 0.0;
    return p;
}

bool admissible(const Params& p, const Problem& pr) {
    for (std::size_t j = 0; j < p.mu.size(); ++j)
        if (!(p.mu[j] > 0.0) || !(p.t[j] > 0.0) || !std::isfinite(p.mu[j]) || !std::isfinite(p.t[j]))
            return false;
    if (pr.tail != TailMode::none) {
        if (!std::isfinite(p.c_bar) || !std::isfinite(p.tau)) return false;
        // The continued tail must stay clear of its first pole on the sampled range.
        const double u_min = pr.x.front() - p.c_bar;
        if (!(u_min + free_eigenvalue(pr.m + 1) > 0.25 * free_eigenvalue(pr.m + 1))) return false;
    }
    return true;
}

Params with_tail(Params p, const Problem& pr) {
    if (pr.tail == TailMode::tied) {
        const double xm = free_eigenvalue(pr.m);
        p.c_bar = xm - p.mu.back();
        p.tau = (p.t.back() - 2.0) * xm;
    }
    return p;
}

double tail_value(double u, std::size_t m) { return synth::free_tail(u, m); }

double tail_derivative(double u, std::size_t m) {
    double d = synth::free_sum_derivative(u);
    for (std::size_t j = 1; j <= m; ++j) {
        const double e = u + free_eigenvalue(j);
        d += 2.0 / (e * e);
    }
    return d;
}

// sum_j (lambda_j^0)^(-2k) for k = 1..4, from the Taylor coefficients of tanh(sqrt u)/sqrt u.
constexpr double kFreePowerSums[] = {0.5, 1.0 / 6.0, 1.0 / 15.0, 17.0 / 630.0};

double free_power_tail(int k, std::size_t m) {
    double s = 0.0;
    for (std::size_t j = m; j >= 1; --j) s += std::pow(free_eigenvalue(j), -k);
    return kFreePowerSums[k - 1] - s;
}

struct TailEval {
    double value;  // tail with t_j = 2 + tau / (lambda_j^0)^2
    double d_u;
    double d_tau;
};

// Missing modes j > m at (lambda_j^0)^2 - c_bar with t_j = 2 + tau / (lambda_j^0)^2:
// the tau part is sum_{j>m} 1 / (x_j (u + x_j)) = (sum_{j>m} 1/x_j - F(u)/2) / u.
TailEval tail_eval(double u, double tau, std::size_t m) {
    const double f = tail_value(u, m);
    const double fp = tail_derivative(u, m);
    double h, hp;
    if (std::abs(u) < 1e-3) {
        const double p2 = free_power_tail(2, m), p3 = free_power_tail(3, m), p4 = free_power_tail(4, m);
        h = p2 - u * p3 + u * u * p4;
        hp = -p3 + 2.0 * u * p4;
    } else {
        h = (free_power_tail(1, m) - 0.5 * f) / u;
        hp = -(0.5 * fp + h) / u;
    }
    return {f + tau * h, fp + tau * hp, h};
}

Eigen::VectorXd residuals(const Params& p, const Problem& pr, Eigen::MatrixXd* jac) {
    const std::size_t n = pr.x.size(), m = pr.m;
    Eigen::VectorXd r(n);
    if (jac) jac->resize(n, 2 * m + (pr.free_tail() ? 2 : 0));
    for (std::size_t i = 0; i < n; ++i) {
        double model = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const double d = 1.0 / (pr.x[i] + p.mu[j]);
            model += p.t[j] * d;
            if (jac) {
                (*jac)(i, j) = -p.t[j] * d * d * pr.w[i];
                (*jac)(i, m + j) = d * pr.w[i];
            }
        }
        if (pr.tail != TailMode::none) {
            const TailEval te = tail_eval(pr.x[i] - p.c_bar, p.tau, m);
            model += te.value;
            if (jac && pr.free_tail()) {
                (*jac)(i, 2 * m) = -te.d_u * pr.w[i];
                (*jac)(i, 2 * m + 1) = te.d_tau * pr.w[i];
            } else if (jac) {
                // c_bar = x_m - mu_m, tau = (t_m - 2) x_m.
                (*jac)(i, m - 1) += te.d_u * pr.w[i];
                (*jac)(i, 2 * m - 1) += te.d_tau * free_eigenvalue(m) * pr.w[i];
            }
        }
        r[i] = (model - pr.y[i]) * pr.w[i];
    }
    return r;
}

double rms(const Eigen::VectorXd& r) { return std::sqrt(r.squaredNorm() / static_cast<double>(r.size())); }

struct LmResult {
    Params p;
    double residual;
    std::size_t iterations;
};

LmResult levenberg_marquardt(Params p, const Problem& pr, const FitOptions& opts,
                             std::vector<std::string>& trace) {
    Eigen::MatrixXd J;
    Eigen::VectorXd r = residuals(p, pr, &J);
    double cost = r.squaredNorm();
    double damping = 1e-3;
    std::size_t it = 0;
    for (; it < opts.max_iterations; ++it) {
        const Eigen::MatrixXd A = J.transpose() * J;
        const Eigen::VectorXd g = J.transpose() * r;
        if (g.lpNorm<Eigen::Infinity>() == 0.0) break;
        bool accepted = false;
        Eigen::VectorXd step;
        for (int tries = 0; tries < 40 && !accepted; ++tries) {
            Eigen::MatrixXd Ad = A;
            for (Eigen::Index k = 0; k < A.rows(); ++k) Ad(k, k) += damping * std::max(A(k, k), 1e-300);
            step = Ad.ldlt().solve(-g);
            const Eigen::VectorXd v = pack(p, pr.free_tail()) + step;
            const Params trial = with_tail(unpack(v, pr.m, pr.free_tail()), pr);
            if (step.allFinite() && admissible(trial, pr)) {
                Eigen::MatrixXd Jt;
                const Eigen::VectorXd rt = residuals(trial, pr, &Jt);
                const double ct = rt.squaredNorm();
                if (std::isfinite(ct) && ct <= cost) {
                    p = trial;
                    r = rt;
                    J = std::move(Jt);
                    const double gain = cost - ct;
                    cost = ct;
                    damping = std::max(damping / 3.0, 1e-15);
                    accepted = true;
                    if (gain <= 1e-15 * ct + 1e-32) {
                        it = opts.max_iterations;  // stagnated
                    }
                    break;
                }
            }
            damping *= 4.0;
        }
        if (it % 10 == 0 || !accepted) {
            std::ostringstream os;
            os << "iter " << it << ": rms " << rms(r) << ", damping " << damping;
            trace.push_back(os.str());
        }
        if (!accepted) break;
        const Eigen::VectorXd cur = pack(p, pr.free_tail());
        if (step.norm() <= 1e-14 * (cur.norm() + 1e-14)) break;
    }
    return {p, rms(r), std::min(it + 1, opts.max_iterations)};
}

// Shift seed: the shifted free tail alone reproduces G at the smallest sample.
double seed_shift(const Problem& pr) {
    const double x0 = pr.x.front(), g0 = pr.y.front();
    // free_sum decreases on (-(pi/2)^2, inf); solve free_sum(u) = g0.
    double lo = -free_eigenvalue(1) * (1.0 - 1e-9), hi = 1.0;
    while (synth::free_sum(hi) > g0 && hi < 1e12) hi *= 4.0;
    if (!(synth::free_sum(lo) > g0 && synth::free_sum(hi) < g0)) return 0.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (synth::free_sum(mid) > g0 ? lo : hi) = mid;
    }
    return x0 - 0.5 * (lo + hi);
}

Params free_seed(std::size_t m, double c_bar) {
    Params p;
    p.c_bar = c_bar;
    for (std::size_t j = 1; j <= m; ++j) {
        p.mu.push_back(std::max(free_eigenvalue(j) - c_bar, 1e-3 * free_eigenvalue(j)));
        p.t.push_back(2.0);
    }
    return p;
}

// Pole relocation (vector fitting) on f(x) = G - tail, starting from p.mu;
// returns relocated poles with least-squares residues.
Params relocate_poles(Params p, const Problem& pr) {
    const std::size_t n = pr.x.size(), m = pr.m;
    Eigen::VectorXd f(n);
    for (std::size_t i = 0; i < n; ++i)
        f[i] = pr.y[i] - (pr.tail != TailMode::none ? tail_eval(pr.x[i] - p.c_bar, p.tau, m).value : 0.0);
    for (int pass = 0; pass < 20; ++pass) {
        Eigen::MatrixXd A(n, 2 * m);
        Eigen::VectorXd b(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                const double d = 1.0 / (pr.x[i] + p.mu[j]);
                A(i, j) = d * pr.w[i];
                A(i, m + j) = -f[i] * d * pr.w[i];
            }
            b[i] = f[i] * pr.w[i];
        }
        const Eigen::VectorXd sol = A.colPivHouseholderQr().solve(b);
        // Zeros of 1 + sum c_j / (x + mu_j) are eig(diag(-mu) - 1 c^T).
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m, m);
        for (std::size_t j = 0; j < m; ++j) {
            H(j, j) = -p.mu[j];
            for (std::size_t k = 0; k < m; ++k) H(j, k) -= sol[m + k];
        }
        Eigen::EigenSolver<Eigen::MatrixXd> es(H, false);
        std::vector<double> mu(m);
        for (std::size_t j = 0; j < m; ++j) mu[j] = std::abs(es.eigenvalues()[j].real());
        std::sort(mu.begin(), mu.end());
        p.mu = mu;
    }
    Eigen::MatrixXd A(n, m);
    Eigen::VectorXd b(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) A(i, j) = pr.w[i] / (pr.x[i] + p.mu[j]);
        b[i] = f[i] * pr.w[i];
    }
    const Eigen::VectorXd t = A.colPivHouseholderQr().solve(b);
    for (std::size_t j = 0; j < m; ++j) p.t[j] = t[j] > 0.0 ? t[j] : 2.0;
    return p;
}

Problem make_problem(const SampledCurve& G, std::size_t m, TailMode tail) {
    validate_curve(G);
    if (G.kind != CurveKind::G_of_lambda) throw ValidationError("extract: expected a G(lambda) curve");
    if (G.is_complex()) throw ValidationError("extract: expected real G samples");
    if (m == 0) throw ValidationError("extract: mode count must be positive");
    if (G.size() < 2 * m + 2) throw ValidationError("extract: too few samples for the requested modes");
    Problem pr;
    pr.m = m;
    pr.tail = tail;
    for (std::size_t i = 0; i < G.size(); ++i) {
        const double l = G.abscissae[i];
        if (!(l > 0.0)) throw ValidationError("extract: lambda samples must be positive");
        if (!(G.values[i] > 0.0))
            throw ValidationError("extract: G must be positive for an all-positive spectrum");
        pr.x.push_back(l * l);
        pr.y.push_back(G.values[i]);
        pr.w.push_back(1.0 / G.values[i]);
    }
    return pr;
}

PoleFit finish(const Params& p, const Problem& pr, double residual, std::size_t iterations,
               bool fallback, std::vector<std::string> trace, const FitOptions& opts) {
    if (!(residual <= opts.tolerance)) {
        std::ostringstream os;
        os << "extract: fit did not converge (rms relative misfit " << residual << " > "
           << opts.tolerance << ")";
        for (const auto& line : trace) os << "\n  " << line;
        throw NumericalError(os.str());
    }
    std::vector<std::size_t> order(pr.m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return p.mu[a] < p.mu[b]; });
    PoleFit out;
    for (std::size_t k : order) {
        if (!(p.t[k] > 0.0)) throw NumericalError("extract: negative fitted t_j rejected");
        auto& modes = out.modes.modes;
        if (!modes.empty() &&
            std::abs(p.mu[k] - modes.back().lambda_sq) <= 1e-9 * std::max(1.0, std::abs(p.mu[k]))) {
            modes.back().t += p.t[k];
            ++out.merged;
            continue;
        }
        modes.push_back({p.mu[k], p.t[k]});
    }
    out.residual = residual;
    out.n_fitted = out.modes.size();
    out.c_bar = p.c_bar;
    out.tau = p.tau;
    out.iterations = iterations;
    out.used_fallback = fallback;
    out.trace = std::move(trace);
    validate_spectral_data(out.modes);
    return out;
}

PoleFit extract(const SampledCurve& G, std::size_t m, const FitOptions& opts, TailMode tail) {
    const Problem pr = make_problem(G, m, tail);
    std::vector<std::string> trace;
    const double c0 = tail != TailMode::none ? seed_shift(pr) : 0.0;
    {
        std::ostringstream os;
        os << "seed shift " << c0;
        trace.push_back(os.str());
    }
    Params seed = with_tail(free_seed(m, c0), pr);
    if (!admissible(seed, pr)) seed = with_tail(free_seed(m, 0.0), pr);
    LmResult best = levenberg_marquardt(seed, pr, opts, trace);
    bool fallback = false;
    if (!(best.residual <= opts.tolerance) && opts.allow_fallback) {
        trace.push_back("restart from relocated poles");
        Params relocated = with_tail(relocate_poles(seed, pr), pr);
        if (admissible(relocated, pr)) {
            LmResult second = levenberg_marquardt(relocated, pr, opts, trace);
            if (second.residual < best.residual) {
                best = second;
                fallback = true;
            }
        }
    }
    return finish(best.p, pr, best.residual, best.iterations, fallback, std::move(trace), opts);
}

// Product of (1 - x / x_j) over j <= n, skipping index `skip` (1-based, 0 for none).
double free_partial_product(double x, std::size_t n, std::size_t skip) {
    double p = 1.0;
    for (std::size_t j = 1; j <= n; ++j)
        if (j != skip) p *= 1.0 - x / free_eigenvalue(j);
    return p;
}

}  // namespace

std::vector<double> inversion_grid(std::size_t m, std::size_t count) {
    if (m == 0) throw ValidationError("inversion_grid: mode count must be positive");
    return geometric_grid(0.05, 3.0 * free_root(m), count);
}

PoleFit extract_spectral_data(const SampledCurve& G, std::size_t m, const FitOptions& opts) {
    return extract(G, m, opts, opts.free_tail ? TailMode::free : TailMode::tied);
}

PoleFit extract_spectral_data_no_tail(const SampledCurve& G, std::size_t m, const FitOptions& opts) {
    return extract(G, m, opts, TailMode::none);
}

double free_product_tail(double x, std::size_t n) {
    if (x > 0.0) {
        const double s = std::sqrt(x);
        // Nearest free root (k - 1/2) pi to s.
        const std::size_t near = static_cast<std::size_t>(std::floor(s / kPi)) + 1;
        if (near <= n) {
            // cos(s) / (1 - x / x_k) with e = s - lambda_k^0 taken from x - x_k.
            const double root = free_root(near), xk = root * root;
            const double e = (x - xk) / (s + root);
            const double sign = (near % 2 == 1) ? 1.0 : -1.0;
            const double sinc_e = e == 0.0 ? 1.0 : std::sin(e) / e;
            return sign * xk * sinc_e / (s + root) / free_partial_product(x, n, near);
        }
    }
    return specfun::cos_nu(1.0, x) / free_partial_product(x, n, 0);
}

ProductModel ProductModel::build(const std::vector<double>& lambda_sq, double c_bar, std::size_t n_prod) {
    if (lambda_sq.empty()) throw ValidationError("product model: eigenvalue list is empty");
    for (std::size_t j = 0; j < lambda_sq.size(); ++j) {
        if (lambda_sq[j] == 0.0)
            throw ValidationError("product model: zero eigenvalue at mode " + std::to_string(j + 1) +
                                  " (gamma undefined)");
        if (!std::isfinite(lambda_sq[j])) throw ValidationError("product model: non-finite eigenvalue");
        if (j > 0 && !(lambda_sq[j] > lambda_sq[j - 1]))
            throw ValidationError("product model: eigenvalues not strictly increasing");
    }
    ProductModel pm;
    pm.lambda_sq = lambda_sq;
    pm.c_bar = c_bar;
    pm.n_prod = std::max(lambda_sq.size(), n_prod == 0 ? default_product_terms(lambda_sq.size()) : n_prod);
    pm.completed = lambda_sq;
    for (std::size_t j = lambda_sq.size() + 1; j <= pm.n_prod; ++j) {
        const double l2 = free_eigenvalue(j) - c_bar;
        if (l2 == 0.0) throw ValidationError("product model: completed eigenvalue vanishes");
        pm.completed.push_back(l2);
    }
    double g = 1.0;
    for (std::size_t j = 1; j <= pm.n_prod; ++j) g *= pm.completed[j - 1] / free_eigenvalue(j);
    pm.gamma = g * free_product_tail(c_bar, pm.n_prod);
    return pm;
}

double gamma_const(const std::vector<double>& lambda_sq, double c_bar, std::size_t n_prod) {
    return ProductModel::build(lambda_sq, c_bar, n_prod).gamma;
}

double char_product(const ProductModel& pm, double nu) {
    double p = pm.gamma;
    for (double l2 : pm.completed) p *= 1.0 - nu / l2;
    return p * free_product_tail(nu + pm.c_bar, pm.n_prod) / free_product_tail(pm.c_bar, pm.n_prod);
}

double char_product_left(const ProductModel& pm, double nu) {
    double p = 1.0;
    for (std::size_t j = 1; j <= pm.n_prod; ++j) p *= (pm.completed[j - 1] - nu) / free_eigenvalue(j);
    return p * free_product_tail(nu + pm.c_bar, pm.n_prod);
}

double b_coeff(const ProductModel& pm, std::size_t j) {
    if (j == 0 || j > pm.lambda_sq.size()) throw ValidationError("b_coeff: mode index out of range");
    const double lj = pm.completed[j - 1];
    double p = -pm.gamma / lj;
    for (std::size_t i = 1; i <= pm.n_prod; ++i)
        if (i != j) p *= 1.0 - lj / pm.completed[i - 1];
    return p * free_product_tail(lj + pm.c_bar, pm.n_prod) / free_product_tail(pm.c_bar, pm.n_prod);
}

std::vector<double> alphas(const SpectralData& sd, const ProductModel& pm) {
    if (sd.size() != pm.lambda_sq.size()) throw ValidationError("alphas: mode counts differ");
    std::vector<double> out;
    for (std::size_t j = 1; j <= sd.size(); ++j) {
        const double b = b_coeff(pm, j);
        const double a = sd.modes[j - 1].t * b * b;
        if (!(a > 0.0) || !std::isfinite(a))
            throw NumericalError("alphas: nonpositive norming constant at mode " + std::to_string(j) +
                                 " (corrupted fit)");
        out.push_back(a);
    }
    return out;
}

std::vector<double> alphas(const PoleFit& pf, const ProductModel& pm) { return alphas(pf.modes, pm); }

SpectralFunction spectral_function(const std::vector<double>& lambda_sq, const std::vector<double>& alpha) {
    if (lambda_sq.size() != alpha.size()) throw ValidationError("spectral_function: length mismatch");
    SpectralFunction rho;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        if (!(alpha[j] > 0.0)) throw ValidationError("spectral_function: alphas must be positive");
        if (j > 0 && !(lambda_sq[j] > lambda_sq[j - 1]))
            throw ValidationError("spectral_function: locations must increase");
        rho.jumps.push_back({lambda_sq[j], 1.0 / alpha[j]});
    }
    return rho;
}

}  // namespace oceanip::invert
