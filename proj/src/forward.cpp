#include "oceanip/forward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "oceanip/specfun.hpp"

namespace oceanip::forward {

namespace {

constexpr double kGaussOffset = 0.28867513459481288225;  // sqrt(3) / 6
constexpr double kCommutatorWeight = 0.14433756729740644113;  // sqrt(3) / 12

double wrap_angle(double d) {
    while (d > kPi) d -= 2.0 * kPi;
    while (d <= -kPi) d += 2.0 * kPi;
    return d;
}

std::size_t count_from_angle(double theta) {
    if (!(theta > 0.5 * kPi)) return 0;
    return static_cast<std::size_t>(std::floor((theta - 0.5 * kPi) / kPi)) + 1;
}

}  // namespace

MagnusIntegrator::MagnusIntegrator(const PotentialProfile& q, std::size_t m)
    : m_(m), h_(1.0 / static_cast<double>(m)) {
    validate_profile(q);
    if (m < kMinGrid) throw ValidationError("integrator: grid must have at least 16 steps");
    q_gauss1_.resize(m);
    q_gauss2_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double z = static_cast<double>(i) * h_;
        q_gauss1_[i] = q(z + h_ * (0.5 - kGaussOffset));
        q_gauss2_[i] = q(z + h_ * (0.5 + kGaussOffset));
    }
    q_min_ = q.min_value();
    q_max_ = q.max_value();
    q_integral_ = q.integral();
}

template <class Sink>
EndState MagnusIntegrator::run(double nu, bool tangent, Sink&& sink) const {
    const double h = h_;
    const double sigma = std::sqrt(std::max(1.0, std::abs(nu) + std::max(std::abs(q_min_),
                                                                          std::abs(q_max_))));
    double y = 0.0, dy = 1.0;
    double yd = 0.0, dyd = 0.0;
    double raw = 0.0, angle = 0.0;
    sink(0, y, dy, yd, dyd);
    for (std::size_t i = 0; i < m_; ++i) {
        const double wbar = nu + 0.5 * (q_gauss1_[i] + q_gauss2_[i]);
        const double a = kCommutatorWeight * h * h * (q_gauss2_[i] - q_gauss1_[i]);
        const double delta = a * a - h * h * wbar;
        // exp(Omega) = C I + S Omega with Omega = [[a, h], [-h wbar, -a]].
        const double c = specfun::cos_nu(1.0, -delta);
        const double s = specfun::sinc_nu(1.0, -delta);
        const double e11 = c + s * a, e12 = s * h, e21 = -s * h * wbar, e22 = c - s * a;
        if (tangent) {
            const double ds = -specfun::dsinc_dnu(1.0, -delta);  // dS/ddelta
            const double hh = h * h;
            // d/dnu: ddelta = -h^2, dOmega = [[0, 0], [-h, 0]].
            const double f11 = -hh * (0.5 * s + ds * a);
            const double f12 = -hh * ds * h;
            const double f21 = -hh * ds * (-h * wbar) - s * h;
            const double f22 = -hh * (0.5 * s - ds * a);
            const double nyd = e11 * yd + e12 * dyd + f11 * y + f12 * dy;
            const double ndyd = e21 * yd + e22 * dyd + f21 * y + f22 * dy;
            yd = nyd;
            dyd = ndyd;
        }
        const double ny = e11 * y + e12 * dy;
        const double ndy = e21 * y + e22 * dy;
        y = ny;
        dy = ndy;
        const double next_raw = std::atan2(sigma * y, dy);
        angle += wrap_angle(next_raw - raw);
        raw = next_raw;
        sink(i + 1, y, dy, yd, dyd);
    }
    return {y, dy, yd, dyd, angle};
}

EndState MagnusIntegrator::shoot(double nu, bool tangent) const {
    return run(nu, tangent, [](std::size_t, double, double, double, double) {});
}

IvpSolution MagnusIntegrator::solve(double nu, bool tangent) const {
    IvpSolution sol;
    sol.nu = nu;
    sol.grid.resize(m_ + 1);
    sol.psi.resize(m_ + 1);
    sol.dpsi.resize(m_ + 1);
    if (tangent) {
        sol.psi_dot.resize(m_ + 1);
        sol.dpsi_dot.resize(m_ + 1);
    }
    run(nu, tangent, [&](std::size_t i, double y, double dy, double yd, double dyd) {
        sol.grid[i] = static_cast<double>(i) * h_;
        sol.psi[i] = y;
        sol.dpsi[i] = dy;
        if (tangent) {
            sol.psi_dot[i] = yd;
            sol.dpsi_dot[i] = dyd;
        }
    });
    sol.grid.back() = 1.0;
    return sol;
}

std::size_t MagnusIntegrator::count_below(double nu) const {
    const double sigma_h = h_ * std::sqrt(std::abs(nu) + std::max(std::abs(q_min_), std::abs(q_max_)));
    if (sigma_h > 2.0)
        throw NumericalError("oscillation count: grid too coarse for nu = " + std::to_string(nu));
    return count_from_angle(shoot(nu).angle);
}

IvpSolution integrate_ivp(const PotentialProfile& q, double nu, std::size_t m) {
    return MagnusIntegrator(q, m).solve(nu);
}

double characteristic(const PotentialProfile& q, double nu, std::size_t m) {
    return MagnusIntegrator(q, m).shoot(nu).dpsi;
}

NuDerivative nu_derivative(const PotentialProfile& q, double nu, std::size_t m) {
    auto sol = MagnusIntegrator(q, m).solve(nu, true);
    return {std::move(sol.psi_dot), sol.dpsi_dot.back()};
}

namespace {

// lambda_j^2 lies in [(lambda_j^0)^2 - max q, (lambda_j^0)^2 - min q] by min-max
// comparison with constant potentials; the oscillation count isolates it when
// neighbouring intervals overlap, then Newton on W with bisection fallback.
double locate_eigenvalue(const MagnusIntegrator& ig, std::size_t j) {
    const double base = free_eigenvalue(j);
    const double pad = 1e-8 * (1.0 + std::abs(base)) + 1e-3 * (ig.q_max() - ig.q_min());
    double lo = base - ig.q_max() - pad;
    double hi = base - ig.q_min() + pad;
    const auto fail = [j](const std::string& why) {
        return NumericalError("eigenvalues: bracket failure for mode " + std::to_string(j) + ": " +
                              why);
    };

    std::size_t n_lo = ig.count_below(lo);
    std::size_t n_hi = ig.count_below(hi);
    for (int widen = 0; n_lo > j - 1 || n_hi < j; ++widen) {
        if (widen > 60) throw fail("could not enclose the root");
        const double w = (hi - lo) + 1.0;
        if (n_lo > j - 1) n_lo = ig.count_below(lo -= w);
        if (n_hi < j) n_hi = ig.count_below(hi += w);
    }
    for (int it = 0; n_lo != j - 1 || n_hi != j; ++it) {
        if (it > 200) throw fail("could not isolate the root");
        const double mid = 0.5 * (lo + hi);
        const std::size_t n_mid = ig.count_below(mid);
        if (n_mid < j) {
            lo = mid;
            n_lo = n_mid;
        } else {
            hi = mid;
            n_hi = n_mid;
        }
    }

    const double w_lo = ig.shoot(lo).dpsi;
    const double w_hi = ig.shoot(hi).dpsi;
    if (w_lo == 0.0) return lo;
    if (w_hi == 0.0) return hi;
    if ((w_lo < 0.0) == (w_hi < 0.0)) throw fail("no sign change of W across the bracket");

    double x = std::clamp(base - ig.q_integral(), lo, hi);
    if (x == lo || x == hi) x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const EndState st = ig.shoot(x, true);
        if (st.dpsi == 0.0) return x;
        if ((st.dpsi < 0.0) == (w_lo < 0.0))
            lo = x;
        else
            hi = x;
        double next = x - st.dpsi / st.dpsi_dot;
        const bool newton_ok = std::isfinite(next) && next > lo && next < hi;
        if (!newton_ok) next = 0.5 * (lo + hi);
        if (newton_ok && std::abs(next - x) <= 1e-13 * std::max(1.0, std::abs(x))) return next;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)))
            return 0.5 * (lo + hi);
        x = next;
    }
    throw fail("root iteration did not converge");
}

}  // namespace

std::vector<double> eigenvalues(const PotentialProfile& q, std::size_t n, std::size_t m) {
    if (n == 0) throw ValidationError("eigenvalues: n must be positive");
    MagnusIntegrator ig(q, m);
    std::vector<double> out(n);
    for (std::size_t j = 1; j <= n; ++j) out[j - 1] = locate_eigenvalue(ig, j);
    return out;
}

EigenSet eigen_data(const PotentialProfile& q, std::size_t n, std::size_t m) {
    if (n == 0) throw ValidationError("eigen_data: n must be positive");
    MagnusIntegrator ig(q, m);
    EigenSet es;
    es.profile_hash = profile_hash(q);
    es.n_modes = n;
    const double h = 1.0 / static_cast<double>(m);
    for (std::size_t j = 1; j <= n; ++j) {
        const double lam2 = locate_eigenvalue(ig, j);
        IvpSolution sol = ig.solve(lam2, true);
        double alpha_quad = 0.5 * (sol.psi.front() * sol.psi.front() +
                                   sol.psi.back() * sol.psi.back());
        for (std::size_t i = 1; i < m; ++i) alpha_quad += sol.psi[i] * sol.psi[i];
        alpha_quad *= h;
        const double psi_end = sol.psi.back();
        const double alpha_identity = -psi_end * sol.dpsi_dot.back();
        const double gap = std::abs(alpha_quad - alpha_identity) / alpha_quad;
        if (!(gap <= kAlphaAbortTolerance)) {
            std::ostringstream os;
            os << "eigen_data: mode " << j << " norming constants disagree (quadrature "
               << alpha_quad << ", identity " << alpha_identity << ", relative gap " << gap << ")";
            throw NumericalError(os.str());
        }
        if (!(std::abs(psi_end) > 1e-8 * std::sqrt(alpha_quad)))
            throw NumericalError("eigen_data: Psi(1) vanishes for mode " + std::to_string(j));
        es.max_alpha_disagreement = std::max(es.max_alpha_disagreement, gap);
        es.pairs.push_back({lam2, psi_end, alpha_quad, psi_end * psi_end / alpha_quad});
        if (es.grid.empty()) es.grid = sol.grid;
        es.psi.push_back(std::move(sol.psi));
        es.dpsi.push_back(std::move(sol.dpsi));
    }
    return es;
}

SpectralData spectral_data(const EigenSet& es) {
    SpectralData sd;
    for (const auto& p : es.pairs) sd.modes.push_back({p.lambda_sq, p.t});
    return sd;
}

double eigenfunction_at(const EigenSet& es, std::size_t j, double z) {
    if (j >= es.psi.size()) throw ValidationError("eigenfunction_at: mode index out of range");
    if (!(z >= 0.0 && z <= 1.0)) throw ValidationError("eigenfunction_at: z outside [0, 1]");
    const auto& g = es.grid;
    const std::size_t m = g.size() - 1;
    std::size_t i = std::min(m - 1, static_cast<std::size_t>(z * static_cast<double>(m)));
    const double h = g[i + 1] - g[i];
    const double t = (z - g[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const auto& p = es.psi[j];
    const auto& d = es.dpsi[j];
    return (2 * t3 - 3 * t2 + 1) * p[i] + (t3 - 2 * t2 + t) * h * d[i] +
           (-2 * t3 + 3 * t2) * p[i + 1] + (t3 - t2) * h * d[i + 1];
}

}  // namespace oceanip::forward
