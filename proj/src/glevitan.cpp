#include "oceanip/glevitan.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oceanip/errors.hpp"
#include "oceanip/specfun.hpp"

namespace oceanip::gl {

namespace {

// Closed-form sums over the free roots k_j = (j - 1/2) pi, for |a| <= 2:
//   sum sin(k_j a) / k_j   = sign(a) / 2   (0 at a = 0)
// At a = 2 the series itself gives 0; F wants the limit from inside the square.
//   sum cos(k_j a) / k_j^2 = (1 - |a|) / 2
double s1_full(double a) {
    const double b = std::abs(a);
    if (b == 0.0) return 0.0;
    return a > 0 ? 0.5 : -0.5;
}

double c2_full(double a) { return 0.5 * (1.0 - std::abs(a)); }

// The completed tail j > n of the terms
//   2 (k^2 - beta) phi(x, k^2 - c) phi(y, k^2 - c) - 2 sin(kx) sin(ky)
// expanded to O(1/k^2) and summed with the closed forms above.
// a = x + y and b = x - y lie on multiples of h, so the partial sums are tabulated by index.
class TailTable {
public:
    TailTable(std::size_t m_gl, std::size_t n) : m_(m_gl), s1_(3 * m_gl + 1), c2_(3 * m_gl + 1) {
        const double h = 1.0 / static_cast<double>(m_gl);
        // index r <-> a = (r - m_gl) h on [-1, 2]
        for (std::size_t r = 0; r <= 3 * m_gl; ++r) {
            const double a = (static_cast<double>(r) - static_cast<double>(m_gl)) * h;
            double ps = 0.0, pc = 0.0;
            for (std::size_t j = n; j >= 1; --j) {
                const double k = free_root(j);
                ps += std::sin(k * a) / k;
                pc += std::cos(k * a) / (k * k);
            }
            s1_[r] = s1_full(a) - ps;
            c2_[r] = c2_full(a) - pc;
        }
    }

    double value(std::size_t i, std::size_t l, double c, double beta) const {
        const double h = 1.0 / static_cast<double>(m_);
        const double a = static_cast<double>(i + l) * h;
        const double b = (static_cast<double>(i) - static_cast<double>(l)) * h;
        const std::size_t ra = i + l + m_, rb = i + m_ - l;
        return -0.5 * c * (a * s1_[ra] - b * s1_[rb]) + c * (c2_[rb] - c2_[ra]) +
               0.125 * c * c * (a * a * c2_[ra] - b * b * c2_[rb]) - beta * (c2_[rb] - c2_[ra]);
    }

private:
    std::size_t m_;
    std::vector<double> s1_, c2_;
};

}  // namespace

double completion_shift(const std::vector<double>& lambda_sq) {
    if (lambda_sq.empty()) return 0.0;
    const std::size_t n = lambda_sq.size(), w = std::min<std::size_t>(5, n);
    double s = 0.0;
    for (std::size_t j = n - w + 1; j <= n; ++j) s += free_eigenvalue(j) - lambda_sq[j - 1];
    return s / static_cast<double>(w);
}

double completion_beta(const PerturbedModes& pm) {
    if (pm.alpha.empty()) return 0.0;
    const std::size_t m = pm.alpha.size();
    return free_eigenvalue(m) - 0.5 / pm.alpha.back();
}

GlKernel gl_kernel(const PerturbedModes& pm, std::size_t n_free, std::size_t m_gl, double c_bar,
                   double beta) {
    const std::size_t m = pm.lambda_sq.size();
    if (pm.alpha.size() != m) throw ValidationError("gl_kernel: lambda_sq and alpha lengths differ");
    if (n_free < m) throw ValidationError("gl_kernel: n_free below the number of known modes");
    if (m_gl < 2) throw ValidationError("gl_kernel: grid needs at least 2 intervals");
    GlKernel out;
    for (std::size_t j = 0; j < m; ++j) {
        if (!(pm.alpha[j] > 0.0) || !std::isfinite(pm.alpha[j]))
            throw ValidationError("gl_kernel: nonpositive alpha at mode " + std::to_string(j + 1));
        if (!std::isfinite(pm.lambda_sq[j]))
            throw ValidationError("gl_kernel: non-finite lambda^2 at mode " + std::to_string(j + 1));
        if (pm.lambda_sq[j] <= 0.0) ++out.degenerate;
    }
    if (std::isnan(c_bar)) c_bar = completion_shift(pm.lambda_sq);
    if (std::isnan(beta)) beta = completion_beta(pm);
    if (!std::isfinite(c_bar) || !std::isfinite(beta)) throw ValidationError("gl_kernel: non-finite shift");
    out.c_bar = c_bar;
    out.beta = beta;
    out.n_free = n_free;

    const std::size_t n = m_gl + 1;
    const double h = 1.0 / static_cast<double>(m_gl);
    out.grid.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.grid[i] = static_cast<double>(i) * h;
    out.grid.back() = 1.0;

    Eigen::MatrixXd A(n, n_free), B(n, n_free);
    Eigen::VectorXd wa(n_free), wb(n_free);
    for (std::size_t j = 1; j <= n_free; ++j) {
        const double l0 = free_eigenvalue(j);
        const double l = j <= m ? pm.lambda_sq[j - 1] : l0 - c_bar;
        wa[j - 1] = j <= m ? 1.0 / pm.alpha[j - 1] : 2.0 * (l0 - beta);
        wb[j - 1] = 2.0 * l0;
        for (std::size_t i = 0; i < n; ++i) {
            A(i, j - 1) = specfun::sinc_nu(out.grid[i], l);
            B(i, j - 1) = specfun::sinc_nu(out.grid[i], l0);
        }
    }
    Eigen::MatrixXd F = A * wa.asDiagonal() * A.transpose() - B * wb.asDiagonal() * B.transpose();
    if (c_bar != 0.0 || beta != 0.0) {
        const TailTable tail(m_gl, n_free);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l <= i; ++l) F(i, l) += tail.value(i, l, c_bar, beta);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < i; ++l) F(l, i) = F(i, l);
    if (!F.allFinite()) throw NumericalError("gl_kernel: non-finite kernel entries");
    out.F = std::move(F);
    return out;
}

namespace {

std::vector<double> diagonal_derivative(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    std::vector<double> d(n, 0.0);
    if (n < 3) return d;
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (i >= 2 && i + 2 < n)
            d[i] = (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) / (12.0 * h);
        else
            d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    }
    return d;
}

}  // namespace

GlSolution gl_solve(const GlKernel& kern) {
    const std::size_t n = kern.grid.size();
    if (n < 3 || static_cast<std::size_t>(kern.F.rows()) != n || static_cast<std::size_t>(kern.F.cols()) != n)
        throw ValidationError("gl_solve: kernel shape does not match its grid");
    if (!kern.F.allFinite()) throw ValidationError("gl_solve: kernel not finite");
    const double h = 1.0 / static_cast<double>(n - 1);
    GlSolution sol;
    sol.grid = kern.grid;
    sol.K = Eigen::MatrixXd::Zero(n, n);
    sol.K_diag.assign(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        const Eigen::Index s = static_cast<Eigen::Index>(i + 1);
        Eigen::VectorXd w = Eigen::VectorXd::Constant(s, h);
        w[0] = w[s - 1] = 0.5 * h;
        Eigen::MatrixXd M = kern.F.topLeftCorner(s, s) * w.asDiagonal();
        M.diagonal().array() += 1.0;
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
        const double rc = lu.rcond();
        sol.min_rcond = std::min(sol.min_rcond, rc);
        if (!(rc >= kMinRcond)) {
            std::ostringstream os;
            os << "gl_solve: Nystrom matrix singular at x = " << kern.grid[i] << " (rcond " << rc
               << "); spectral data inconsistent";
            throw NumericalError(os.str());
        }
        const Eigen::VectorXd k = lu.solve(-kern.F.row(static_cast<Eigen::Index>(i)).head(s).transpose());
        sol.K.row(static_cast<Eigen::Index>(i)).head(s) = k.transpose();
        sol.K_diag[i] = k[s - 1];
    }
    const auto d = diagonal_derivative(sol.K_diag, h);
    sol.q_hat.resize(n);
    for (std::size_t i = 0; i < n; ++i) sol.q_hat[i] = -2.0 * d[i];
    return sol;
}

double gl_defect(const GlKernel& kern, const GlSolution& sol) {
    const std::size_t n = kern.grid.size();
    const double h = 1.0 / static_cast<double>(n - 1);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l <= i; ++l) {
            double integral = 0.0;
            for (std::size_t t = 0; t <= i; ++t) {
                const double w = (t == 0 || t == i) ? 0.5 * h : h;
                integral += w * sol.K(i, t) * kern.F(t, l);
            }
            if (i == 0) integral = 0.0;
            worst = std::max(worst, std::abs(sol.K(i, l) + kern.F(i, l) + integral));
        }
    }
    return worst;
}

PotentialProfile recover_q(const GlSolution& sol, double k) {
    if (sol.q_hat.size() != sol.grid.size() || sol.grid.size() < 2)
        throw ValidationError("recover_q: solution not populated");
    PotentialProfile p;
    p.nodes = sol.grid;
    p.values = sol.q_hat;
    p.k = k;
    return validate_profile(p);
}

}  // namespace oceanip::gl
