#include "oceanip/synth.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oceanip/io.hpp"
#include "oceanip/specfun.hpp"

namespace oceanip::synth {

namespace {

using cplx = std::complex<double>;

// tanh(sqrt u) / sqrt u = sum c_k u^k near u = 0.
constexpr double kTanhSeries[] = {1.0,
                                  -1.0 / 3.0,
                                  2.0 / 15.0,
                                  -17.0 / 315.0,
                                  62.0 / 2835.0,
                                  -1382.0 / 155925.0,
                                  21844.0 / 6081075.0,
                                  -929569.0 / 638512875.0};
constexpr double kSeriesRadius = 1e-2;

template <class T>
T tanh_series(T u) {
    T sum = 0.0;
    for (int k = 7; k >= 0; --k) sum = sum * u + kTanhSeries[k];
    return sum;
}

double tanh_series_derivative(double u) {
    double sum = 0.0;
    for (int k = 7; k >= 1; --k) sum = sum * u + k * kTanhSeries[k];
    return sum;
}

template <class T>
T partial_free_sum(T u, std::size_t n) {
    T s = 0.0;
    for (std::size_t j = n; j >= 1; --j) s += 2.0 / (u + free_eigenvalue(j));
    return s;
}

cplx mode_kernel(double lambda_sq, double r) {
    if (lambda_sq > 0.0) return specfun::bessel_k0(std::sqrt(lambda_sq) * r);
    if (lambda_sq < 0.0)
        return cplx(0.0, 0.5 * kPi) * specfun::hankel0_first(std::sqrt(-lambda_sq) * r);
    return std::log(1.0 / r);
}

double resolve_shift(const SpectralData& sd, double shift) {
    return std::isnan(shift) ? tail_shift(sd) : shift;
}

void check_lambda(double lambda, const char* who) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw ValidationError(std::string(who) + ": lambda must be positive and finite");
}

}  // namespace

Tail tail_from_string(const std::string& s) {
    if (s == "on") return Tail::on;
    if (s == "off") return Tail::off;
    throw ValidationError("tail must be 'on' or 'off', got '" + s + "'");
}

double free_sum(double u) {
    if (std::abs(u) < kSeriesRadius) return tanh_series(u);
    if (u > 0.0) {
        const double s = std::sqrt(u);
        return std::tanh(s) / s;
    }
    const double s = std::sqrt(-u);
    return std::tan(s) / s;
}

std::complex<double> free_sum(std::complex<double> u) {
    if (std::abs(u) < kSeriesRadius) return tanh_series(u);
    const cplx w = std::sqrt(u);
    return std::tanh(w) / w;
}

double free_sum_derivative(double u) {
    if (std::abs(u) < kSeriesRadius) return tanh_series_derivative(u);
    // T = S / C with S = sinc_nu(1, -u), C = cos_nu(1, -u): T' = (1 - T) / (2u) - T^2 / 2.
    const double t = free_sum(u);
    return (1.0 - t) / (2.0 * u) - 0.5 * t * t;
}

double tail_shift(const SpectralData& sd) {
    const std::size_t n = sd.size();
    if (n == 0) return 0.0;
    const std::size_t k = std::min(kShiftWindow, n);
    double s = 0.0;
    for (std::size_t j = n - k + 1; j <= n; ++j) s += free_eigenvalue(j) - sd.modes[j - 1].lambda_sq;
    return s / static_cast<double>(k);
}

double free_tail(double u, std::size_t n) { return free_sum(u) - partial_free_sum(u, n); }

std::complex<double> free_tail(std::complex<double> u, std::size_t n) {
    return free_sum(u) - partial_free_sum(u, n);
}

double modal_G(const SpectralData& sd, double lambda, Tail tail, double shift) {
    check_lambda(lambda, "modal_G");
    const double l2 = lambda * lambda;
    double sum = 0.0;
    for (std::size_t j = 0; j < sd.size(); ++j) {
        const auto& m = sd.modes[j];
        const double d = l2 + m.lambda_sq;
        if (std::abs(d) <= 1e-14 * (l2 + std::abs(m.lambda_sq)))
            throw ValidationError("modal_G: lambda = " + io::format_double(lambda) + " is a pole (mode " +
                                  std::to_string(j + 1) + ")");
        sum += m.t / d;
    }
    if (tail == Tail::on && sd.size() > 0) sum += free_tail(l2 - resolve_shift(sd, shift), sd.size());
    return sum;
}

std::complex<double> modal_G(const SpectralData& sd, std::complex<double> lambda, Tail tail,
                             double shift) {
    const cplx l2 = lambda * lambda;
    cplx sum = 0.0;
    for (const auto& m : sd.modes) sum += m.t / (l2 + m.lambda_sq);
    if (tail == Tail::on && sd.size() > 0) sum += free_tail(l2 - resolve_shift(sd, shift), sd.size());
    return sum;
}

std::complex<double> modal_residue(const SpectralData& sd, std::size_t j, Tail tail, double shift) {
    if (j == 0 || j > sd.size()) throw ValidationError("modal_residue: mode index out of range");
    const double lj2 = sd.modes[j - 1].lambda_sq;
    if (!(lj2 > 0.0)) throw ValidationError("modal_residue: needs a positive eigenvalue");
    const double lj = std::sqrt(lj2);
    // Poles of the continued sum sit at +-i sqrt(lambda_k^2) (or on the real axis).
    double gap = 2.0 * lj;
    auto pole_distance = [&](double other_sq) {
        const cplx p = other_sq >= 0.0 ? cplx(0.0, std::sqrt(other_sq)) : cplx(std::sqrt(-other_sq), 0.0);
        gap = std::min({gap, std::abs(p - cplx(0.0, lj)), std::abs(-p - cplx(0.0, lj))});
    };
    for (std::size_t k = 1; k <= sd.size(); ++k)
        if (k != j) pole_distance(sd.modes[k - 1].lambda_sq);
    shift = resolve_shift(sd, shift);
    if (tail == Tail::on) pole_distance(free_eigenvalue(sd.size() + 1) - shift);
    const double rho = 0.3 * gap;
    const int n = 128;
    cplx acc = 0.0;
    for (int k = 0; k < n; ++k) {
        const cplx e = std::polar(1.0, 2.0 * kPi * k / n);
        acc += modal_G(sd, cplx(0.0, lj) + rho * e, tail, shift) * rho * e;
    }
    return acc / static_cast<double>(n);
}

double greens_G(const PotentialProfile& q, double lambda, std::size_t m) {
    check_lambda(lambda, "greens_G");
    const auto st = forward::MagnusIntegrator(q, m).shoot(-lambda * lambda);
    if (st.dpsi == 0.0 || !std::isfinite(st.dpsi) || !std::isfinite(st.psi))
        throw NumericalError("greens_G: Psi'(1) vanishes or overflows at lambda = " +
                             std::to_string(lambda));
    return st.psi / st.dpsi;
}

std::complex<double> field_g(const SpectralData& sd, double r, Tail tail) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ValidationError("field_g: r must be positive");
    cplx sum = 0.0;
    for (const auto& m : sd.modes) sum += m.t * mode_kernel(m.lambda_sq, r);
    if (tail == Tail::on && sd.size() > 0) {
        const double shift = tail_shift(sd);
        const std::size_t cap = sd.size() + 20000000;
        for (std::size_t j = sd.size() + 1;; ++j) {
            if (j > cap) throw NumericalError("field_g: tail did not converge at r = " + std::to_string(r));
            const double l2 = free_eigenvalue(j) - shift;
            const cplx term = 2.0 * mode_kernel(l2, r);
            sum += term;
            if (l2 > 0.0 && std::abs(term) <= 1e-17 * std::abs(sum)) break;
        }
    }
    return sum / (2.0 * kPi);
}

std::complex<double> field_u_eps(const forward::EigenSet& es, const FieldPoint& p) {
    if (!(p.r > 0.0)) throw ValidationError("field_u_eps: r must be positive");
    if (!(p.z >= 0.0 && p.z <= 1.0)) throw ValidationError("field_u_eps: z outside [0, 1]");
    if (!(p.eps >= 0.0)) throw ValidationError("field_u_eps: eps must be >= 0");
    cplx sum = 0.0;
    for (std::size_t j = 0; j < es.pairs.size(); ++j) {
        const auto& pr = es.pairs[j];
        const double depth = forward::eigenfunction_at(es, j, p.z) * pr.psi_end / pr.alpha;
        if (depth == 0.0) continue;
        const cplx kernel = p.eps == 0.0
                                ? mode_kernel(pr.lambda_sq, p.r)
                                : specfun::bessel_k0(p.r * std::sqrt(cplx(pr.lambda_sq, p.eps)));
        sum += depth * kernel;
    }
    return sum / (2.0 * kPi);
}

HankelResult hankel_transform(const SampledCurve& g, double lambda, double decay_threshold) {
    validate_curve(g);
    if (g.kind != CurveKind::g_of_r) throw ValidationError("hankel_transform: expected a g(r) curve");
    if (g.is_complex()) throw ValidationError("hankel_transform: expected real range data");
    if (g.size() < 2 || !(g.abscissae.front() > 0.0))
        throw ValidationError("hankel_transform: need at least 2 samples with r > 0");
    if (!(lambda >= 0.0)) throw ValidationError("hankel_transform: lambda must be >= 0");
    const auto& r = g.abscissae;
    const auto& v = g.values;
    auto f = [&](std::size_t i) { return v[i] * specfun::bessel_j0(lambda * r[i]) * r[i]; };
    double acc = v.front() * r.front() * r.front();
    double prev = f(0);
    for (std::size_t i = 1; i < r.size(); ++i) {
        const double cur = f(i);
        acc += 0.5 * (r[i] - r[i - 1]) * (prev + cur);
        prev = cur;
    }
    HankelResult out;
    out.value = 2.0 * kPi * acc;
    out.edge_level = std::abs(v.back() * r.back());
    out.decayed = out.edge_level <= decay_threshold;
    return out;
}

SampledCurve synthesize_G(const SpectralData& sd, const std::vector<double>& lambdas, Tail tail) {
    SampledCurve c;
    c.kind = CurveKind::G_of_lambda;
    c.abscissae = lambdas;
    c.values.reserve(lambdas.size());
    for (double l : lambdas) c.values.push_back(modal_G(sd, l, tail));
    return validate_curve(c), c;
}

SampledCurve synthesize_g(const SpectralData& sd, const std::vector<double>& radii, Tail tail) {
    SampledCurve c;
    c.kind = CurveKind::g_of_r;
    c.abscissae = radii;
    std::vector<double> im;
    bool complex_values = false;
    for (double r : radii) {
        const cplx v = field_g(sd, r, tail);
        c.values.push_back(v.real());
        im.push_back(v.imag());
        complex_values = complex_values || v.imag() != 0.0;
    }
    if (complex_values) c.imag = std::move(im);
    return validate_curve(c), c;
}

SampledCurve synthesize_field(const forward::EigenSet& es, const std::vector<double>& radii,
                              double z, double eps) {
    SampledCurve c;
    c.kind = CurveKind::field_slice;
    c.abscissae = radii;
    for (double r : radii) {
        const cplx v = field_u_eps(es, {r, z, eps});
        c.values.push_back(v.real());
        c.imag.push_back(v.imag());
    }
    return validate_curve(c), c;
}

}  // namespace oceanip::synth
