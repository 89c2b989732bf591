#include "oceanip/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <sstream>
#include <iomanip>

namespace oceanip {

double PotentialProfile::operator()(double z) const {
    if (z <= nodes.front()) return values.front();
    if (z >= nodes.back()) return values.back();
    auto it = std::upper_bound(nodes.begin(), nodes.end(), z);
    std::size_t i = static_cast<std::size_t>(it - nodes.begin()) - 1;
    double w = (z - nodes[i]) / (nodes[i + 1] - nodes[i]);
    return values[i] + w * (values[i + 1] - values[i]);
}

double PotentialProfile::min_value() const {
    return *std::min_element(values.begin(), values.end());
}

double PotentialProfile::max_value() const {
    return *std::max_element(values.begin(), values.end());
}

double PotentialProfile::integral() const {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        s += 0.5 * (values[i] + values[i + 1]) * (nodes[i + 1] - nodes[i]);
    return s;
}

std::vector<double> PotentialProfile::refraction() const {
    std::vector<double> n(values.size());
    const double k2 = k * k;
    std::transform(values.begin(), values.end(), n.begin(), [k2](double q) { return q / k2; });
    return n;
}

const PotentialProfile& validate_profile(const PotentialProfile& p) {
    if (p.nodes.size() != p.values.size())
        throw ValidationError("profile: nodes and values differ in length");
    if (p.nodes.size() < 2) throw ValidationError("profile: need at least 2 nodes");
    if (!(std::isfinite(p.k) && p.k > 0.0)) throw ValidationError("profile: k must be positive");
    if (p.nodes.front() != 0.0) throw ValidationError("profile: domain must start at 0");
    if (p.nodes.back() != 1.0) throw ValidationError("profile: domain must end at 1");
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
        if (!std::isfinite(p.nodes[i]) || !std::isfinite(p.values[i]))
            throw ValidationError("profile: non-finite entry at node " + std::to_string(i));
        if (i > 0 && !(p.nodes[i] > p.nodes[i - 1]))
            throw ValidationError("profile: nodes not strictly increasing at " + std::to_string(i));
    }
    return p;
}

PotentialProfile resample_profile(const PotentialProfile& p, std::size_t m) {
    if (m == 0) throw ValidationError("resample: m must be positive");
    validate_profile(p);
    PotentialProfile out;
    out.k = p.k;
    out.nodes = linear_grid(0.0, 1.0, m + 1);
    out.values.resize(m + 1);
    for (std::size_t i = 0; i <= m; ++i) out.values[i] = p(out.nodes[i]);
    out.values.front() = p.values.front();
    out.values.back() = p.values.back();
    return out;
}

PotentialProfile sample_profile(const std::function<double(double)>& q, std::size_t m, double k) {
    if (m == 0) throw ValidationError("sample_profile: m must be positive");
    PotentialProfile out;
    out.k = k;
    out.nodes = linear_grid(0.0, 1.0, m + 1);
    out.values.resize(m + 1);
    for (std::size_t i = 0; i <= m; ++i) out.values[i] = q(out.nodes[i]);
    return out;
}

PotentialProfile constant_profile(double c, double k) {
    return PotentialProfile{{0.0, 1.0}, {c, c}, k};
}

std::string profile_hash(const PotentialProfile& p) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](double d) {
        unsigned char bytes[sizeof(double)];
        std::memcpy(bytes, &d, sizeof(double));
        for (unsigned char b : bytes) {
            h ^= b;
            h *= 1099511628211ULL;
        }
    };
    for (double z : p.nodes) mix(z);
    for (double v : p.values) mix(v);
    mix(p.k);
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

std::vector<double> SpectralData::lambda_sq() const {
    std::vector<double> out;
    out.reserve(modes.size());
    for (const auto& m : modes) out.push_back(m.lambda_sq);
    return out;
}

std::vector<double> SpectralData::t() const {
    std::vector<double> out;
    out.reserve(modes.size());
    for (const auto& m : modes) out.push_back(m.t);
    return out;
}

const SpectralData& validate_spectral_data(const SpectralData& sd) {
    for (std::size_t i = 0; i < sd.modes.size(); ++i) {
        const auto& m = sd.modes[i];
        if (!std::isfinite(m.lambda_sq) || !std::isfinite(m.t))
            throw ValidationError("spectral data: non-finite mode " + std::to_string(i));
        if (!(m.t > 0.0)) throw ValidationError("spectral data: t must be positive (mode " +
                                                std::to_string(i) + ")");
        if (i > 0 && !(m.lambda_sq > sd.modes[i - 1].lambda_sq))
            throw ValidationError("spectral data: eigenvalues not strictly increasing at " +
                                  std::to_string(i));
    }
    return sd;
}

double SpectralFunction::operator()(double lambda) const {
    double rho = 0.0;
    for (const auto& j : jumps) {
        if (!(j.location < lambda)) break;
        rho += j.weight;
    }
    return rho;
}

std::string to_string(CurveKind kind) {
    switch (kind) {
        case CurveKind::G_of_lambda: return "G_of_lambda";
        case CurveKind::g_of_r: return "g_of_r";
        case CurveKind::field_slice: return "field_slice";
    }
    return "unknown";
}

CurveKind curve_kind_from_string(const std::string& s) {
    if (s == "G_of_lambda" || s == "G") return CurveKind::G_of_lambda;
    if (s == "g_of_r" || s == "g") return CurveKind::g_of_r;
    if (s == "field_slice" || s == "field") return CurveKind::field_slice;
    throw ValidationError("unknown curve kind '" + s + "'");
}

const SampledCurve& validate_curve(const SampledCurve& c) {
    if (c.values.size() != c.abscissae.size())
        throw ValidationError("curve: abscissae and values differ in length");
    if (!c.imag.empty() && c.imag.size() != c.abscissae.size())
        throw ValidationError("curve: imaginary part length mismatch");
    for (std::size_t i = 1; i < c.abscissae.size(); ++i)
        if (!(c.abscissae[i] > c.abscissae[i - 1]))
            throw ValidationError("curve: abscissae not strictly increasing at " +
                                  std::to_string(i));
    return c;
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0 && hi > lo) || count < 2)
        throw ValidationError("geometric grid needs 0 < lo < hi and count >= 2");
    std::vector<double> g(count);
    const double step = std::log(hi / lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) g[i] = lo * std::exp(step * static_cast<double>(i));
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
    if (!(hi > lo) || count < 2) throw ValidationError("linear grid needs lo < hi and count >= 2");
    std::vector<double> g(count);
    const double n = static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        double w = static_cast<double>(i) / n;
        g[i] = lo * (1.0 - w) + hi * w;
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

}  // namespace oceanip
