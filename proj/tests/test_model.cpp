#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <sstream>

#include "oceanip/io.hpp"
#include "oceanip/model.hpp"

using namespace oceanip;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!same_bits(a[i], b[i])) return false;
    return true;
}

PotentialProfile make_profile(std::vector<double> nodes, std::vector<double> values, double k = 1.0) {
    PotentialProfile p;
    p.nodes = std::move(nodes);
    p.values = std::move(values);
    p.k = k;
    return p;
}

}  // namespace

TEST_CASE("validate_profile accepts well-formed input") {
    auto p = make_profile({0.0, 0.5, 1.0}, {1.0, 2.0, 1.0});
    CHECK_NOTHROW(validate_profile(p));
    CHECK(p(0.25) == doctest::Approx(1.5));
    CHECK(p.integral() == doctest::Approx(1.5));
    CHECK(p.min_value() == 1.0);
    CHECK(p.max_value() == 2.0);
}

TEST_CASE("validate_profile rejects invariant violations") {
    CHECK_THROWS_AS(validate_profile(make_profile({0.0, 0.5}, {1.0, 1.0})), ValidationError);
    CHECK_THROWS_AS(validate_profile(make_profile({0.1, 1.0}, {1.0, 1.0})), ValidationError);
    CHECK_THROWS_AS(validate_profile(make_profile({0.0, 0.6, 0.5, 1.0}, {1, 1, 1, 1})),
                    ValidationError);
    CHECK_THROWS_AS(validate_profile(make_profile({0.0, 1.0}, {1.0, std::nan("")})),
                    ValidationError);
    CHECK_THROWS_AS(
        validate_profile(make_profile({0.0, 1.0}, {1.0, std::numeric_limits<double>::infinity()})),
        ValidationError);
    CHECK_THROWS_AS(validate_profile(make_profile({0.0}, {1.0})), ValidationError);
    CHECK_THROWS_AS(validate_profile(make_profile({0.0, 1.0}, {1.0})), ValidationError);
}

TEST_CASE("resample_profile") {
    SUBCASE("constant stays constant") {
        for (std::size_t m : {1u, 3u, 17u}) {
            auto r = resample_profile(constant_profile(2.5), m);
            CHECK(r.nodes.size() == m + 1);
            for (double v : r.values) CHECK(v == 2.5);
        }
    }
    SUBCASE("linear interpolant") {
        auto r = resample_profile(make_profile({0.0, 1.0}, {0.0, 1.0}), 2);
        CHECK(r.values == std::vector<double>{0.0, 0.5, 1.0});
    }
    SUBCASE("idempotent and endpoint preserving") {
        auto p = make_profile({0.0, 0.3, 0.7, 1.0}, {0.1, 2.0, -1.0, 0.7});
        auto once = resample_profile(p, 9);
        auto twice = resample_profile(once, 9);
        CHECK(once.values.front() == 0.1);
        CHECK(once.values.back() == 0.7);
        for (std::size_t i = 0; i < once.values.size(); ++i)
            CHECK(twice.values[i] == doctest::Approx(once.values[i]).epsilon(1e-15));
    }
    CHECK_THROWS_AS(resample_profile(constant_profile(1.0), 0), ValidationError);
}

TEST_CASE("profile_hash distinguishes profiles") {
    auto a = constant_profile(1.0);
    auto b = constant_profile(1.0 + 1e-15);
    CHECK(profile_hash(a) == profile_hash(constant_profile(1.0)));
    CHECK(profile_hash(a) != profile_hash(b));
    CHECK(profile_hash(a).size() == 16);
}

TEST_CASE("spectral data and spectral function invariants") {
    SpectralData sd;
    sd.modes = {{1.0, 2.0}, {5.0, 1.5}};
    CHECK_NOTHROW(validate_spectral_data(sd));
    sd.modes = {{1.0, 2.0}, {1.0, 1.5}};
    CHECK_THROWS_AS(validate_spectral_data(sd), ValidationError);
    sd.modes = {{1.0, 0.0}};
    CHECK_THROWS_AS(validate_spectral_data(sd), ValidationError);

    SpectralFunction rho{{{1.0, 3.0}, {4.0, 5.0}}};
    CHECK(rho(0.5) == 0.0);
    CHECK(rho(1.0) == 0.0);
    CHECK(rho(2.0) == 3.0);
    CHECK(rho(10.0) == 8.0);
}

TEST_CASE("curve kinds round trip through their names") {
    for (auto k : {CurveKind::G_of_lambda, CurveKind::g_of_r, CurveKind::field_slice})
        CHECK(curve_kind_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(curve_kind_from_string("nope"), ValidationError);
}

TEST_CASE("grids") {
    auto g = geometric_grid(0.05, 50.0, 4);
    CHECK(g.front() == 0.05);
    CHECK(g.back() == 50.0);
    CHECK(g[1] == doctest::Approx(0.5));
    auto l = linear_grid(0.0, 1.0, 5);
    CHECK(l[2] == 0.5);
    CHECK_THROWS_AS(geometric_grid(0.0, 1.0, 3), ValidationError);
}

TEST_CASE("serialization round trips are bit exact") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::uniform_real_distribution<double> expo(-300.0, 300.0);
    auto random_double = [&] { return uni(rng) * std::pow(10.0, expo(rng) / 10.0); };

    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial) * 3;

        PotentialProfile p;
        p.k = std::abs(random_double()) + 0.1;
        for (std::size_t i = 0; i < n; ++i) {
            p.nodes.push_back(i == n - 1 ? 1.0 : static_cast<double>(i) / (n - 1) + 1e-3 * uni(rng) / n);
            p.values.push_back(random_double());
        }
        p.nodes.front() = 0.0;
        std::stringstream ps;
        io::write_profile(ps, p);
        auto p2 = io::read_profile(ps);
        CHECK(same_bits(p.nodes, p2.nodes));
        CHECK(same_bits(p.values, p2.values));
        CHECK(same_bits(p.k, p2.k));

        SpectralData sd;
        double lam = -std::abs(random_double());
        for (std::size_t i = 0; i < n; ++i) {
            lam += std::max(std::abs(lam) * 1e-3, 1e-9) * (1.0 + std::abs(uni(rng)));
            sd.modes.push_back({lam, std::abs(random_double()) + 1e-300});
        }
        std::stringstream ss;
        io::write_spectral_data(ss, sd);
        auto sd2 = io::read_spectral_data(ss);
        REQUIRE(sd2.size() == sd.size());
        CHECK(same_bits(sd.lambda_sq(), sd2.lambda_sq()));
        CHECK(same_bits(sd.t(), sd2.t()));

        for (auto kind : {CurveKind::G_of_lambda, CurveKind::g_of_r, CurveKind::field_slice}) {
            SampledCurve c;
            c.kind = kind;
            double x = random_double();
            for (std::size_t i = 0; i < n; ++i) {
                x += std::max(std::abs(x) * 1e-3, 1e-6) * (1.0 + std::abs(uni(rng)));
                c.abscissae.push_back(x);
                c.values.push_back(random_double());
                if (kind == CurveKind::field_slice) c.imag.push_back(random_double());
            }
            std::stringstream cs;
            io::write_curve(cs, c, 0.75);
            auto c2 = io::read_curve(cs);
            CHECK(c2.kind == kind);
            CHECK(same_bits(c.abscissae, c2.abscissae));
            CHECK(same_bits(c.values, c2.values));
            CHECK(same_bits(c.imag, c2.imag));
        }
    }
}

TEST_CASE("profile reader defaults k and rejects malformed rows") {
    std::stringstream ok("z,q\n0,1\n1,2\n");
    auto p = io::read_profile(ok);
    CHECK(p.k == 1.0);
    CHECK(p.values == std::vector<double>{1.0, 2.0});
    std::stringstream bad("z,q\n0,1\n1,abc\n");
    CHECK_THROWS_AS(io::read_profile(bad), ValidationError);
}
