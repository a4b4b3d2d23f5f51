#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bergman/asymptotics.hpp"
#include "bergman/errors.hpp"

using namespace bergman;

namespace {
constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

BoundaryRay axis_ray_z(double t_min = 1e-4, double t_max = 1e-1) {
    return {CPoint2(1.0, 0.0, 0.0, 0.0), {-1.0, 0.0, 0.0, 0.0}, t_min, t_max};
}

BoundaryRay axis_ray_w(double t_min = 1e-4, double t_max = 1e-1) {
    return {CPoint2(0.0, 0.0, 1.0, 0.0), {0.0, 0.0, -1.0, 0.0}, t_min, t_max};
}
}  // namespace

TEST_CASE("sampling along rays reproduces the axis reductions") {
    auto ball = make_egg_domain_kernel(EggDomain(1.0));
    auto s = sample_along_ray(ball, axis_ray_z(), 32);
    REQUIRE(s.t_values.size() == 32);
    for (std::size_t i = 0; i < s.t_values.size(); ++i) {
        double t = s.t_values[i];
        double expected = 2.0 / kPi2 * std::pow(2.0 * t - t * t, -3.0);
        CHECK(s.k_values[i] == doctest::Approx(expected).epsilon(1e-10));
        if (i > 0) CHECK(s.t_values[i] < s.t_values[i - 1]);
        if (i > 0) CHECK(s.k_values[i] > s.k_values[i - 1]);
    }

    auto egg2 = make_egg_domain_kernel(EggDomain(2.0));
    auto s2 = sample_along_ray(egg2, axis_ray_z(), 32);
    for (std::size_t i = 0; i < s2.t_values.size(); ++i) {
        double t = s2.t_values[i];
        double expected = 1.5 / kPi2 * std::pow(2.0 * t - t * t, -2.5);
        CHECK(s2.k_values[i] == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("tangential directions are rejected") {
    auto egg2 = make_egg_domain_kernel(EggDomain(2.0));
    BoundaryRay tangent{CPoint2(1.0, 0.0, 0.0, 0.0), {0.0, 0.0, 1.0, 0.0},
                        1e-4, 1e-1};
    CHECK_THROWS_AS(sample_along_ray(egg2, tangent, 32), ValidationError);

    BoundaryRay off_boundary{CPoint2(0.5, 0.0, 0.0, 0.0),
                             {-1.0, 0.0, 0.0, 0.0}, 1e-4, 1e-1};
    CHECK_THROWS_AS(sample_along_ray(egg2, off_boundary, 32), ValidationError);

    BoundaryRay outward{CPoint2(1.0, 0.0, 0.0, 0.0), {1.0, 0.0, 0.0, 0.0},
                        1e-4, 1e-1};
    CHECK_THROWS_AS(sample_along_ray(egg2, outward, 32), ValidationError);
}

TEST_CASE("blow-up slopes at the weak point match -2 - 1/s") {
    for (int s = 1; s <= 5; ++s) {
        auto kernel = make_egg_domain_kernel(EggDomain(s));
        auto samples = sample_along_ray(kernel, axis_ray_z(), 32);
        auto fit = fit_blowup_exponent(samples);
        double expected = -2.0 - 1.0 / s;
        CHECK(std::abs(fit.slope - expected) < 0.05);
        CHECK(fit.c0_estimate > 0.0);
    }
}

TEST_CASE("blow-up slope at the strongly pseudoconvex point is -3") {
    for (int s = 1; s <= 5; ++s) {
        auto kernel = make_egg_domain_kernel(EggDomain(s));
        auto samples = sample_along_ray(kernel, axis_ray_w(), 32);
        auto fit = fit_blowup_exponent(samples);
        CHECK(std::abs(fit.slope - (-3.0)) < 0.05);
        CHECK(fit.r_estimate == doctest::Approx(2.0).epsilon(0.1));
    }
}

TEST_CASE("refined grid pins r_estimate within 0.2 of 2s") {
    for (int s = 1; s <= 5; ++s) {
        auto kernel = make_egg_domain_kernel(EggDomain(s));
        auto samples = sample_along_ray(kernel, axis_ray_z(1e-4, 1e-2), 32);
        auto fit = fit_blowup_exponent(samples);
        CHECK(std::abs(fit.r_estimate - 2.0 * s) < 0.2);
    }
}

TEST_CASE("leading coefficient positive on every kernel ray") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    for (int s = 1; s <= 4; ++s) {
        auto kernel = make_egg_domain_kernel(EggDomain(s));
        for (int trial = 0; trial < 8; ++trial) {
            Real4 v{-1.0, u(rng), u(rng), u(rng)};
            BoundaryRay ray{CPoint2(1.0, 0.0, 0.0, 0.0), v, 1e-4, 1e-1};
            auto samples = sample_along_ray(kernel, ray, 32);
            auto fit = fit_blowup_exponent(samples);
            CHECK(fit.c0_estimate > 0.0);
            auto pf = puiseux_fit(samples, 2 * s, 2 * s - 1);
            CHECK(pf.coefficients[0] > 0.0);
        }
    }
}

TEST_CASE("puiseux fit recovers the axis expansion of the s=2 egg") {
    auto kernel = make_egg_domain_kernel(EggDomain(2.0));
    // K t^{5/2} = a0 (1 - t/2)^{-5/2}, a0 = (3/(2 pi^2)) 2^{-5/2}; only the
    // slots j = 0 mod 4 carry mass.
    double a0 = 1.5 / kPi2 * std::pow(2.0, -2.5);

    // default grid, J = 3: fractional slots only
    auto coarse = puiseux_fit(sample_along_ray(kernel, axis_ray_z(), 32), 4, 3);
    CHECK(std::abs(coarse.coefficients[0] - a0) < 1e-3);
    for (int j = 1; j <= 3; ++j) {
        CHECK(std::abs(coarse.coefficients[j]) < 0.1);
    }

    // small-t grid with J = 7: tight recovery, a4 = (5/4) a0
    auto tight = puiseux_fit(
        sample_along_ray(kernel, axis_ray_z(1e-6, 1e-3), 32), 4, 7);
    CHECK(std::abs(tight.coefficients[0] - a0) < 1e-8);
    CHECK(std::abs(tight.coefficients[1]) < 1e-4);
    CHECK(std::abs(tight.coefficients[2]) < 1e-4);
    CHECK(std::abs(tight.coefficients[3]) < 1e-4);
    CHECK(std::abs(tight.coefficients[4] - 1.25 * a0) < 1e-3);
}

TEST_CASE("puiseux fit on the ball: a0 = (2/pi^2)/8, a1 vanishes") {
    auto kernel = make_egg_domain_kernel(EggDomain(1.0));
    auto fit = puiseux_fit(sample_along_ray(kernel, axis_ray_z(), 32), 2, 5);
    double a0 = 2.0 / kPi2 / 8.0;
    CHECK(std::abs(fit.coefficients[0] - a0) < 1e-6);
    CHECK(std::abs(fit.coefficients[1]) < 1e-4);
}

TEST_CASE("log regressor contributes nothing for egg kernels") {
    auto kernel = make_egg_domain_kernel(EggDomain(2.0));
    auto samples = sample_along_ray(kernel, axis_ray_z(1e-6, 1e-3), 32);
    auto fit = puiseux_fit(samples, 4, 7, true);
    REQUIRE(fit.b_log.has_value());
    double a0 = 1.5 / kPi2 * std::pow(2.0, -2.5);
    // the log term's largest contribution on the grid must be negligible
    double tmax = samples.t_values.front();
    double contrib =
        std::abs(*fit.b_log) * std::pow(tmax, 2.5) * std::abs(std::log(tmax));
    CHECK(contrib < 1e-3 * a0);
    CHECK(std::abs(fit.coefficients[0] - a0) < 1e-6);
}

TEST_CASE("fractional-power recovery of synthetic expansions") {
    // g(t) = sum_j p_j(t) t^{j/r} (c_j + beta_j(t)) with beta_j -> 0;
    // fitting t^{j/r}, j = 0..2r-1, on a small-t grid recovers p_j(0) c_j.
    const int r = 4;
    const double p0[4] = {0.7, -1.3, 2.1, 0.9};
    const double p1[4] = {0.4, 1.0, -0.8, 0.3};
    const double c[4] = {1.2, -0.5, 0.8, -1.5};
    const double kap[4] = {0.3, -0.2, 0.5, 0.1};

    std::vector<double> ts, gs;
    int n = 64;
    for (int i = 0; i < n; ++i) {
        double t = 1e-4 * std::pow(1e-8 / 1e-4, double(i) / (n - 1));
        double g = 0.0;
        for (int j = 0; j < r; ++j) {
            g += (p0[j] + p1[j] * t) * std::pow(t, double(j) / r) *
                 (c[j] + kap[j] * t);
        }
        ts.push_back(t);
        gs.push_back(g);
    }
    auto fit = fractional_power_fit(ts, gs, r, 2 * r - 1);
    for (int j = 0; j < r; ++j) {
        CHECK(std::abs(fit.coefficients[j] - p0[j] * c[j]) < 1e-4);
    }

    // enforced zero: all fitted coefficients vanish
    std::vector<double> zeros(ts.size(), 0.0);
    auto zfit = fractional_power_fit(ts, zeros, r, r - 1);
    for (double cj : zfit.coefficients) {
        CHECK(std::abs(cj) <= 1e-8);
    }
}

TEST_CASE("estimate_type snaps to 2s at the weak point and 2 elsewhere") {
    for (int s = 1; s <= 5; ++s) {
        auto kernel = make_egg_domain_kernel(EggDomain(s));
        auto est = estimate_type(kernel, CPoint2(1.0, 0.0, 0.0, 0.0),
                                 {{-1.0, 0.0, 0.0, 0.0}});
        CHECK(est.r == 2 * s);
        auto est2 = estimate_type(kernel, CPoint2(0.0, 0.0, 1.0, 0.0),
                                  {{0.0, 0.0, -1.0, 0.0}});
        CHECK(est2.r == 2);
    }
}

TEST_CASE("direction robustness of the type estimate") {
    auto kernel = make_egg_domain_kernel(EggDomain(3.0));
    std::vector<Real4> dirs = {{-1.0, 0.0, 0.0, 0.0},
                               {-1.0, 0.0, 0.3, 0.0},
                               {-1.0, 0.2, 0.1, 0.1}};
    auto est = estimate_type(kernel, CPoint2(1.0, 0.0, 0.0, 0.0), dirs);
    CHECK(est.r == 6);
    for (const auto& df : est.per_direction) {
        REQUIRE(df.snapped.has_value());
        CHECK(*df.snapped == 6);
    }
}

TEST_CASE("slope >= -2 raises a fit inconsistency") {
    KernelRaySamples fake;
    fake.ray = axis_ray_z();
    for (int i = 0; i < 16; ++i) {
        double t = 0.1 * std::pow(0.5, i);
        fake.t_values.push_back(t);
        fake.k_values.push_back(1.0 / t);  // slope -1
    }
    CHECK_THROWS_AS(fit_blowup_exponent(fake), FitInconsistencyError);
}
